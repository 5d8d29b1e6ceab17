#include "arcad/toml_lite.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace arcad::toml {

const Value* Table::find(const std::string& key) const {
    auto it = items.find(key);
    return it == items.end() ? nullptr : &it->second;
}

const Value& Table::at(const std::string& key) const {
    const Value* v = find(key);
    if (!v) throw ParseError("required key '" + key + "' missing", line);
    return *v;
}

void Table::expect_only(const std::vector<std::string>& allowed,
                        const std::string& context) const {
    for (const auto& [key, value] : items) {
        bool known = false;
        for (const std::string& a : allowed) {
            if (key == a) {
                known = true;
                break;
            }
        }
        if (!known) {
            throw ParseError("unknown key '" + key + "' in " + context, value.line());
        }
    }
}

namespace {

[[noreturn]] void type_error(const std::string& key, const char* want, int line) {
    throw ParseError("key '" + key + "' must be " + want, line);
}

} // namespace

double Value::as_number(const std::string& key) const {
    if (!is_number()) type_error(key, "a number", line_);
    return std::get<double>(data_);
}

bool Value::as_bool(const std::string& key) const {
    if (!is_bool()) type_error(key, "a boolean", line_);
    return std::get<bool>(data_);
}

const std::string& Value::as_string(const std::string& key) const {
    if (!is_string()) type_error(key, "a string", line_);
    return std::get<std::string>(data_);
}

const Value::Array& Value::as_array(const std::string& key) const {
    if (!is_array()) type_error(key, "an array", line_);
    return std::get<Array>(data_);
}

const Table& Value::as_table(const std::string& key) const {
    if (!is_table()) type_error(key, "a table", line_);
    return std::get<Table>(data_);
}

const Value::TableArray& Value::as_table_array(const std::string& key) const {
    if (!is_table_array()) type_error(key, "an array of tables", line_);
    return std::get<TableArray>(data_);
}

std::vector<double> Value::as_numbers(const std::string& key, int arity) const {
    const Array& arr = as_array(key);
    if (static_cast<int>(arr.size()) != arity) {
        throw ParseError("key '" + key + "' must have " + std::to_string(arity) +
                             " entries, found " + std::to_string(arr.size()),
                         line_);
    }
    std::vector<double> out;
    out.reserve(arr.size());
    for (const Value& v : arr) out.push_back(v.as_number(key));
    return out;
}

namespace {

struct Cursor {
    const std::string& text;
    size_t pos = 0;
    int line = 1;

    bool done() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }
    char take() {
        const char c = text[pos++];
        if (c == '\n') ++line;
        return c;
    }
    void skip_ws_inline() {
        while (!done() && (peek() == ' ' || peek() == '\t' || peek() == '\r')) take();
    }
    // Whitespace, newlines and comments.
    void skip_ws_and_comments() {
        while (!done()) {
            const char c = peek();
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                take();
            } else if (c == '#') {
                while (!done() && peek() != '\n') take();
            } else {
                break;
            }
        }
    }
    void skip_to_eol_expecting_nothing(const char* context) {
        skip_ws_inline();
        if (done() || peek() == '\n') return;
        if (peek() == '#') {
            while (!done() && peek() != '\n') take();
            return;
        }
        throw ParseError(std::string("unexpected text after ") + context, line);
    }
};

bool is_key_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

std::string parse_key(Cursor& cur) {
    std::string key;
    while (!cur.done() && is_key_char(cur.peek())) key.push_back(cur.take());
    if (key.empty()) throw ParseError("expected a key", cur.line);
    return key;
}

std::string parse_quoted(Cursor& cur) {
    const int start_line = cur.line;
    cur.take(); // opening quote
    std::string out;
    while (true) {
        if (cur.done() || cur.peek() == '\n') {
            throw ParseError("unterminated string", start_line);
        }
        char c = cur.take();
        if (c == '"') break;
        if (c == '\\') {
            if (cur.done()) throw ParseError("unterminated escape", cur.line);
            const char esc = cur.take();
            switch (esc) {
            case 'n': out.push_back('\n'); break;
            case 't': out.push_back('\t'); break;
            case '"': out.push_back('"'); break;
            case '\\': out.push_back('\\'); break;
            default:
                throw ParseError(std::string("unsupported escape '\\") + esc + "'",
                                 cur.line);
            }
        } else {
            out.push_back(c);
        }
    }
    return out;
}

Value parse_value(Cursor& cur);

Value parse_array(Cursor& cur) {
    const int start_line = cur.line;
    cur.take(); // '['
    Value::Array items;
    while (true) {
        cur.skip_ws_and_comments();
        if (cur.done()) throw ParseError("unterminated array", start_line);
        if (cur.peek() == ']') {
            cur.take();
            break;
        }
        items.push_back(parse_value(cur));
        cur.skip_ws_and_comments();
        if (cur.done()) throw ParseError("unterminated array", start_line);
        if (cur.peek() == ',') {
            cur.take();
        } else if (cur.peek() != ']') {
            throw ParseError("expected ',' or ']' in array", cur.line);
        }
    }
    return Value(std::move(items), start_line);
}

Value parse_value(Cursor& cur) {
    cur.skip_ws_inline();
    if (cur.done()) throw ParseError("expected a value", cur.line);
    const char c = cur.peek();
    if (c == '"') return Value(parse_quoted(cur), cur.line);
    if (c == '[') return parse_array(cur);
    if (std::isalpha(static_cast<unsigned char>(c))) {
        std::string word = parse_key(cur);
        if (word == "true") return Value(true, cur.line);
        if (word == "false") return Value(false, cur.line);
        throw ParseError("non-numeric value '" + word + "'", cur.line);
    }
    // Number.
    std::string token;
    while (!cur.done() && (std::isdigit(static_cast<unsigned char>(cur.peek())) ||
                           cur.peek() == '+' || cur.peek() == '-' || cur.peek() == '.' ||
                           cur.peek() == 'e' || cur.peek() == 'E' || cur.peek() == '_')) {
        const char d = cur.take();
        if (d != '_') token.push_back(d);
    }
    if (token.empty()) {
        throw ParseError(std::string("unexpected character '") + c + "'", cur.line);
    }
    double number = 0.0;
    const auto [end, ec] =
        std::from_chars(token.data(), token.data() + token.size(), number);
    if (ec != std::errc{} || end != token.data() + token.size()) {
        throw ParseError("non-numeric value '" + token + "'", cur.line);
    }
    return Value(number, cur.line);
}

// Resolves (and creates) nested tables for a dotted header path.
Table* resolve_table_path(Table& root, const std::string& path, int line) {
    Table* current = &root;
    size_t start = 0;
    while (start <= path.size()) {
        const size_t dot = path.find('.', start);
        const std::string part =
            path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
        if (part.empty()) throw ParseError("empty table name in '" + path + "'", line);
        auto it = current->items.find(part);
        if (it == current->items.end()) {
            Table fresh;
            fresh.line = line;
            auto [ins, ok] =
                current->items.emplace(part, Value(std::move(fresh), line));
            current = &std::get<Table>(ins->second.storage());
        } else if (it->second.is_table()) {
            current = &std::get<Table>(it->second.storage());
        } else {
            throw ParseError("'" + path + "' conflicts with an existing key", line);
        }
        if (dot == std::string::npos) break;
        start = dot + 1;
    }
    return current;
}

} // namespace

Table parse(const std::string& text) {
    Cursor cur{text};
    Table root;
    root.line = 1;
    Table* current = &root;

    while (true) {
        cur.skip_ws_and_comments();
        if (cur.done()) break;
        const int line = cur.line;

        if (cur.peek() == '[') {
            cur.take();
            const bool is_array = !cur.done() && cur.peek() == '[';
            if (is_array) cur.take();
            cur.skip_ws_inline();
            std::string name = parse_key(cur);
            while (!cur.done() && cur.peek() == '.') {
                cur.take();
                name += '.' + parse_key(cur);
            }
            cur.skip_ws_inline();
            if (cur.done() || cur.take() != ']') {
                throw ParseError("expected ']' closing table header", line);
            }
            if (is_array) {
                if (cur.done() || cur.take() != ']') {
                    throw ParseError("expected ']]' closing table-array header", line);
                }
                if (name.find('.') != std::string::npos) {
                    throw ParseError("nested table arrays are not supported", line);
                }
                auto it = root.items.find(name);
                if (it == root.items.end()) {
                    auto [ins, ok] =
                        root.items.emplace(name, Value(Value::TableArray{}, line));
                    it = ins;
                } else if (!it->second.is_table_array()) {
                    throw ParseError("'" + name + "' conflicts with an existing key",
                                     line);
                }
                auto& vec = std::get<Value::TableArray>(it->second.storage());
                vec.emplace_back();
                vec.back().line = line;
                current = &vec.back();
            } else {
                current = resolve_table_path(root, name, line);
            }
            cur.skip_to_eol_expecting_nothing("table header");
            continue;
        }

        const std::string key = parse_key(cur);
        cur.skip_ws_inline();
        if (cur.done() || cur.take() != '=') {
            throw ParseError("expected '=' after key '" + key + "'", line);
        }
        Value value = parse_value(cur);
        if (current->items.count(key)) {
            throw ParseError("duplicate key '" + key + "'", line);
        }
        current->items.emplace(key, std::move(value));
        cur.skip_to_eol_expecting_nothing("value");
    }
    return root;
}

Table parse_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

} // namespace arcad::toml
