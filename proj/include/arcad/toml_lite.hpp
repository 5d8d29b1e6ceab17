#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "arcad/errors.hpp"

namespace arcad::toml {

// Minimal TOML subset: bare keys, numbers, booleans, quoted strings, arrays
// (possibly spanning lines), [table], [dotted.table], and top-level
// [[array-of-tables]]. Every value remembers its source line so callers can
// report precise errors.

class Value;

struct Table {
    std::map<std::string, Value> items;
    int line = 0;

    const Value* find(const std::string& key) const;
    const Value& at(const std::string& key) const; // throws ParseError when missing
    bool has(const std::string& key) const { return find(key) != nullptr; }

    /// Throws ParseError if the table holds a key outside `allowed`.
    void expect_only(const std::vector<std::string>& allowed,
                     const std::string& context) const;
};

class Value {
public:
    using Array = std::vector<Value>;
    using TableArray = std::vector<Table>;
    using Storage = std::variant<double, bool, std::string, Array, Table, TableArray>;

    Value() = default;
    Value(Storage data, int line) : data_(std::move(data)), line_(line) {}

    int line() const { return line_; }

    bool is_number() const { return std::holds_alternative<double>(data_); }
    bool is_bool() const { return std::holds_alternative<bool>(data_); }
    bool is_string() const { return std::holds_alternative<std::string>(data_); }
    bool is_array() const { return std::holds_alternative<Array>(data_); }
    bool is_table() const { return std::holds_alternative<Table>(data_); }
    bool is_table_array() const { return std::holds_alternative<TableArray>(data_); }

    double as_number(const std::string& key_for_error) const;
    bool as_bool(const std::string& key_for_error) const;
    const std::string& as_string(const std::string& key_for_error) const;
    const Array& as_array(const std::string& key_for_error) const;
    const Table& as_table(const std::string& key_for_error) const;
    const TableArray& as_table_array(const std::string& key_for_error) const;

    /// Numeric array of exactly `arity` entries (wrong arity names the key).
    std::vector<double> as_numbers(const std::string& key_for_error, int arity) const;

    Storage& storage() { return data_; }

private:
    Storage data_;
    int line_ = 0;
};

/// Parses a whole document. Throws ParseError with line context.
Table parse(const std::string& text);

/// Reads and parses a file; file-system failures also raise ParseError.
Table parse_file(const std::string& path);

} // namespace arcad::toml
