#include "arcad/response.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace arcad {

namespace {

// First time the normalized signal reaches level (linear interpolation),
// searching from sample index `from`.
std::optional<double> first_crossing(const std::vector<double>& z, double dt,
                                     double level, size_t from = 0) {
    for (size_t k = from; k < z.size(); ++k) {
        if (z[k] >= level) {
            if (k == 0) return 0.0;
            const double prev = z[k - 1];
            const double t = (level - prev) / (z[k] - prev);
            return (static_cast<double>(k - 1) + t) * dt;
        }
    }
    return std::nullopt;
}

} // namespace

ResponseMetrics response_metrics(const std::vector<double>& samples, double dt,
                                 double initial, double target, double settling_band) {
    if (samples.size() < 2) {
        throw std::invalid_argument("response_metrics needs at least two samples");
    }
    if (!(dt > 0.0)) throw std::invalid_argument("response_metrics needs dt > 0");
    if (target == initial) {
        throw std::invalid_argument("response_metrics needs target != initial");
    }

    const double span = target - initial;
    std::vector<double> z(samples.size());
    for (size_t k = 0; k < samples.size(); ++k) z[k] = (samples[k] - initial) / span;

    ResponseMetrics m;

    const auto t10 = first_crossing(z, dt, 0.1);
    if (t10) {
        const size_t from = static_cast<size_t>(*t10 / dt);
        const auto t90 = first_crossing(z, dt, 0.9, from);
        if (t90) m.rise_time = *t90 - *t10;
    }

    // Settling: last excursion out of the band decides; the entry right after
    // it (interpolated on |z - 1|) is the settling instant.
    size_t last_outside = z.size(); // sentinel: none
    for (size_t k = 0; k < z.size(); ++k) {
        if (std::abs(z[k] - 1.0) > settling_band) last_outside = k;
    }
    if (last_outside == z.size()) {
        m.settling_time = 0.0;
    } else if (last_outside + 1 < z.size()) {
        const double e0 = std::abs(z[last_outside] - 1.0);
        const double e1 = std::abs(z[last_outside + 1] - 1.0);
        const double t = (e0 - settling_band) / (e0 - e1);
        m.settling_time = (static_cast<double>(last_outside) + t) * dt;
    } // else: still outside at the end of the record -> undefined

    double peak = -std::numeric_limits<double>::infinity();
    for (double v : z) peak = std::max(peak, v);
    m.overshoot = std::max(0.0, peak - 1.0) * 100.0;

    const size_t tail = std::max<size_t>(1, samples.size() / 10);
    const double tail_mean =
        std::accumulate(samples.end() - static_cast<long>(tail), samples.end(), 0.0) /
        static_cast<double>(tail);
    m.steady_state_error = std::abs(target - tail_mean);
    return m;
}

} // namespace arcad
