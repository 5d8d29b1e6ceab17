#pragma once

#include <optional>
#include <vector>

namespace arcad {

/// Step-response metrics of a uniformly sampled signal.
struct ResponseMetrics {
    std::optional<double> rise_time;     // s, 10% -> 90% of the step
    std::optional<double> settling_time; // s, final entry into the +/-2% band
    double overshoot = 0.0;              // percent of the step magnitude
    double steady_state_error = 0.0;     // signal units, mean over final 10%
};

/// Computes the metrics on the normalized step (y - initial)/(target -
/// initial), interpolating linearly between samples for threshold crossings.
/// Requires at least two samples and target != initial. The settling band is
/// settling_band (fraction of the step, default 2%) around the target.
ResponseMetrics response_metrics(const std::vector<double>& samples, double dt,
                                 double initial, double target,
                                 double settling_band = 0.02);

} // namespace arcad
