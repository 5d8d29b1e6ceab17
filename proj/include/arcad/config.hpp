#pragma once

#include <string>
#include <vector>

#include "arcad/airframe.hpp"
#include "arcad/control.hpp"
#include "arcad/dynamics.hpp"

namespace arcad {

/// Complete description of one simulation experiment.
struct ScenarioSpec {
    std::string airframe_path;
    AirframeModel airframe;
    Environment environment;
    ControllerConfig controller;
    std::vector<TrajectoryWaypoint> waypoints;
    RigidState initial_state;
    double dt = 1e-3;       // s
    double duration = 0.0;  // s
    double settling_band = 0.02;
    std::vector<std::string> log_channels; // empty = log everything
    unsigned seed = 0;                     // reserved

    /// One entry per defaulted field, e.g. "dt = 0.001 (default)".
    std::vector<std::string> defaults_applied;
};

/// Parses and validates an airframe description. Parse problems and invariant
/// violations both surface as ParseError with line/key context.
AirframeModel parse_airframe(const std::string& text);
AirframeModel parse_airframe_file(const std::string& path);

/// Parses a scenario, resolving the airframe reference relative to base_dir
/// and applying documented defaults (each recorded in defaults_applied).
ScenarioSpec parse_scenario(const std::string& text, const std::string& base_dir);
ScenarioSpec parse_scenario_file(const std::string& path);

} // namespace arcad
