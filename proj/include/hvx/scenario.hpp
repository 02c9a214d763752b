#pragma once

#include "hvx/dynamics.hpp"

#include <iosfwd>
#include <string>
#include <vector>

// JSON scenario input and the fixed-format CSV/JSON emission shared by the
// command-line tool and the tests.

namespace hvx {

struct ScenarioParseError : Error {
    using Error::Error;
};

/// On-disk problem description: chart coordinates plus strengths (z is always
/// recomputed, never user-supplied) and integration settings.
struct Scenario {
    struct Vortex {
        double x = 0.0, y = 0.0, gamma = 0.0;
    };
    std::vector<Vortex> vortices;
    IntegratorConfig integrator;
    double t_end = 10.0;
    double sample_dt = 0.1;

    Configuration to_configuration() const;
};

/// Parse a scenario from JSON text; errors name the offending field.
Scenario parse_scenario(const std::string& json_text);
Scenario load_scenario(const std::string& path);

/// Shortest-round-trip style formatting at 17 significant digits.
std::string format_real(double value);

void write_trajectory_csv(std::ostream& os, const std::vector<TrajectorySample>& samples);

} // namespace hvx
