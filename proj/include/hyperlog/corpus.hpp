#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hyperlog/obstruction.hpp"
#include "hyperlog/pathkit.hpp"

namespace hyperlog {

/// One expected outcome and where the expectation comes from ("reference", "derived" or "trivial").
struct ExpectedFact {
    std::string key;
    std::string value;
    std::string provenance;
};

struct Expected {
    std::optional<bool> tame;
    std::optional<bool> companion_exists;
    std::optional<bool> twisted;
    std::optional<bool> liftable;          ///< open lift over the domain (from the default seed)
    std::optional<double> fail_at;         ///< parameter where lifting fails
    std::optional<PointKind> fail_kind;
    std::optional<int> winding;
    std::optional<bool> closed_sense_liftable;
    std::vector<ExpectedFact> facts;
};

/// Default seed for lifting a demo (used by the CLI and the acceptance suite).
struct LiftSeed {
    long k0 = 0;
    std::optional<Hyper> initial_unit;
};

struct DemoCase {
    std::string name;
    std::string description;
    PathSpec path;
    std::map<std::size_t, Directive> directives;
    LiftSeed seed;
    Expected expected;
    std::string notes;
};

/// Known demo names (with their default arguments spelled out).
std::vector<std::string> demo_names();

/// Builds a demo. Accepts parameterized names such as "gamma1m_gamma2(4)" or
/// "slice_circle(j,2,3)"; bare family names use the default arguments.
DemoCase demo(const std::string& name);

// Path constructors shared with tests.
PathSpec sigma_arc_path();
PathSpec rocket_path();
PathSpec lambda_loop_path();  ///< parameter 0.5 maps to +1, 3.5 to -1
PathSpec three_exp_path();
PathSpec gamma1m_gamma2_path(int m);
PathSpec meridians_path();
PathSpec slice_circle_path(const Hyper& unit, double r, int turns);

/// Parses "i", "-j", "k" or a comma-separated coefficient list into an imaginary unit.
Hyper parse_unit(const std::string& text, Dim dim = Dim::quaternion);

}  // namespace hyperlog
