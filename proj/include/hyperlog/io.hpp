#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "hyperlog/companion.hpp"
#include "hyperlog/corpus.hpp"
#include "hyperlog/lifting.hpp"
#include "hyperlog/obstruction.hpp"
#include "hyperlog/pathkit.hpp"
#include "hyperlog/winding.hpp"

namespace hyperlog::io {

using json = nlohmann::ordered_json;

/// Array of 4 or 8 coefficients in basis order.
json to_json(const Hyper& q);
Hyper hyper_from_json(const json& j, Dim dim);

json to_json(const PathSpec& path);
/// Parses and validates a path spec; malformed input throws BadInput.
PathSpec path_from_json(const json& j);
PathSpec load_path(const std::string& file);

json to_json(const ObstructionReport& rep);
json to_json(const LiftResult& lr);
json to_json(const WindingResult& wr);
json to_json(const Companion& c);
json to_json(const DemoCase& d);

/// CSV writers; every number has 17 significant digits.
void write_samples_csv(std::ostream& os, const SampledPath& sp);
void write_lift_csv(std::ostream& os, const LogLift& lift);
void write_shadow_csv(std::ostream& os, const Shadow& s);

/// Serialized JSON text (two-space indentation, trailing newline).
std::string dump(const json& j);

}  // namespace hyperlog::io
