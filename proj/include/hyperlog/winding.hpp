#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hyperlog/companion.hpp"
#include "hyperlog/lifting.hpp"
#include "hyperlog/obstruction.hpp"

namespace hyperlog {

struct WindingResult {
    bool twisted = false;
    int signature = 0;
    std::optional<int> circular_signature;  ///< loops only
    std::optional<long> winding;             ///< absent for twisted loops
    long shadow_winding = 0;                 ///< signed winding of the shadow (meaningful when untwisted)
    std::optional<long> signature_winding;   ///< |σᶜ|/2 when σᶜ is even
    bool disagreement = false;               ///< σᶜ/2 and the shadow winding differ
    std::vector<FlipEvent> flips;
    std::map<std::size_t, Directive> provenance;  ///< directive used for each real interval
    Hyper basepoint;
    Shadow shadow;
};

/// Alternating sum over the flips in parameter order. For loops the flip at the joint is
/// left out, and for open paths so is an interval flip ending at the end of the domain.
int signature(const ObstructionReport& rep);

/// Alternating sum over all flips of a loop, the joint included (last).
int circular_signature(const ObstructionReport& rep);

/// True when the companion lift, started at the sample farthest from the real axis and
/// carried once around the loop, comes back with the opposite sign. Throws AllRealLoop when
/// no sample leaves the real axis.
bool is_twisted(const Companion& c, const SampledPath& sp, const Tolerances& tol = default_tolerances());

/// (1/2π) Σ of the wrapped angle increments of the shadow about 0. Throws StepTooLarge when
/// an increment comes within θ_tol of π, BadInput when the shadow is not closed.
long shadow_winding_oracle(const Shadow& s, const Tolerances& tol = default_tolerances());

/// |shadow winding|; throws TwistedLoop for twisted loops.
long winding_number(const WindingResult& wr);

/// Full winding analysis of a loop with the companion fixed by `directives`.
/// `initial_unit` selects which of the two companion lifts yields the shadow.
WindingResult analyze_winding(const PathSpec& loop, const std::map<std::size_t, Directive>& directives = {},
                              const std::optional<ImaginaryUnit>& initial_unit = std::nullopt,
                              const Tolerances& tol = default_tolerances());

/// Equal windings decide c-homotopy for untwisted loops with companions and a common basepoint.
/// Throws NotApplicable otherwise.
bool c_homotopy_equivalent(const WindingResult& l1, const WindingResult& l2);

/// Change of the continuous argument over one traversal started at parameter `basepoint`,
/// in units of 2π. Throws NotLiftable when the loop does not lift from there.
long branch_change_report(const PathSpec& loop, double basepoint, const Tolerances& tol = default_tolerances());

}  // namespace hyperlog
