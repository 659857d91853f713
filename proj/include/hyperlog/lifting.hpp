#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hyperlog/algebra.hpp"
#include "hyperlog/obstruction.hpp"
#include "hyperlog/pathkit.hpp"

namespace hyperlog {

struct LiftSample {
    double t;
    Hyper value;         ///< γ̃(t) = log|γ(t)| + unit * angle
    ImaginaryUnit unit;  ///< unit of the argument
    double angle;        ///< continuous scalar argument
    long k;              ///< branch in force at t
};

struct BranchPiece {
    double lo, hi;
    long k;
};

struct LogLift {
    std::vector<LiftSample> samples;
    std::vector<BranchPiece> branch_trace;
    long initial_branch = 0;
    long final_branch = 0;
    double residual = 0.0;  ///< max |exp(γ̃) - γ| / max(1, |γ|)
    double max_jump = 0.0;  ///< largest change of γ̃ between consecutive samples

    std::size_t size() const { return samples.size(); }
};

struct LiftResult {
    bool ok = false;
    std::optional<LogLift> lift;
    double fail_t = 0.0;
    std::string fail_kind;  ///< classification at the failing parameter
    std::string message;
};

/// Continuation of the logarithm along the (sampled, analyzed) path starting on branch k0.
/// Throws MissingInitialUnit when γ(a) is real and a unit is needed to fix the starting
/// argument, InitialMismatch when the unit is not compatible with the path's start.
LiftResult lift_path(const Analysis& an, long k0, const std::optional<ImaginaryUnit>& initial_unit = std::nullopt,
                     const Tolerances& tol = default_tolerances());

/// Convenience overload that samples and analyzes the path first.
LiftResult lift_path(const PathSpec& path, long k0, const std::optional<ImaginaryUnit>& initial_unit = std::nullopt,
                     const std::map<std::size_t, Directive>& directives = {},
                     const Tolerances& tol = default_tolerances());

/// γ̃ samples of a successful lift; throws NoLift otherwise.
std::vector<std::pair<double, Hyper>> continuation_log(const LiftResult& lr);

/// max over samples of |exp(γ̃(t)) - γ(t)| / max(1, |γ(t)|), with γ re-evaluated from the spec.
double verify_lift(const PathSpec& path, const LogLift& lift);

/// Largest jump of γ̃ between consecutive samples (a whole-branch shift shows up here).
double max_consecutive_jump(const LogLift& lift);

/// k0 + (-1)^k0 σ.
long terminal_branch(long k0, long sigma);

/// Argument reached when arriving at a real value of the given sign on branch k.
double arrival_angle(long k, int value_sign);
/// Branch after crossing a real value of the given sign.
long flip_branch(long k, int value_sign);

struct ClosedLiftReport {
    bool liftable_unrolled = false;  ///< lift along the loop traversed `turns` times exists
    bool periodic = false;           ///< first-turn endpoints differ by 2π·m·unit only
    int turns = 2;
    LiftResult result;
};

/// Closed-sense lift: lift_path over repeat(loop, turns) plus a periodicity check.
ClosedLiftReport closed_lift(const PathSpec& loop, long k0, const std::optional<ImaginaryUnit>& initial_unit,
                             const std::map<std::size_t, Directive>& directives = {}, int turns = 2,
                             const Tolerances& tol = default_tolerances());

struct NonTameLiftCheck {
    bool liftable = false;                 ///< segment-signature criterion
    std::vector<int> segment_signatures;   ///< σ between consecutive non-tame parameters
    std::vector<double> xi;                ///< non-tame parameters
    bool direct_lift_ok = false;           ///< lift_path from the first non-tame parameter
};

/// Lift existence for loops whose non-tame parameters all have positive values.
NonTameLiftCheck closed_nontame_check(const PathSpec& loop, const ObstructionReport& rep,
                                      const Tolerances& tol = default_tolerances());
bool closed_nontame_liftable(const PathSpec& loop, const ObstructionReport& rep,
                             const Tolerances& tol = default_tolerances());

}  // namespace hyperlog
