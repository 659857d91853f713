#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hyperlog/algebra.hpp"
#include "hyperlog/pathkit.hpp"

namespace hyperlog {

enum class PointKind { flip, bounce, semi_tame, not_tame, endpoint_tame, endpoint_not_tame };
enum class IntervalKind { flip, bounce, unresolved };
enum class Directive { automatic, bounce, flip };
enum class Side { left, right };

std::string to_string(PointKind k);
std::string to_string(IntervalKind k);
std::string to_string(Directive d);

/// Isolated parameter where the path meets the real axis.
struct ObstructionPoint {
    double t = 0.0;
    int value_sign = 1;
    std::optional<ImaginaryUnit> left_dir;
    std::optional<ImaginaryUnit> right_dir;
    PointKind kind = PointKind::not_tame;
    bool wrap = false;      ///< the joint a ≃ b of a closed loop (t is then a)
    double extent_lo = 0.0; ///< numerically real neighbourhood found by the sampler
    double extent_hi = 0.0;
};

/// Positive-length parameter range mapped into the real axis. For a closed loop
/// the wrap interval runs from lo (near b) through b ≃ a to hi (near a).
struct ObstructionInterval {
    double lo = 0.0, hi = 0.0;
    int sign = 1;
    std::optional<ImaginaryUnit> left_dir;   ///< limit approaching lo from below
    std::optional<ImaginaryUnit> right_dir;  ///< limit approaching hi from above
    IntervalKind kind = IntervalKind::unresolved;
    Directive directive = Directive::automatic;
    bool non_unique = true;
    bool wrap = false;
    bool touches_start = false;  ///< open path: interval begins at a
    bool touches_end = false;    ///< open path: interval ends at b
};

/// Component of the path off the real axis whose end values have opposite signs.
struct BigArc {
    double s = 0.0, e = 0.0;  ///< e may exceed b for the wrap arc of a loop
    int sign_s = 1, sign_e = -1;
    bool wrap = false;
};

struct ObstructionReport {
    double a = 0.0, b = 1.0;
    bool closed = false;
    std::vector<ObstructionPoint> points;
    std::vector<ObstructionInterval> intervals;
    std::vector<BigArc> big_arcs;
    std::vector<Bracket> unresolved;
    bool tame = true;

    bool empty() const { return points.empty() && intervals.empty(); }
    void refresh_tame();
};

/// One entry of the ordered obstruction sequence: either a point or an interval.
struct ObstructionItem {
    double lo, hi;  ///< equal for points; hi may lie before lo for the wrap interval
    int sign;
    bool is_interval;
    std::size_t index;  ///< into points or intervals
    bool wrap;
};

/// Items in increasing parameter order; a wrap item comes last.
std::vector<ObstructionItem> ordered_items(const ObstructionReport& rep);

/// A flip in parameter order: an isolated flip point or an interval resolved as a flip.
struct FlipEvent {
    double lo, hi;
    int sign;
    bool is_interval;
    bool wrap;
};

/// Flips of the report in parameter order (wrap flip last). Non-tame interior points throw
/// UnresolvedKind unless `skip_nontame` is set; endpoint kinds of open paths never count.
std::vector<FlipEvent> flip_events(const ObstructionReport& rep, bool skip_nontame = false);

/// Σ signs[l-1] (-1)^l, l = 1..m.
int alternating_sum(const std::vector<int>& signs);

struct LimitProbe {
    double h0 = 0.0;     ///< first offset; 0 selects 1e-3 (b - a) / 2
    double floor = 0.0;  ///< smallest offset; 0 selects limit_floor (b - a)
};

/// Limit of Im γ / |Im γ| as t → t_s from one side; absent when the sequence does not settle.
std::optional<ImaginaryUnit> one_sided_direction(const PathSpec& path, double t_s, Side side,
                                                 const LimitProbe& probe = {},
                                                 const Tolerances& tol = default_tolerances());

PointKind classify_point(const std::optional<ImaginaryUnit>& left, const std::optional<ImaginaryUnit>& right,
                         double theta_tol = default_tolerances().theta_tol);
/// Endpoint variant: only one side of the parameter lies in the domain.
PointKind classify_endpoint(const std::optional<ImaginaryUnit>& dir);

/// Resolves an interval kind for a companion directive (automatic means bounce).
IntervalKind classify_interval(ObstructionInterval& iv, Directive directive,
                               double theta_tol = default_tolerances().theta_tol);

ObstructionReport find_obstructions(const SampledPath& sp, const PathSpec& path,
                                    const Tolerances& tol = default_tolerances());

/// Re-resolves the interval kinds from per-interval directives (index into rep.intervals).
void apply_directives(ObstructionReport& rep, const std::map<std::size_t, Directive>& directives);

struct Analysis {
    PathSpec path;
    SampledPath samples;
    ObstructionReport report;
};

/// Samples (non-strict) and analyzes a path in one step.
Analysis analyze(const PathSpec& path, const std::map<std::size_t, Directive>& directives = {}, int n0 = 64,
                 const Tolerances& tol = default_tolerances());

}  // namespace hyperlog
