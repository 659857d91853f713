#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hyperlog/algebra.hpp"

namespace hyperlog {

// One scalar term c * s^p * f(w s + phi) with f in {1, cos, sin}.
struct Term {
    enum class Fn { one, cos, sin };
    double c = 1.0;
    int p = 0;
    Fn f = Fn::one;
    double w = 0.0;
    double phi = 0.0;

    double operator()(double s) const;
};

double eval_terms(const std::vector<Term>& terms, double s);

// Segment payloads. Each is evaluated at its own formula parameter s.

/// center + radius (cos s + unit sin s); s is the angle.
struct SliceArc {
    Hyper unit;
    double center = 0.0;
    double radius = 1.0;
};

/// p0 + s (p1 - p0), s in [0, 1].
struct Line {
    Hyper p0;
    Hyper p1;
};

/// x(s) + U(s) y(s); U moves along the great circle from unit_start to unit_end
/// as s runs over [u0, u1].
struct SliceCurve {
    Hyper unit_start;
    Hyper unit_end;
    double u0 = 0.0;
    double u1 = 1.0;
    std::vector<Term> x;
    std::vector<Term> y;
};

/// Every coefficient is an independent sum of terms.
struct Components {
    std::vector<std::vector<Term>> coeffs;
};

/// Piecewise-linear interpolation through a table; s is the table parameter.
struct Samples {
    std::vector<double> s;
    std::vector<Hyper> values;
};

/// cos(pi - 2 pi s) + s (1 - s)(i cos(2 pi / s) + j sin(2 pi / s)), s in [0, 1].
/// At s = 0 the (vanishing) imaginary part is taken to be exactly zero.
struct Rocket {};

using SegmentShape = std::variant<SliceArc, Line, SliceCurve, Components, Samples, Rocket>;

struct Segment {
    double t0 = 0.0, t1 = 1.0;  ///< parameter range inside the path domain
    double s0 = 0.0, s1 = 1.0;  ///< formula parameter at t0 and t1
    bool negconj = false;       ///< evaluate -conj(value) instead of value
    SegmentShape shape;

    Hyper evaluate_formula(double s, Dim dim) const;
    Hyper evaluate(double t, Dim dim) const;
    std::string kind() const;
};

struct PathSpec {
    Dim dim = Dim::quaternion;
    double a = 0.0, b = 1.0;
    bool closed = false;
    std::vector<Segment> segments;

    double length() const { return b - a; }
    Hyper evaluate(double t) const;
    /// Parameters of interior segment junctions.
    std::vector<double> junctions() const;
};

// Segment builders; [t0, t1] is the range inside the path domain.
Segment arc_segment(double t0, double t1, const Hyper& unit, double center, double radius, double angle0,
                    double angle1);
Segment line_segment(double t0, double t1, const Hyper& p0, const Hyper& p1);
Segment components_segment(double t0, double t1, double s0, double s1, std::vector<std::vector<Term>> coeffs);
Segment slice_curve_segment(double t0, double t1, double s0, double s1, const Hyper& unit_start,
                            const Hyper& unit_end, std::vector<Term> x, std::vector<Term> y);
Segment rocket_segment(double t0, double t1);

/// Path over [first t0, last t1] made of the given contiguous segments.
PathSpec make_path(Dim dim, std::vector<Segment> segments, bool closed);

/// Checks contiguity, continuity at junctions, nonvanishing at the junctions and the closed claim.
void validate(const PathSpec& path, const Tolerances& tol = default_tolerances());

Hyper evaluate(const PathSpec& path, double t);

// Path algebra.
PathSpec concat(const PathSpec& p1, const PathSpec& p2, const Tolerances& tol = default_tolerances());
PathSpec reverse(const PathSpec& p);
PathSpec repeat(const PathSpec& p, int m, const Tolerances& tol = default_tolerances());
PathSpec reflect_negconj(const PathSpec& p);
/// Affine reparameterization onto [a, b].
PathSpec reparameterize(const PathSpec& p, double a, double b);
/// Restriction to [t0, t1] ⊆ [a, b].
PathSpec restrict(const PathSpec& p, double t0, double t1);
/// Loop traversed from t: domain [t, t + (b - a)]. Requires a closed path.
PathSpec rotate(const PathSpec& p, double t, const Tolerances& tol = default_tolerances());

struct Bracket {
    double lo, hi;
};

struct SampledPath {
    std::vector<double> t;
    std::vector<Hyper> values;
    std::vector<Bracket> unresolved;  ///< regions where the depth budget ran out

    std::size_t size() const { return t.size(); }
};

struct SampleOptions {
    int n0 = 64;
    bool strict = false;  ///< throw RefinementBudgetExceeded instead of recording the bracket
};

SampledPath sample_adaptive(const PathSpec& path, const SampleOptions& opts = {},
                            const Tolerances& tol = default_tolerances());
inline SampledPath sample_adaptive(const PathSpec& path, int n0, bool strict = true,
                                   const Tolerances& tol = default_tolerances()) {
    return sample_adaptive(path, SampleOptions{n0, strict}, tol);
}

/// Golden-section minimizer of a unimodal function on [lo, hi].
double golden_minimize(const auto& f, double lo, double hi, double xtol) {
    constexpr double g = 0.6180339887498949;
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 200 && hi - lo > xtol; ++it) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace hyperlog
