#include "hyperlog/winding.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace hyperlog {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

std::vector<int> signs_of(const std::vector<FlipEvent>& flips, bool include_wrap) {
    std::vector<int> s;
    for (const auto& f : flips)
        if (include_wrap || !f.wrap) s.push_back(f.sign);
    return s;
}

}  // namespace

int signature(const ObstructionReport& rep) { return alternating_sum(signs_of(flip_events(rep), false)); }

int circular_signature(const ObstructionReport& rep) {
    if (!rep.closed) throw Error(Errc::BadInput, "circular signature needs a closed loop");
    return alternating_sum(signs_of(flip_events(rep), true));
}

bool is_twisted(const Companion& c, const SampledPath& sp, const Tolerances& tol) {
    const std::size_t n = sp.size();
    if (n < 2 || c.size() != n) throw Error(Errc::BadInput, "companion does not cover the loop samples");
    // The last sample repeats the first one; start at the sample farthest from the real axis.
    std::size_t start = 0;
    double best = -1.0;
    for (std::size_t m = 0; m + 1 < n; ++m) {
        const double r = sp.values[m].im_norm();
        if (r > best) {
            best = r;
            start = m;
        }
    }
    if (best <= tol.real_eps(sp.values[start].norm()))
        throw Error(Errc::AllRealLoop, "every sample of the loop is real");

    const ImaginaryUnit u0 = c.units[start].representative();
    ImaginaryUnit u = u0;
    auto step = [&](std::size_t m) {
        const ImaginaryUnit& r = c.units[m].representative();
        u = dot(r.value(), u.value()) >= 0 ? r : -r;
    };
    for (std::size_t m = start + 1; m < n; ++m) step(m);
    for (std::size_t m = 1; m <= start; ++m) step(m);
    return dot(u.value(), u0.value()) < 0;
}

long shadow_winding_oracle(const Shadow& s, const Tolerances& tol) {
    if (s.size() < 2) throw Error(Errc::BadInput, "shadow has fewer than two samples");
    double scale = 0.0;
    for (std::size_t n = 0; n < s.size(); ++n) {
        const double r = std::hypot(s.x[n], s.y[n]);
        if (!(r > 0.0)) throw Error(Errc::ZeroOnPath, "shadow passes through 0");
        scale = std::max(scale, r);
    }
    const double gap = std::hypot(s.x.back() - s.x.front(), s.y.back() - s.y.front());
    if (gap > 1e-6 * std::max(1.0, scale)) throw Error(Errc::BadInput, "shadow is not closed");
    double total = 0.0;
    for (std::size_t n = 1; n < s.size(); ++n) {
        double d = std::atan2(s.y[n], s.x[n]) - std::atan2(s.y[n - 1], s.x[n - 1]);
        d = std::remainder(d, two_pi);
        if (std::abs(d) >= std::numbers::pi - tol.theta_tol) {
            std::ostringstream os;
            os.precision(17);
            os << "angle step of " << d << " between t=" << s.t[n - 1] << " and t=" << s.t[n];
            throw Error(Errc::StepTooLarge, os.str());
        }
        total += d;
    }
    return std::lround(total / two_pi);
}

long winding_number(const WindingResult& wr) {
    if (wr.twisted || !wr.winding)
        throw Error(Errc::TwistedLoop,
                    "the loop is twisted: the argument change depends on the basepoint (see branch_change_report), "
                    "so no winding number is assigned");
    return *wr.winding;
}

WindingResult analyze_winding(const PathSpec& loop, const std::map<std::size_t, Directive>& directives,
                              const std::optional<ImaginaryUnit>& initial_unit, const Tolerances& tol) {
    if (!loop.closed) throw Error(Errc::BadInput, "winding numbers are defined for closed loops");
    const Analysis an = analyze(loop, directives, 64, tol);
    const Companion c = build_companion(an.samples, an.report);
    if (!c.exists) throw Error(Errc::NotApplicable, "loop has no companion: " + c.reason);

    WindingResult wr;
    for (std::size_t n = 0; n < an.report.intervals.size(); ++n) wr.provenance[n] = an.report.intervals[n].directive;
    wr.flips = flip_events(an.report);
    wr.signature = signature(an.report);
    wr.circular_signature = circular_signature(an.report);
    if (*wr.circular_signature % 2 == 0) wr.signature_winding = std::abs(*wr.circular_signature) / 2;
    wr.basepoint = an.samples.values.front();
    wr.twisted = is_twisted(c, an.samples, tol);

    const ImaginaryUnit u0 = initial_unit ? *initial_unit : c.units.front().representative();
    const CompanionLift cl = lift_companion(c, u0);
    wr.shadow = shadow(an.samples.t, canonical_form(an.samples, cl, tol));
    if (!wr.twisted) {
        wr.shadow_winding = shadow_winding_oracle(wr.shadow, tol);
        wr.winding = std::abs(wr.shadow_winding);
        wr.disagreement = wr.signature_winding && *wr.signature_winding != *wr.winding;
    }
    return wr;
}

bool c_homotopy_equivalent(const WindingResult& l1, const WindingResult& l2) {
    if (l1.twisted || l2.twisted || !l1.winding || !l2.winding)
        throw Error(Errc::NotApplicable, "c-homotopy is decided only for untwisted loops");
    if (distance(l1.basepoint, l2.basepoint) > 1e-9 * std::max(1.0, l1.basepoint.norm()))
        throw Error(Errc::NotApplicable, "loops do not share a basepoint");
    return *l1.winding == *l2.winding;
}

long branch_change_report(const PathSpec& loop, double basepoint, const Tolerances& tol) {
    if (!loop.closed) throw Error(Errc::BadInput, "branch change is defined for closed loops");
    const PathSpec rotated = basepoint == loop.a ? loop : rotate(loop, basepoint, tol);
    const Analysis an = analyze(rotated, {}, 64, tol);
    // A real basepoint is entered from the end of the loop: seed with that direction.
    std::optional<ImaginaryUnit> seed;
    for (const auto& p : an.report.points)
        if (p.wrap) seed = p.left_dir ? p.left_dir : p.right_dir;
    for (const auto& iv : an.report.intervals)
        if (iv.wrap) seed = iv.left_dir ? iv.left_dir : iv.right_dir;
    const LiftResult lr = lift_path(an, 0, seed, tol);
    if (!lr.ok) throw Error(Errc::NotLiftable, lr.message);
    const auto& s = lr.lift->samples;
    return std::lround((s.back().angle - s.front().angle) / two_pi);
}

}  // namespace hyperlog
