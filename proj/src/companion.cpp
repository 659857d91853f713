#include "hyperlog/companion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hyperlog {

Shadow Shadow::conjugated() const {
    Shadow s = *this;
    for (double& v : s.y) v = -v;
    s.conjugate = !conjugate;
    return s;
}

namespace {

// Parameter distance, measured around the circle for loops.
double param_distance(const ObstructionReport& rep, double x, double y) {
    const double d = std::abs(x - y);
    return rep.closed ? std::min(d, (rep.b - rep.a) - d) : d;
}

double item_distance(const ObstructionReport& rep, const ObstructionItem& it, double t) {
    if (!it.wrap && t >= it.lo && t <= it.hi) return 0.0;
    if (it.wrap && it.lo != it.hi && (t >= it.lo || t <= it.hi)) return 0.0;
    return std::min(param_distance(rep, t, it.lo), param_distance(rep, t, it.hi));
}

ImaginaryUnit fallback_unit(const Hyper& v) {
    if (v.im_norm() > 0.0) return ImaginaryUnit::from(v);
    return ImaginaryUnit::unchecked(Hyper::basis(1, v.dim()));
}

ImaginaryUnit unit_near_point(const ObstructionPoint& p, double t, const Hyper& v, double mid) {
    // Samples at the parameter of the point itself take the left limit, later ones the right limit;
    // at the joint of a loop, samples near b are on its left.
    const bool left_side = p.wrap ? t > mid : t <= p.t;
    const auto& primary = left_side ? p.left_dir : p.right_dir;
    const auto& secondary = left_side ? p.right_dir : p.left_dir;
    if (primary) return *primary;
    if (secondary) return *secondary;
    return fallback_unit(v);
}

ImaginaryUnit unit_in_interval(const ObstructionReport& rep, const ObstructionInterval& iv, double t,
                               const Hyper& v) {
    if (!iv.left_dir && !iv.right_dir) return ImaginaryUnit::unchecked(Hyper::basis(1, v.dim()));
    if (!iv.left_dir) return *iv.right_dir;
    if (!iv.right_dir) return *iv.left_dir;
    const ImaginaryUnit target = iv.kind == IntervalKind::flip ? -*iv.right_dir : *iv.right_dir;
    double f;
    if (!iv.wrap) {
        if (t <= iv.lo) return *iv.left_dir;
        if (t >= iv.hi) return *iv.right_dir;
        f = (t - iv.lo) / (iv.hi - iv.lo);
    } else {
        const double width = (rep.b - iv.lo) + (iv.hi - rep.a);
        if (t >= iv.lo) {
            f = (t - iv.lo) / width;
        } else if (t <= iv.hi) {
            f = (rep.b - iv.lo + t - rep.a) / width;
        } else {
            return t - iv.hi < iv.lo - t ? *iv.right_dir : *iv.left_dir;
        }
        if (width <= 0.0) f = 0.0;
    }
    return slerp_units(*iv.left_dir, target, std::clamp(f, 0.0, 1.0));
}

}  // namespace

Companion build_companion(const SampledPath& sp, const ObstructionReport& rep) {
    Companion c;
    const Tolerances& tol = default_tolerances();
    for (const auto& p : rep.points) {
        if (p.kind == PointKind::semi_tame || p.kind == PointKind::not_tame ||
            p.kind == PointKind::endpoint_not_tame) {
            c.exists = false;
            c.reason = to_string(p.kind) + " at t=" + std::to_string(p.t);
            break;
        }
    }
    if (c.exists && !rep.unresolved.empty()) {
        c.exists = false;
        c.reason = "unresolved region near t=" + std::to_string(rep.unresolved.front().lo);
    }
    for (const auto& iv : rep.intervals) {
        if (iv.kind == IntervalKind::unresolved && c.exists) {
            c.exists = false;
            c.reason = "unresolved interval";
        }
        if (iv.non_unique) {
            c.unique = false;
            if (c.exists) c.reason = "positive-length real interval: companion chosen by directive";
        }
    }

    const auto items = ordered_items(rep);
    c.t = sp.t;
    c.units.reserve(sp.size());
    for (std::size_t n = 0; n < sp.size(); ++n) {
        const Hyper& v = sp.values[n];
        const double t = sp.t[n];
        const bool real = v.im_norm() <= tol.real_eps(v.norm());
        if (!real || items.empty()) {
            c.units.emplace_back(fallback_unit(v));
            continue;
        }
        const ObstructionItem* best = nullptr;
        double best_d = std::numeric_limits<double>::infinity();
        for (const auto& it : items) {
            const double d = item_distance(rep, it, t);
            if (d < best_d) {
                best_d = d;
                best = &it;
            }
        }
        if (best->is_interval)
            c.units.emplace_back(unit_in_interval(rep, rep.intervals[best->index], t, v));
        else
            c.units.emplace_back(unit_near_point(rep.points[best->index], t, v, 0.5 * (rep.a + rep.b)));
    }
    return c;
}

CompanionLift lift_companion(const Companion& c, const ImaginaryUnit& initial, double tol) {
    if (c.units.empty()) throw Error(Errc::BadInput, "empty companion");
    const ImaginaryUnit& rep0 = c.units.front().representative();
    const double d = dot(rep0.value(), initial.value());
    if (std::abs(std::abs(d) - 1.0) > tol)
        throw Error(Errc::InitialMismatch, "initial unit is not a representative of the companion at its start");
    CompanionLift cl;
    cl.t = c.t;
    cl.sign_choice = d > 0 ? 1 : -1;
    cl.units.reserve(c.size());
    cl.units.push_back(d > 0 ? rep0 : -rep0);
    for (std::size_t n = 1; n < c.size(); ++n) {
        const ImaginaryUnit& r = c.units[n].representative();
        cl.units.push_back(dot(r.value(), cl.units.back().value()) >= 0 ? r : -r);
    }
    return cl;
}

CanonicalForm canonical_form(const SampledPath& sp, const CompanionLift& cl, const Tolerances& tol) {
    if (cl.units.size() != sp.size()) throw Error(Errc::BadInput, "companion lift does not cover the samples");
    CanonicalForm cf;
    cf.x.reserve(sp.size());
    cf.y.reserve(sp.size());
    double scale = 0.0;
    for (std::size_t n = 0; n < sp.size(); ++n) {
        const Hyper& v = sp.values[n];
        const Hyper& u = cl.units[n].value();
        const double x = v.re();
        const double y = dot(v.im(), u);
        cf.x.push_back(x);
        cf.y.push_back(y);
        cf.residual = std::max(cf.residual, distance(Hyper::real(x, v.dim()) + u * y, v));
        scale = std::max(scale, v.norm());
    }
    const double allowed = std::max(tol.tol_lift * std::max(1.0, scale), 2.0 * tol.real_eps(scale));
    if (cf.residual > allowed)
        throw Error(Errc::SliceMismatch, "path leaves the companion slice (residual " + std::to_string(cf.residual) + ")");
    return cf;
}

Shadow shadow(const std::vector<double>& t, const CanonicalForm& cf, bool conjugate) {
    Shadow s{t, cf.x, cf.y, conjugate};
    if (conjugate)
        for (double& v : s.y) v = -v;
    return s;
}

}  // namespace hyperlog
