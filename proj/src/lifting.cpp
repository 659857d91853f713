#include "hyperlog/lifting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace hyperlog {

namespace {

constexpr double pi = std::numbers::pi;

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

std::string display_kind(PointKind k) {
    std::string s = to_string(k);
    std::replace(s.begin(), s.end(), '_', '-');
    return s;
}

ImaginaryUnit basis_i(Dim d) { return ImaginaryUnit::unchecked(Hyper::basis(1, d)); }

// 𝓘_k on a side whose imaginary unit is d: d for even k, -d for odd k.
ImaginaryUnit branch_unit(const ImaginaryUnit& d, long k) { return is_even(k) ? d : -d; }

// An obstruction as seen by the lift, with the joint of a loop split into a start and an end part.
struct Event {
    double lo = 0.0, hi = 0.0;
    int sign = 1;
    bool interval = false;
    bool at_start = false, at_end = false;
    std::optional<ImaginaryUnit> L, R;
    PointKind pkind = PointKind::bounce;
    IntervalKind ikind = IntervalKind::bounce;
    // Filled in while propagating branches.
    long kb = 0, ka = 0;
    double theta = 0.0;
    std::optional<ImaginaryUnit> u_in, u_out;
};

std::vector<Event> build_events(const ObstructionReport& rep) {
    std::vector<Event> ev;
    for (const auto& p : rep.points) {
        Event e;
        e.sign = p.value_sign;
        e.pkind = p.kind;
        if (p.wrap) {
            Event s = e, f = e;
            s.lo = s.hi = rep.a;
            s.at_start = true;
            s.R = p.right_dir;
            f.lo = f.hi = rep.b;
            f.at_end = true;
            f.L = p.left_dir;
            ev.push_back(s);
            ev.push_back(f);
            continue;
        }
        e.lo = e.hi = p.t;
        e.L = p.left_dir;
        e.R = p.right_dir;
        e.at_start = !rep.closed && p.t <= rep.a;
        e.at_end = !rep.closed && p.t >= rep.b;
        ev.push_back(e);
    }
    for (const auto& iv : rep.intervals) {
        Event e;
        e.sign = iv.sign;
        e.interval = true;
        e.ikind = iv.kind;
        if (iv.wrap) {
            Event s = e, f = e;
            s.lo = rep.a;
            s.hi = iv.hi;
            s.at_start = true;
            s.R = iv.right_dir;
            f.lo = iv.lo;
            f.hi = rep.b;
            f.at_end = true;
            f.L = iv.left_dir;
            if (s.hi > s.lo) ev.push_back(s);
            else {
                s.interval = false;
                s.pkind = classify_endpoint(s.R);
                ev.push_back(s);
            }
            if (f.hi > f.lo) ev.push_back(f);
            else {
                f.interval = false;
                f.pkind = classify_endpoint(f.L);
                ev.push_back(f);
            }
            continue;
        }
        e.lo = iv.lo;
        e.hi = iv.hi;
        e.L = iv.left_dir;
        e.R = iv.right_dir;
        e.at_start = iv.touches_start;
        e.at_end = iv.touches_end;
        ev.push_back(e);
    }
    std::sort(ev.begin(), ev.end(), [](const Event& x, const Event& y) { return x.lo < y.lo; });
    return ev;
}

struct Failure {
    double t;
    PointKind kind;
};

}  // namespace

double arrival_angle(long k, int value_sign) {
    if (value_sign < 0) return (2.0 * static_cast<double>(half_floor(k)) + 1.0) * pi;
    return static_cast<double>(is_even(k) ? k : k + 1) * pi;
}

long flip_branch(long k, int value_sign) { return (value_sign < 0) == is_even(k) ? k + 1 : k - 1; }

long terminal_branch(long k0, long sigma) { return k0 + (is_even(k0) ? sigma : -sigma); }

LiftResult lift_path(const Analysis& an, long k0, const std::optional<ImaginaryUnit>& initial_unit,
                     const Tolerances& tol) {
    const PathSpec& path = an.path;
    const SampledPath& sp = an.samples;
    const ObstructionReport& rep = an.report;
    const Dim dim = path.dim;
    std::vector<Event> ev = build_events(rep);

    LiftResult res;
    auto fail = [&](double t, PointKind kind) {
        res.ok = false;
        res.fail_t = t;
        res.fail_kind = to_string(kind);
        res.message = display_kind(kind) + " at t=" + fmt(t);
        return res;
    };
    for (const auto& e : ev)
        if (e.interval && e.ikind == IntervalKind::unresolved)
            throw Error(Errc::UnresolvedKind, "interval at t=" + fmt(e.lo) + " has no resolved kind");

    // Starting state.
    long k = k0;
    std::optional<ImaginaryUnit> start_unit;
    std::size_t first_middle = 0;
    if (!ev.empty() && ev.front().at_start) {
        Event& e = ev.front();
        first_middle = 1;
        e.kb = k0;
        const double theta0 = arrival_angle(k0, e.sign);
        e.theta = theta0;
        const long m = std::lround(theta0 / pi);
        auto pick = [&](const ImaginaryUnit& u, const ImaginaryUnit& R) -> long {
            // Among m-1 and m, the branch whose unit on the right side is u.
            const long even = is_even(m) ? m : m - 1;
            const long odd = is_even(m) ? m - 1 : m;
            return dot(u.value(), R.value()) >= 0 ? even : odd;
        };
        if (!e.interval) {
            if (!e.R) {
                if (!(e.sign > 0 && theta0 == 0.0)) return fail(e.lo, e.pkind);
                k = 0;
                start_unit = initial_unit ? *initial_unit : basis_i(dim);
            } else if (theta0 == 0.0) {
                start_unit = initial_unit ? *initial_unit : *e.R;
                k = dot(start_unit->value(), e.R->value()) >= 0 ? 0 : -1;
            } else {
                if (!initial_unit)
                    throw Error(Errc::MissingInitialUnit, "path starts on the real axis; an initial unit is required");
                const double c = dot(initial_unit->value(), e.R->value());
                if (std::abs(std::abs(c) - 1.0) > 1e-6)
                    throw Error(Errc::InitialMismatch,
                                "initial unit must be +-(direction leaving the start) for a nonzero starting argument");
                k = pick(*initial_unit, *e.R);
                start_unit = branch_unit(*e.R, k);
            }
        } else {
            if (!initial_unit && theta0 != 0.0)
                throw Error(Errc::MissingInitialUnit, "path starts on a real interval; an initial unit is required");
            const ImaginaryUnit u0 = initial_unit ? *initial_unit : (e.R ? *e.R : basis_i(dim));
            e.u_in = u0;
            if (e.at_end) {
                e.u_out = u0;
                k = k0;
            } else if (!e.R) {
                if (!(e.sign > 0 && theta0 == 0.0)) return fail(e.hi, PointKind::not_tame);
                k = 0;
                e.u_out = u0;
            } else {
                k = pick(u0, *e.R);
                e.u_out = branch_unit(*e.R, k);
            }
            start_unit = u0;
        }
        e.ka = k;
    }

    // Propagation through the interior obstructions.
    for (std::size_t n = first_middle; n < ev.size(); ++n) {
        Event& e = ev[n];
        e.kb = k;
        e.theta = arrival_angle(k, e.sign);
        const bool passable_nontame = e.sign > 0 && e.theta == 0.0;
        if (e.at_end) {
            if (!e.L) {
                if (!passable_nontame) return fail(e.interval ? e.lo : e.hi, e.interval ? PointKind::not_tame : e.pkind);
                e.u_in = basis_i(dim);
            } else {
                e.u_in = branch_unit(*e.L, k);
            }
            e.u_out = e.u_in;
            e.ka = k;
            continue;
        }
        if (!e.interval) {
            switch (e.pkind) {
                case PointKind::flip: k = flip_branch(k, e.sign); break;
                case PointKind::bounce: break;
                default:
                    if (!passable_nontame) return fail(e.lo, e.pkind);
                    k = 0;
                    break;
            }
        } else {
            if (!e.L || !e.R) {
                if (!passable_nontame) return fail(e.L ? e.hi : e.lo, PointKind::not_tame);
                const ImaginaryUnit u = e.L ? *e.L : (e.R ? *e.R : basis_i(dim));
                e.u_in = u;
                e.u_out = e.R ? *e.R : u;
                k = 0;
            } else {
                const long kb = k;
                if (e.ikind == IntervalKind::flip) k = flip_branch(k, e.sign);
                e.u_in = branch_unit(*e.L, kb);
                e.u_out = branch_unit(*e.R, k);
            }
        }
        e.ka = k;
    }
    const long k_final = k;

    // Evaluate the lift at every sample.
    LogLift lift;
    lift.initial_branch = k0;
    lift.final_branch = k_final;
    lift.samples.reserve(sp.size());
    std::size_t idx = 0;
    for (std::size_t n = 0; n < sp.size(); ++n) {
        const double t = sp.t[n];
        const Hyper& v = sp.values[n];
        const double x = v.re(), r = v.im_norm();
        const bool real = r <= tol.real_eps(v.norm());
        while (idx < ev.size() && (ev[idx].interval ? t > ev[idx].hi : t > ev[idx].lo)) ++idx;
        const long k_gap = idx > 0 ? ev[idx - 1].ka : (first_middle ? ev.front().ka : k0);

        ImaginaryUnit unit = basis_i(dim);
        double angle = 0.0;
        long k_here = k_gap;
        if (!real) {
            const BranchArg b = arg_branch(ImaginaryUnit::from(v), x, r, k_gap);
            unit = b.unit;
            angle = b.angle;
        } else {
            // Nearest obstruction decides the frame.
            const Event* best = nullptr;
            double best_d = std::numeric_limits<double>::infinity();
            for (const auto& e : ev) {
                const double d = (t >= e.lo && t <= e.hi) ? 0.0 : std::min(std::abs(t - e.lo), std::abs(t - e.hi));
                if (d < best_d) {
                    best_d = d;
                    best = &e;
                }
            }
            if (best == nullptr) {
                // Numerically real sample with no recorded obstruction: stay on the current branch.
                const BranchArg b = arg_branch(r > 0 ? ImaginaryUnit::from(v) : unit, x, r, k_gap);
                unit = b.unit;
                angle = b.angle;
            } else if (best->interval && t >= best->lo && t <= best->hi) {
                const double w = best->hi - best->lo;
                const double f = w > 0 ? (t - best->lo) / w : 0.0;
                unit = slerp_units(*best->u_in, *best->u_out, std::clamp(f, 0.0, 1.0));
                angle = best->theta;
                k_here = best->kb;
            } else {
                const double anchor = best->interval ? best->lo : best->lo;
                bool left_side = best->interval ? t < best->lo : t <= anchor;
                if (best->at_start) left_side = false;
                if (best->at_end) left_side = true;
                k_here = left_side ? best->kb : best->ka;
                std::optional<ImaginaryUnit> d = left_side ? best->L : best->R;
                if (!d) d = left_side ? best->R : best->L;
                if (!d) d = r > 0 ? ImaginaryUnit::from(v) : basis_i(dim);
                if (best->at_start && !best->interval && start_unit && t <= best->lo) {
                    // The starting value itself: the seed unit with the starting argument.
                    unit = *start_unit;
                    angle = best->theta;
                    k_here = best->ka;
                } else {
                    const BranchArg b = arg_branch(*d, x, r, k_here);
                    unit = b.unit;
                    angle = b.angle;
                }
            }
        }
        const Hyper value = Hyper::real(std::log(v.norm()), dim) + unit.value() * angle;
        lift.samples.push_back({t, value, unit, angle, k_here});
    }

    // Branch trace: the gaps between obstructions.
    double cursor = path.a;
    long kc = first_middle ? ev.front().ka : k0;
    for (std::size_t n = first_middle; n < ev.size(); ++n) {
        if (ev[n].lo > cursor) lift.branch_trace.push_back({cursor, ev[n].lo, kc});
        cursor = ev[n].hi;
        kc = ev[n].ka;
    }
    if (first_middle && ev.front().hi > cursor) cursor = ev.front().hi;
    if (path.b > cursor) lift.branch_trace.push_back({cursor, path.b, kc});
    if (lift.branch_trace.empty()) lift.branch_trace.push_back({path.a, path.b, kc});

    lift.residual = verify_lift(path, lift);
    lift.max_jump = max_consecutive_jump(lift);
    res.ok = true;
    res.lift = std::move(lift);
    return res;
}

LiftResult lift_path(const PathSpec& path, long k0, const std::optional<ImaginaryUnit>& initial_unit,
                     const std::map<std::size_t, Directive>& directives, const Tolerances& tol) {
    return lift_path(analyze(path, directives, 64, tol), k0, initial_unit, tol);
}

std::vector<std::pair<double, Hyper>> continuation_log(const LiftResult& lr) {
    if (!lr.ok || !lr.lift) throw Error(Errc::NoLift, lr.message.empty() ? "no lift available" : lr.message);
    std::vector<std::pair<double, Hyper>> out;
    out.reserve(lr.lift->size());
    for (const auto& s : lr.lift->samples) out.emplace_back(s.t, s.value);
    return out;
}

double verify_lift(const PathSpec& path, const LogLift& lift) {
    double worst = 0.0;
    for (const auto& s : lift.samples) {
        const Hyper g = path.evaluate(s.t);
        worst = std::max(worst, distance(exp_h(s.value), g) / std::max(1.0, g.norm()));
    }
    return worst;
}

double max_consecutive_jump(const LogLift& lift) {
    double worst = 0.0;
    for (std::size_t n = 1; n < lift.samples.size(); ++n)
        worst = std::max(worst, distance(lift.samples[n].value, lift.samples[n - 1].value));
    return worst;
}

ClosedLiftReport closed_lift(const PathSpec& loop, long k0, const std::optional<ImaginaryUnit>& initial_unit,
                             const std::map<std::size_t, Directive>& directives, int turns, const Tolerances& tol) {
    ClosedLiftReport out;
    out.turns = turns;
    const PathSpec unrolled = repeat(loop, turns, tol);
    // Carry the loop's interval directives over to every copy by position.
    const Analysis base = analyze(loop, directives, 64, tol);
    Analysis an = analyze(unrolled, {}, 64, tol);
    const double len = loop.length();
    std::map<std::size_t, Directive> mapped;
    for (std::size_t n = 0; n < an.report.intervals.size(); ++n) {
        const double pos = loop.a + std::fmod(an.report.intervals[n].lo - unrolled.a, len);
        for (const auto& iv : base.report.intervals)
            if (std::abs(iv.lo - pos) < 1e-6 * len || std::abs(std::abs(iv.lo - pos) - len) < 1e-6 * len)
                mapped[n] = iv.directive;
    }
    apply_directives(an.report, mapped);
    out.result = lift_path(an, k0, initial_unit, tol);
    out.liftable_unrolled = out.result.ok;
    if (out.result.ok) {
        const auto& samples = out.result.lift->samples;
        const auto first = samples.front();
        const auto it = std::min_element(samples.begin(), samples.end(), [&](const auto& x, const auto& y) {
            return std::abs(x.t - (loop.a + len)) < std::abs(y.t - (loop.a + len));
        });
        const Hyper diff = it->value - first.value;
        const double m = diff.im_norm() / (2 * pi);
        bool aligned = true;
        if (diff.im_norm() > 1e-9 && first.value.im_norm() > 1e-9) {
            const double c = std::abs(dot(diff.im(), first.value.im())) / (diff.im_norm() * first.value.im_norm());
            aligned = std::abs(c - 1.0) < 1e-6;
        }
        out.periodic = std::abs(diff.re()) < 1e-8 && std::abs(m - std::round(m)) < 1e-6 && aligned;
    }
    return out;
}

NonTameLiftCheck closed_nontame_check(const PathSpec& loop, const ObstructionReport& rep, const Tolerances& tol) {
    if (!loop.closed || !rep.closed) throw Error(Errc::HypothesisViolated, "a closed loop is required");
    if (!rep.intervals.empty())
        throw Error(Errc::HypothesisViolated, "real intervals leave the companion undetermined near them");
    if (!rep.unresolved.empty()) throw Error(Errc::HypothesisViolated, "unresolved obstruction region");
    NonTameLiftCheck out;
    std::vector<const ObstructionPoint*> xi;
    for (const auto& p : rep.points) {
        if (p.kind == PointKind::semi_tame || p.kind == PointKind::not_tame) {
            if (p.value_sign < 0)
                throw Error(Errc::HypothesisViolated, "non-tame parameter with negative value at t=" + fmt(p.t));
            xi.push_back(&p);
        }
    }
    if (xi.empty()) throw Error(Errc::HypothesisViolated, "loop has no non-tame parameter");
    std::sort(xi.begin(), xi.end(), [](auto* x, auto* y) { return x->t < y->t; });
    for (auto* p : xi) out.xi.push_back(p->t);

    const auto flips = flip_events(rep, true);
    const double len = loop.length();
    auto pos = [&](const FlipEvent& f) { return f.wrap ? rep.a : f.lo; };
    for (std::size_t l = 0; l < xi.size(); ++l) {
        const double from = xi[l]->t;
        const double to = l + 1 < xi.size() ? xi[l + 1]->t : xi[0]->t + len;
        std::vector<std::pair<double, int>> seg;
        for (const auto& f : flips) {
            double p = pos(f);
            if (p <= from) p += len;
            if (p > from && p < to) seg.emplace_back(p, f.sign);
        }
        std::sort(seg.begin(), seg.end());
        std::vector<int> signs;
        for (const auto& s : seg) signs.push_back(s.second);
        out.segment_signatures.push_back(alternating_sum(signs));
    }
    out.liftable = std::all_of(out.segment_signatures.begin(), out.segment_signatures.end(),
                               [](int s) { return s == 0 || s == -1; });

    // Direct construction from the first non-tame parameter on the principal branch.
    const PathSpec rotated = rotate(loop, xi.front()->t, tol);
    const Analysis an = analyze(rotated, {}, 64, tol);
    std::optional<ImaginaryUnit> seed;
    for (const auto& p : an.report.points)
        if (p.wrap && p.right_dir) seed = *p.right_dir;
    try {
        // The lift has to close up: back at the joint with argument 0.
        const LiftResult lr = lift_path(an, 0, seed, tol);
        out.direct_lift_ok = lr.ok && std::abs(lr.lift->samples.back().angle) < 1e-9;
    } catch (const Error&) {
        out.direct_lift_ok = false;
    }
    return out;
}

bool closed_nontame_liftable(const PathSpec& loop, const ObstructionReport& rep, const Tolerances& tol) {
    return closed_nontame_check(loop, rep, tol).liftable;
}

}  // namespace hyperlog
