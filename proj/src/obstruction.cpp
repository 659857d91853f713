#include "hyperlog/obstruction.hpp"

#include <algorithm>
#include <cmath>

namespace hyperlog {

std::string to_string(PointKind k) {
    switch (k) {
        case PointKind::flip: return "flip";
        case PointKind::bounce: return "bounce";
        case PointKind::semi_tame: return "semi_tame";
        case PointKind::not_tame: return "not_tame";
        case PointKind::endpoint_tame: return "endpoint_tame";
        case PointKind::endpoint_not_tame: return "endpoint_not_tame";
    }
    return "unknown";
}

std::string to_string(IntervalKind k) {
    switch (k) {
        case IntervalKind::flip: return "flip";
        case IntervalKind::bounce: return "bounce";
        case IntervalKind::unresolved: return "unresolved";
    }
    return "unknown";
}

std::string to_string(Directive d) {
    switch (d) {
        case Directive::automatic: return "auto";
        case Directive::bounce: return "bounce";
        case Directive::flip: return "flip";
    }
    return "unknown";
}

void ObstructionReport::refresh_tame() {
    tame = intervals.empty() && unresolved.empty();
    for (const auto& p : points)
        if (p.kind == PointKind::semi_tame || p.kind == PointKind::not_tame || p.kind == PointKind::endpoint_not_tame)
            tame = false;
}

std::vector<ObstructionItem> ordered_items(const ObstructionReport& rep) {
    std::vector<ObstructionItem> items;
    std::optional<ObstructionItem> wrap;
    for (std::size_t n = 0; n < rep.points.size(); ++n) {
        const auto& p = rep.points[n];
        ObstructionItem it{p.t, p.t, p.value_sign, false, n, p.wrap};
        if (p.wrap) wrap = it; else items.push_back(it);
    }
    for (std::size_t n = 0; n < rep.intervals.size(); ++n) {
        const auto& iv = rep.intervals[n];
        ObstructionItem it{iv.lo, iv.hi, iv.sign, true, n, iv.wrap};
        if (iv.wrap) wrap = it; else items.push_back(it);
    }
    std::sort(items.begin(), items.end(), [](const auto& x, const auto& y) { return x.lo < y.lo; });
    if (wrap) items.push_back(*wrap);
    return items;
}

std::vector<FlipEvent> flip_events(const ObstructionReport& rep, bool skip_nontame) {
    std::vector<FlipEvent> out;
    for (const auto& it : ordered_items(rep)) {
        if (it.is_interval) {
            const auto& iv = rep.intervals[it.index];
            if (iv.kind == IntervalKind::unresolved)
                throw Error(Errc::UnresolvedKind, "interval kind not resolved at t=" + std::to_string(iv.lo));
            if ((iv.touches_start || iv.touches_end) && !iv.wrap) continue;
            if (iv.kind == IntervalKind::flip) out.push_back({iv.lo, iv.hi, iv.sign, true, iv.wrap});
            continue;
        }
        const auto& p = rep.points[it.index];
        switch (p.kind) {
            case PointKind::flip: out.push_back({p.t, p.t, p.value_sign, false, p.wrap}); break;
            case PointKind::bounce:
            case PointKind::endpoint_tame:
            case PointKind::endpoint_not_tame: break;
            case PointKind::semi_tame:
            case PointKind::not_tame:
                if (!skip_nontame)
                    throw Error(Errc::UnresolvedKind, to_string(p.kind) + " obstruction at t=" + std::to_string(p.t));
                break;
        }
    }
    return out;
}

int alternating_sum(const std::vector<int>& signs) {
    int s = 0;
    for (std::size_t l = 0; l < signs.size(); ++l) s += (l % 2 == 0 ? -1 : 1) * signs[l];
    return s;
}

namespace {

double scaled_im(const Hyper& v) { return v.im_norm() / std::max(1.0, v.norm()); }

// Evaluates a loop periodically outside its domain; open paths return nothing there.
std::optional<Hyper> eval_extended(const PathSpec& path, double t) {
    if (t >= path.a && t <= path.b) return path.evaluate(t);
    if (!path.closed) return std::nullopt;
    const double len = path.length();
    while (t < path.a) t += len;
    while (t > path.b) t -= len;
    return path.evaluate(t);
}

std::optional<ImaginaryUnit> direction_at(const PathSpec& path, double t) {
    const auto v = eval_extended(path, t);
    if (!v || !(v->im_norm() > 0.0)) return std::nullopt;
    return ImaginaryUnit::from(*v);
}

bool close_units(const ImaginaryUnit& x, const ImaginaryUnit& y, double tol) { return angle_between(x, y) <= tol; }

}  // namespace

std::optional<ImaginaryUnit> one_sided_direction(const PathSpec& path, double t_s, Side side, const LimitProbe& probe,
                                                 const Tolerances& tol) {
    const double len = path.length();
    const double h0 = probe.h0 > 0.0 ? probe.h0 : 0.5e-3 * len;
    const double floor = probe.floor > 0.0 ? probe.floor : tol.limit_floor * len;
    const double dirn = side == Side::left ? -1.0 : 1.0;
    std::vector<ImaginaryUnit> seq;
    for (int j = 0; j <= tol.limit_iterations; ++j) {
        const double h = std::ldexp(h0, -j);
        if (h < floor) break;
        const auto d = direction_at(path, t_s + dirn * h);
        if (!d) return std::nullopt;
        seq.push_back(*d);
        const std::size_t n = seq.size();
        if (n < 3) continue;
        const ImaginaryUnit &d0 = seq[n - 3], &d1 = seq[n - 2], &d2 = seq[n - 1];
        if (!close_units(d0, d1, tol.theta_tol) || !close_units(d1, d2, tol.theta_tol) ||
            !close_units(d0, d2, tol.theta_tol))
            continue;
        // Off-lattice probes: a dyadic sequence can sample an oscillation at a constant phase.
        bool settled = true;
        for (double f : {0.6180339887498949, 0.7861513777574233}) {
            const auto p = direction_at(path, t_s + dirn * h * f);
            if (!p || !close_units(*p, d2, tol.theta_tol)) settled = false;
        }
        if (settled) return d2;
    }
    return std::nullopt;
}

PointKind classify_point(const std::optional<ImaginaryUnit>& left, const std::optional<ImaginaryUnit>& right,
                         double theta_tol) {
    if (!left || !right) return PointKind::not_tame;
    const double ang = angle_between(*left, *right);
    if (ang <= theta_tol) return PointKind::bounce;
    if (ang >= std::acos(-1.0) - theta_tol) return PointKind::flip;
    return PointKind::semi_tame;
}

PointKind classify_endpoint(const std::optional<ImaginaryUnit>& dir) {
    return dir ? PointKind::endpoint_tame : PointKind::endpoint_not_tame;
}

IntervalKind classify_interval(ObstructionInterval& iv, Directive directive, double theta_tol) {
    iv.directive = directive;
    const bool degenerate = !iv.wrap && iv.hi - iv.lo <= 0.0;
    if (degenerate) {
        if (!iv.left_dir || !iv.right_dir)
            throw Error(Errc::MissingEndpointLimit, "interval endpoint direction limit missing");
        iv.non_unique = false;
        const PointKind k = classify_point(iv.left_dir, iv.right_dir, theta_tol);
        iv.kind = k == PointKind::flip     ? IntervalKind::flip
                  : k == PointKind::bounce ? IntervalKind::bounce
                                           : IntervalKind::unresolved;
        return iv.kind;
    }
    iv.non_unique = true;
    iv.kind = directive == Directive::flip ? IntervalKind::flip : IntervalKind::bounce;
    return iv.kind;
}

void apply_directives(ObstructionReport& rep, const std::map<std::size_t, Directive>& directives) {
    for (const auto& [idx, d] : directives)
        if (idx >= rep.intervals.size())
            throw Error(Errc::BadInput, "directive for nonexistent interval " + std::to_string(idx));
    for (std::size_t n = 0; n < rep.intervals.size(); ++n) {
        const auto it = directives.find(n);
        classify_interval(rep.intervals[n], it == directives.end() ? Directive::automatic : it->second);
    }
}

namespace {

class Finder {
public:
    Finder(const SampledPath& sp, const PathSpec& path, const Tolerances& tol)
        : sp_(sp), path_(path), tol_(tol), len_(path.length()) {}

    ObstructionReport run();

private:
    struct Run {
        std::size_t i, j;  // inclusive sample indices
        bool interval;
        double lo, hi;     // parameter extent (point: lo == hi == t*)
        double delta = 0.0;
        int sign = 1;
    };

    bool exact_real(double t) const {
        const Hyper v = path_.evaluate(t);
        return v.im_norm() <= tol_.exact_eps(v.norm());
    }
    // Boundary between a non-exact parameter `out` and an exact one `in`.
    double locate_boundary(double out, double in) const {
        for (int it = 0; it < 200 && std::abs(in - out) > tol_.locate_tol * len_; ++it) {
            const double m = 0.5 * (out + in);
            if (exact_real(m)) in = m; else out = m;
        }
        return in;
    }
    Run classify_run(std::size_t i, std::size_t j) const;
    double gap_to_neighbor(const std::vector<ObstructionItem>& items, std::size_t k, Side side) const;

    const SampledPath& sp_;
    const PathSpec& path_;
    const Tolerances& tol_;
    double len_;
};

Finder::Run Finder::classify_run(std::size_t i, std::size_t j) const {
    const std::size_t last = sp_.size() - 1;
    Run r{i, j, false, 0.0, 0.0};
    bool all_exact = j > i;
    for (std::size_t n = i; all_exact && n <= j; ++n) {
        const Hyper& v = sp_.values[n];
        if (v.im_norm() > tol_.exact_eps(v.norm())) all_exact = false;
        if (all_exact && n < j && !exact_real(0.5 * (sp_.t[n] + sp_.t[n + 1]))) all_exact = false;
    }
    if (all_exact) {
        r.interval = true;
        r.lo = i == 0 ? path_.a : locate_boundary(sp_.t[i - 1], sp_.t[i]);
        r.hi = j == last ? path_.b : locate_boundary(sp_.t[j + 1], sp_.t[j]);
        r.sign = path_.evaluate(0.5 * (r.lo + r.hi)).re() > 0 ? 1 : -1;
        return r;
    }
    double ts;
    if (i == 0) {
        ts = path_.a;
    } else if (j == last) {
        ts = path_.b;
    } else {
        auto f = [&](double t) { return scaled_im(path_.evaluate(t)); };
        ts = golden_minimize(f, sp_.t[i - 1], sp_.t[j + 1], tol_.locate_tol * len_);
        // Prefer a sample when it is at least as real as the golden-section estimate.
        for (std::size_t n = i; n <= j; ++n)
            if (scaled_im(sp_.values[n]) < f(ts)) ts = sp_.t[n];
    }
    r.lo = r.hi = ts;
    if (exact_real(ts)) {
        const double left = i == 0 ? ts : locate_boundary(sp_.t[i - 1], ts);
        const double right = j == last ? ts : locate_boundary(sp_.t[j + 1], ts);
        r.delta = std::max(ts - left, right - ts);
    }
    r.sign = path_.evaluate(ts).re() > 0 ? 1 : -1;
    return r;
}

double Finder::gap_to_neighbor(const std::vector<ObstructionItem>& items, std::size_t k, Side side) const {
    const ObstructionItem& me = items[k];
    const std::size_t n = items.size();
    if (!path_.closed) {
        if (side == Side::left) return k > 0 ? me.lo - items[k - 1].hi : me.lo - path_.a;
        return k + 1 < n ? items[k + 1].lo - me.hi : path_.b - me.hi;
    }
    // On a loop the neighbours are cyclic and distances are measured around the circle.
    double g = side == Side::left ? me.lo - items[(k + n - 1) % n].hi : items[(k + 1) % n].lo - me.hi;
    g = std::fmod(g, len_);
    if (g <= 0.0) g += len_;
    return g;
}

ObstructionReport Finder::run() {
    ObstructionReport rep;
    rep.a = path_.a;
    rep.b = path_.b;
    rep.closed = path_.closed;
    rep.unresolved = sp_.unresolved;
    if (sp_.size() < 2) throw Error(Errc::BadInput, "sampled path too short");

    std::vector<char> real(sp_.size());
    for (std::size_t n = 0; n < sp_.size(); ++n) {
        const Hyper& v = sp_.values[n];
        if (v.norm() <= tol_.eps_real) throw Error(Errc::ZeroOnPath, "path passes through the origin");
        real[n] = v.im_norm() <= tol_.real_eps(v.norm());
    }

    std::vector<Run> runs;
    for (std::size_t n = 0; n < sp_.size();) {
        if (!real[n]) {
            ++n;
            continue;
        }
        std::size_t j = n;
        while (j + 1 < sp_.size() && real[j + 1]) ++j;
        runs.push_back(classify_run(n, j));
        n = j + 1;
    }

    const std::size_t last = sp_.size() - 1;
    const bool wrap_joint = path_.closed && !runs.empty() && runs.front().i == 0 && runs.back().j == last;
    // For loops the runs touching a and b describe one obstruction at the joint.
    std::optional<Run> head, tail;
    if (wrap_joint) {
        head = runs.front();
        tail = runs.size() > 1 ? runs.back() : runs.front();
        runs.erase(runs.begin());
        if (!runs.empty() && runs.back().j == last) runs.pop_back();
    }

    for (const Run& r : runs) {
        if (r.interval) {
            ObstructionInterval iv;
            iv.lo = r.lo;
            iv.hi = r.hi;
            iv.sign = r.sign;
            iv.touches_start = r.i == 0;
            iv.touches_end = r.j == last;
            rep.intervals.push_back(iv);
        } else {
            ObstructionPoint p;
            p.t = r.lo;
            p.value_sign = r.sign;
            p.extent_lo = sp_.t[r.i];
            p.extent_hi = sp_.t[r.j];
            rep.points.push_back(p);
        }
    }
    std::vector<double> deltas;
    for (const Run& r : runs)
        if (!r.interval) deltas.push_back(r.delta);
    double wrap_delta = 0.0;
    if (wrap_joint) {
        if (head->interval || tail->interval) {
            ObstructionInterval iv;
            iv.wrap = true;
            iv.lo = tail->interval ? tail->lo : path_.b;
            iv.hi = head->interval ? head->hi : path_.a;
            iv.sign = head->sign;
            rep.intervals.push_back(iv);
        } else {
            ObstructionPoint p;
            p.t = path_.a;
            p.wrap = true;
            p.value_sign = head->sign;
            p.extent_lo = sp_.t[tail->i];
            p.extent_hi = sp_.t[head->j];
            rep.points.push_back(p);
            wrap_delta = std::max(head->delta, tail->delta);
        }
    }

    // One-sided limits, bounded by the distance to neighbouring obstructions.
    const auto items = ordered_items(rep);
    for (std::size_t k = 0; k < items.size(); ++k) {
        const ObstructionItem& it = items[k];
        auto probe = [&](Side side, double at, double delta) -> std::optional<ImaginaryUnit> {
            const double gap = gap_to_neighbor(items, k, side);
            if (gap <= 0.0) return std::nullopt;
            LimitProbe lp;
            lp.h0 = 0.5 * std::min(1e-3 * len_, gap);
            lp.floor = std::max(tol_.limit_floor * len_, 4.0 * delta);
            return one_sided_direction(path_, at, side, lp, tol_);
        };
        if (!it.is_interval) {
            ObstructionPoint& p = rep.points[it.index];
            const double delta = p.wrap ? wrap_delta : deltas[it.index];
            if (p.wrap) {
                p.left_dir = probe(Side::left, path_.b, delta);
                p.right_dir = probe(Side::right, path_.a, delta);
                p.kind = classify_point(p.left_dir, p.right_dir, tol_.theta_tol);
            } else if (!path_.closed && p.t <= path_.a) {
                p.right_dir = probe(Side::right, p.t, delta);
                p.kind = classify_endpoint(p.right_dir);
            } else if (!path_.closed && p.t >= path_.b) {
                p.left_dir = probe(Side::left, p.t, delta);
                p.kind = classify_endpoint(p.left_dir);
            } else {
                p.left_dir = probe(Side::left, p.t, delta);
                p.right_dir = probe(Side::right, p.t, delta);
                p.kind = classify_point(p.left_dir, p.right_dir, tol_.theta_tol);
            }
        } else {
            ObstructionInterval& iv = rep.intervals[it.index];
            if (!iv.touches_start) iv.left_dir = probe(Side::left, iv.lo, 0.0);
            if (!iv.touches_end) iv.right_dir = probe(Side::right, iv.hi, 0.0);
            classify_interval(iv, Directive::automatic, tol_.theta_tol);
        }
    }

    // Big arcs: gaps between consecutive items whose signs differ.
    const std::size_t n_items = items.size();
    const std::size_t n_pairs = path_.closed ? (n_items > 1 ? n_items : 0) : (n_items > 0 ? n_items - 1 : 0);
    for (std::size_t k = 0; k < n_pairs; ++k) {
        const auto& x = items[k];
        const auto& y = items[(k + 1) % n_items];
        if (x.sign == y.sign) continue;
        BigArc arc{x.hi, y.lo, x.sign, y.sign, false};
        if (arc.e < arc.s) {
            arc.e += len_;
            arc.wrap = true;
        }
        rep.big_arcs.push_back(arc);
    }
    std::sort(rep.big_arcs.begin(), rep.big_arcs.end(), [](const BigArc& x, const BigArc& y) { return x.s < y.s; });
    rep.refresh_tame();
    return rep;
}

}  // namespace

ObstructionReport find_obstructions(const SampledPath& sp, const PathSpec& path, const Tolerances& tol) {
    return Finder(sp, path, tol).run();
}

Analysis analyze(const PathSpec& path, const std::map<std::size_t, Directive>& directives, int n0,
                 const Tolerances& tol) {
    validate(path, tol);
    Analysis out{path, sample_adaptive(path, SampleOptions{n0, false}, tol), {}};
    out.report = find_obstructions(out.samples, path, tol);
    apply_directives(out.report, directives);
    return out;
}

}  // namespace hyperlog
