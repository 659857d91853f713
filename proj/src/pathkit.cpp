#include "hyperlog/pathkit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace hyperlog {

double Term::operator()(double s) const {
    double v = c;
    for (int n = 0; n < p; ++n) v *= s;
    switch (f) {
        case Fn::one: break;
        case Fn::cos: v *= std::cos(w * s + phi); break;
        case Fn::sin: v *= std::sin(w * s + phi); break;
    }
    return v;
}

double eval_terms(const std::vector<Term>& terms, double s) {
    double v = 0.0;
    for (const Term& t : terms) v += t(s);
    return v;
}

namespace {

Hyper normalized_imaginary(const Hyper& u) {
    const double n = u.im_norm();
    if (!(n > 0.0)) throw Error(Errc::BadInput, "slice unit must have a nonzero imaginary part");
    return u.im() / n;
}

struct FormulaEval {
    double s;
    Dim dim;

    Hyper operator()(const SliceArc& arc) const {
        return Hyper::real(arc.center + arc.radius * std::cos(s), dim) +
               normalized_imaginary(arc.unit) * (arc.radius * std::sin(s));
    }
    Hyper operator()(const Line& line) const { return line.p0 + (line.p1 - line.p0) * s; }
    Hyper operator()(const SliceCurve& c) const {
        const double f = c.u1 == c.u0 ? 0.0 : (s - c.u0) / (c.u1 - c.u0);
        const ImaginaryUnit u = slerp_units(ImaginaryUnit::unchecked(normalized_imaginary(c.unit_start)),
                                            ImaginaryUnit::unchecked(normalized_imaginary(c.unit_end)), f);
        return Hyper::real(eval_terms(c.x, s), dim) + u.value() * eval_terms(c.y, s);
    }
    Hyper operator()(const Components& c) const {
        Hyper h(dim);
        for (std::size_t n = 0; n < c.coeffs.size() && n < h.size(); ++n) h[n] = eval_terms(c.coeffs[n], s);
        return h;
    }
    Hyper operator()(const Samples& tab) const {
        const auto& xs = tab.s;
        if (xs.size() == 1) return tab.values.front();
        if (s <= xs.front()) return tab.values.front();
        if (s >= xs.back()) return tab.values.back();
        const auto it = std::upper_bound(xs.begin(), xs.end(), s);
        const std::size_t n = static_cast<std::size_t>(it - xs.begin());
        const double f = (s - xs[n - 1]) / (xs[n] - xs[n - 1]);
        return tab.values[n - 1] * (1.0 - f) + tab.values[n] * f;
    }
    Hyper operator()(const Rocket&) const {
        constexpr double pi = std::numbers::pi;
        Hyper h = Hyper::real(std::cos(pi - 2.0 * pi * s), dim);
        if (s > 0.0) {
            const double m = s * (1.0 - s);
            h[1] = m * std::cos(2.0 * pi / s);
            h[2] = m * std::sin(2.0 * pi / s);
        }
        return h;
    }
};

struct KindName {
    std::string operator()(const SliceArc&) const { return "slice_arc"; }
    std::string operator()(const Line&) const { return "line"; }
    std::string operator()(const SliceCurve&) const { return "slice_curve"; }
    std::string operator()(const Components&) const { return "components"; }
    std::string operator()(const Samples&) const { return "samples"; }
    std::string operator()(const Rocket&) const { return "rocket"; }
};

double formula_param(const Segment& seg, double t) {
    if (seg.t1 == seg.t0) return seg.s0;
    return seg.s0 + (t - seg.t0) / (seg.t1 - seg.t0) * (seg.s1 - seg.s0);
}

double domain_slack(const PathSpec& p) { return 1e-12 * std::max(1.0, std::abs(p.b - p.a)); }

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

}  // namespace

Hyper Segment::evaluate_formula(double s, Dim dim) const {
    Hyper v = std::visit(FormulaEval{s, dim}, shape);
    return negconj ? -v.conj() : v;
}

Hyper Segment::evaluate(double t, Dim dim) const { return evaluate_formula(formula_param(*this, t), dim); }

std::string Segment::kind() const { return std::visit(KindName{}, shape); }

Hyper PathSpec::evaluate(double t) const {
    const double slack = domain_slack(*this);
    if (!(t >= a - slack && t <= b + slack) || segments.empty())
        throw Error(Errc::OutOfDomain, "parameter " + fmt(t) + " outside [" + fmt(a) + ", " + fmt(b) + "]");
    t = std::clamp(t, a, b);
    const auto it = std::lower_bound(segments.begin(), segments.end(), t,
                                     [](const Segment& s, double x) { return s.t1 < x; });
    const Segment& seg = it == segments.end() ? segments.back() : *it;
    return seg.evaluate(std::clamp(t, seg.t0, seg.t1), dim);
}

std::vector<double> PathSpec::junctions() const {
    std::vector<double> out;
    for (std::size_t n = 0; n + 1 < segments.size(); ++n) out.push_back(segments[n].t1);
    return out;
}

Hyper evaluate(const PathSpec& path, double t) { return path.evaluate(t); }

Segment arc_segment(double t0, double t1, const Hyper& unit, double center, double radius, double angle0,
                    double angle1) {
    return Segment{t0, t1, angle0, angle1, false, SliceArc{unit, center, radius}};
}

Segment line_segment(double t0, double t1, const Hyper& p0, const Hyper& p1) {
    return Segment{t0, t1, 0.0, 1.0, false, Line{p0, p1}};
}

Segment components_segment(double t0, double t1, double s0, double s1, std::vector<std::vector<Term>> coeffs) {
    return Segment{t0, t1, s0, s1, false, Components{std::move(coeffs)}};
}

Segment slice_curve_segment(double t0, double t1, double s0, double s1, const Hyper& unit_start,
                            const Hyper& unit_end, std::vector<Term> x, std::vector<Term> y) {
    return Segment{t0, t1, s0, s1, false, SliceCurve{unit_start, unit_end, s0, s1, std::move(x), std::move(y)}};
}

Segment rocket_segment(double t0, double t1) { return Segment{t0, t1, 0.0, 1.0, false, Rocket{}}; }

PathSpec make_path(Dim dim, std::vector<Segment> segments, bool closed) {
    if (segments.empty()) throw Error(Errc::BadInput, "path has no segments");
    PathSpec p;
    p.dim = dim;
    p.a = segments.front().t0;
    p.b = segments.back().t1;
    p.closed = closed;
    p.segments = std::move(segments);
    return p;
}

void validate(const PathSpec& path, const Tolerances& tol) {
    if (!(path.b > path.a)) throw Error(Errc::BadInput, "domain must satisfy a < b");
    if (path.segments.empty()) throw Error(Errc::BadInput, "path has no segments");
    const double slack = domain_slack(path);
    double cursor = path.a;
    for (std::size_t n = 0; n < path.segments.size(); ++n) {
        const Segment& seg = path.segments[n];
        if (!(seg.t1 > seg.t0)) throw Error(Errc::BadInput, "segment " + std::to_string(n) + " has empty range");
        if (std::abs(seg.t0 - cursor) > slack)
            throw Error(Errc::BadInput, "segment " + std::to_string(n) + " does not start where the previous ends");
        if (const auto* tab = std::get_if<Samples>(&seg.shape)) {
            if (tab->s.empty() || tab->s.size() != tab->values.size())
                throw Error(Errc::BadInput, "sample table is empty or ragged");
            if (!std::is_sorted(tab->s.begin(), tab->s.end()) ||
                std::adjacent_find(tab->s.begin(), tab->s.end()) != tab->s.end())
                throw Error(Errc::BadInput, "sample table parameters must increase strictly");
            for (const Hyper& v : tab->values)
                if (v.dim() != path.dim) throw Error(Errc::DimensionMismatch, "sample value in the wrong algebra");
        }
        const Hyper start = seg.evaluate(seg.t0, path.dim);
        const Hyper end = seg.evaluate(seg.t1, path.dim);
        for (const Hyper& v : {start, end})
            if (v.norm() <= tol.eps_real) throw Error(Errc::ZeroOnPath, "segment endpoint at the origin");
        if (n > 0) {
            const Hyper prev = path.segments[n - 1].evaluate(path.segments[n - 1].t1, path.dim);
            if (distance(prev, start) > tol.real_eps(std::max(prev.norm(), start.norm())))
                throw Error(Errc::EndpointMismatch, "path is discontinuous at t=" + fmt(seg.t0));
        }
        cursor = seg.t1;
    }
    if (std::abs(cursor - path.b) > slack) throw Error(Errc::BadInput, "segments do not cover the domain");
    if (path.closed) {
        const Hyper ga = path.evaluate(path.a), gb = path.evaluate(path.b);
        if (distance(ga, gb) > tol.real_eps(std::max(ga.norm(), gb.norm())))
            throw Error(Errc::EndpointMismatch, "closed path does not return to its start");
    }
}

PathSpec concat(const PathSpec& p1, const PathSpec& p2, const Tolerances& tol) {
    if (p1.dim != p2.dim) throw Error(Errc::DimensionMismatch, "concatenating paths in different algebras");
    const Hyper e = p1.evaluate(p1.b), s = p2.evaluate(p2.a);
    if (distance(e, s) > tol.real_eps(std::max(e.norm(), s.norm())))
        throw Error(Errc::EndpointMismatch, "end of the first path differs from start of the second");
    PathSpec out = p1;
    out.closed = false;
    const double shift = p1.b - p2.a;
    for (Segment seg : p2.segments) {
        seg.t0 += shift;
        seg.t1 += shift;
        out.segments.push_back(std::move(seg));
    }
    out.segments[p1.segments.size()].t0 = out.segments[p1.segments.size() - 1].t1;
    out.b = p2.b + shift;
    out.segments.back().t1 = out.b;
    return out;
}

PathSpec reverse(const PathSpec& p) {
    PathSpec out = p;
    out.segments.clear();
    for (auto it = p.segments.rbegin(); it != p.segments.rend(); ++it) {
        Segment seg = *it;
        seg.t0 = p.a + p.b - it->t1;
        seg.t1 = p.a + p.b - it->t0;
        std::swap(seg.s0, seg.s1);
        out.segments.push_back(std::move(seg));
    }
    out.segments.front().t0 = out.a;
    out.segments.back().t1 = out.b;
    return out;
}

PathSpec repeat(const PathSpec& p, int m, const Tolerances& tol) {
    if (m < 1) throw Error(Errc::BadInput, "repeat count must be at least 1");
    const Hyper ga = p.evaluate(p.a), gb = p.evaluate(p.b);
    if (distance(ga, gb) > tol.real_eps(std::max(ga.norm(), gb.norm())))
        throw Error(Errc::EndpointMismatch, "only loops can be repeated");
    PathSpec out = p;
    out.segments.clear();
    const double len = p.length();
    for (int c = 0; c < m; ++c) {
        for (Segment seg : p.segments) {
            seg.t0 += c * len;
            seg.t1 += c * len;
            out.segments.push_back(std::move(seg));
        }
    }
    out.b = p.a + m * len;
    out.segments.back().t1 = out.b;
    out.closed = true;
    return out;
}

PathSpec reflect_negconj(const PathSpec& p) {
    PathSpec out = p;
    for (Segment& seg : out.segments) seg.negconj = !seg.negconj;
    return out;
}

PathSpec reparameterize(const PathSpec& p, double a, double b) {
    if (!(b > a)) throw Error(Errc::BadInput, "reparameterization needs a < b");
    PathSpec out = p;
    const double scale = (b - a) / p.length();
    for (Segment& seg : out.segments) {
        seg.t0 = a + (seg.t0 - p.a) * scale;
        seg.t1 = a + (seg.t1 - p.a) * scale;
    }
    out.a = a;
    out.b = b;
    out.segments.front().t0 = a;
    out.segments.back().t1 = b;
    return out;
}

PathSpec restrict(const PathSpec& p, double t0, double t1) {
    const double slack = domain_slack(p);
    if (!(t1 > t0) || t0 < p.a - slack || t1 > p.b + slack)
        throw Error(Errc::OutOfDomain, "restriction range outside the domain");
    PathSpec out = p;
    out.segments.clear();
    out.a = t0;
    out.b = t1;
    out.closed = false;
    for (const Segment& seg : p.segments) {
        const double lo = std::max(seg.t0, t0), hi = std::min(seg.t1, t1);
        if (hi - lo <= slack) continue;
        Segment piece = seg;
        piece.s0 = formula_param(seg, lo);
        piece.s1 = formula_param(seg, hi);
        piece.t0 = lo;
        piece.t1 = hi;
        out.segments.push_back(std::move(piece));
    }
    if (out.segments.empty()) throw Error(Errc::OutOfDomain, "restriction range too short");
    out.segments.front().t0 = t0;
    out.segments.back().t1 = t1;
    return out;
}

PathSpec rotate(const PathSpec& p, double t, const Tolerances& tol) {
    const Hyper ga = p.evaluate(p.a), gb = p.evaluate(p.b);
    if (distance(ga, gb) > tol.real_eps(std::max(ga.norm(), gb.norm())))
        throw Error(Errc::EndpointMismatch, "only loops can change basepoint");
    const double slack = domain_slack(p);
    if (t < p.a - slack || t > p.b + slack) throw Error(Errc::OutOfDomain, "basepoint parameter outside domain");
    PathSpec out;
    if (t - p.a <= slack) {
        out = p;
    } else if (p.b - t <= slack) {
        out = reparameterize(p, p.b, p.b + p.length());
    } else {
        PathSpec head = restrict(p, t, p.b);
        PathSpec tail = restrict(p, p.a, t);
        tail = reparameterize(tail, p.b, t + p.length());
        out = head;
        for (Segment& seg : tail.segments) out.segments.push_back(std::move(seg));
        out.b = t + p.length();
    }
    out.closed = true;
    return out;
}

// ---------------------------------------------------------------------------
// Adaptive sampling

namespace {

class Sampler {
public:
    Sampler(const PathSpec& path, const SampleOptions& opts, const Tolerances& tol)
        : path_(path), opts_(opts), tol_(tol) {}

    SampledPath run();

private:
    struct Node {
        double t;
        Hyper v;
    };

    bool is_real_value(const Hyper& v) const { return v.im_norm() <= tol_.real_eps(v.norm()); }
    double scaled_im(const Hyper& v) const { return v.im_norm() / std::max(1.0, v.norm()); }
    bool pair_smooth(const Hyper& va, const Hyper& vb) const;
    bool smooth_enough(const Node& a, const Node& b) const;
    bool contains_real_point(double ta, double tb) const;
    void refine(const Node& a, const Node& b, int depth, std::vector<Node>& out);
    void record_unresolved(double lo, double hi);
    void check_budget(std::size_t n) const {
        if (n > tol_.max_samples)
            throw Error(Errc::RefinementBudgetExceeded, "sample budget exhausted");
    }

    const PathSpec& path_;
    SampleOptions opts_;
    Tolerances tol_;
    std::vector<Bracket> unresolved_;
};

bool Sampler::pair_smooth(const Hyper& va, const Hyper& vb) const {
    const double na = va.norm(), nb = vb.norm();
    if (std::abs(na - nb) > tol_.modulus_ratio * std::min(na, nb)) return false;
    if (std::acos(std::clamp(dot(va, vb) / (na * nb), -1.0, 1.0)) > tol_.chord_angle) return false;
    const ImaginaryUnit ua = ImaginaryUnit::from(va), ub = ImaginaryUnit::from(vb);
    return projective_angle(ua, ub) <= tol_.theta_step;
}

bool Sampler::smooth_enough(const Node& a, const Node& b) const {
    if (!pair_smooth(a.v, b.v)) return false;
    // An off-center probe keeps periodic oscillations from hiding behind dyadic sample positions.
    const Hyper probe = path_.evaluate(a.t + 0.3819660112501051 * (b.t - a.t));
    if (is_real_value(probe)) return false;
    return pair_smooth(a.v, probe) && pair_smooth(probe, b.v);
}

bool Sampler::contains_real_point(double ta, double tb) const {
    auto f = [&](double t) { return scaled_im(path_.evaluate(t)); };
    const double tm = golden_minimize(f, ta, tb, (tb - ta) * 1e-6);
    return f(tm) <= tol_.eps_real;
}

void Sampler::record_unresolved(double lo, double hi) {
    if (opts_.strict) {
        std::ostringstream os;
        os.precision(17);
        os << "unresolved bracket [" << lo << ", " << hi << "]";
        throw Error(Errc::RefinementBudgetExceeded, os.str());
    }
    if (!unresolved_.empty() && unresolved_.back().hi >= lo) {
        unresolved_.back().hi = std::max(unresolved_.back().hi, hi);
    } else {
        unresolved_.push_back({lo, hi});
    }
}

void Sampler::refine(const Node& a, const Node& b, int depth, std::vector<Node>& out) {
    const bool ra = is_real_value(a.v), rb = is_real_value(b.v);
    bool split = false;
    bool transition = false;
    if (ra != rb) {
        split = true;
        transition = true;
    } else if (!ra) {
        split = !smooth_enough(a, b);
    }
    if (!split) return;
    if (depth >= tol_.d_max) {
        if (!transition && !contains_real_point(a.t, b.t)) record_unresolved(a.t, b.t);
        return;
    }
    const double tm = 0.5 * (a.t + b.t);
    if (tm <= a.t || tm >= b.t) return;
    const Node m{tm, path_.evaluate(tm)};
    refine(a, m, depth + 1, out);
    out.push_back(m);
    check_budget(out.size());
    refine(m, b, depth + 1, out);
}

SampledPath Sampler::run() {
    if (opts_.n0 < 1) throw Error(Errc::BadInput, "n0 must be positive");
    const double len = path_.length();
    const double merge = 1e-12 * len;

    std::vector<double> grid;
    for (int n = 0; n <= opts_.n0; ++n) grid.push_back(path_.a + len * n / opts_.n0);
    grid.back() = path_.b;
    for (double j : path_.junctions()) grid.push_back(j);
    std::sort(grid.begin(), grid.end());
    std::vector<double> uniq;
    for (double t : grid)
        if (uniq.empty() || t - uniq.back() > merge) uniq.push_back(t);
    if (uniq.back() != path_.b) uniq.back() = path_.b;

    // Phase 1: bisection on transitions, slice rotation, modulus and chord changes.
    std::vector<Node> nodes;
    Node prev{uniq.front(), path_.evaluate(uniq.front())};
    nodes.push_back(prev);
    for (std::size_t n = 1; n < uniq.size(); ++n) {
        const Node next{uniq[n], path_.evaluate(uniq[n])};
        refine(prev, next, 0, nodes);
        nodes.push_back(next);
        check_budget(nodes.size());
        prev = next;
    }

    // Phase 2: crossings hidden between two non-real samples show up as local minima of |Im|.
    std::vector<double> hidden;
    for (std::size_t n = 0; n < nodes.size(); ++n) {
        const double here = scaled_im(nodes[n].v);
        if (is_real_value(nodes[n].v)) continue;
        const bool left_ok = n == 0 || (!is_real_value(nodes[n - 1].v) && here <= scaled_im(nodes[n - 1].v));
        const bool right_ok =
            n + 1 == nodes.size() || (!is_real_value(nodes[n + 1].v) && here <= scaled_im(nodes[n + 1].v));
        if (!left_ok || !right_ok) continue;
        const double lo = nodes[n == 0 ? 0 : n - 1].t;
        const double hi = nodes[n + 1 == nodes.size() ? n : n + 1].t;
        if (hi <= lo) continue;
        auto f = [&](double t) { return scaled_im(path_.evaluate(t)); };
        const double ts = golden_minimize(f, lo, hi, tol_.locate_tol * len);
        if (f(ts) > tol_.eps_real) continue;
        if (std::abs(ts - nodes[n].t) <= merge) continue;
        hidden.push_back(ts);
    }
    if (!hidden.empty()) {
        std::sort(hidden.begin(), hidden.end());
        std::vector<Node> merged;
        std::size_t h = 0;
        for (std::size_t n = 0; n < nodes.size(); ++n) {
            while (h < hidden.size() && hidden[h] < nodes[n].t) {
                if (hidden[h] - merged.back().t > merge && nodes[n].t - hidden[h] > merge) {
                    const Node left = merged.back();
                    const Node m{hidden[h], path_.evaluate(hidden[h])};
                    refine(left, m, 0, merged);
                    merged.push_back(m);
                    refine(m, nodes[n], 0, merged);
                }
                ++h;
            }
            merged.push_back(nodes[n]);
            check_budget(merged.size());
        }
        nodes = std::move(merged);
    }

    SampledPath out;
    out.t.reserve(nodes.size());
    out.values.reserve(nodes.size());
    for (Node& n : nodes) {
        out.t.push_back(n.t);
        out.values.push_back(std::move(n.v));
    }
    out.unresolved = std::move(unresolved_);
    return out;
}

}  // namespace

SampledPath sample_adaptive(const PathSpec& path, const SampleOptions& opts, const Tolerances& tol) {
    return Sampler(path, opts, tol).run();
}

}  // namespace hyperlog
