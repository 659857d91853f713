#include "hyperlog/corpus.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace hyperlog {

namespace {

constexpr double pi = std::numbers::pi;
using F = Term::Fn;

Hyper q(double r, double i, double j, double k = 0.0) { return Hyper(Dim::quaternion, {r, i, j, k}); }

Term cst(double c) { return Term{c, 0, F::one, 0.0, 0.0}; }
Term lin(double c) { return Term{c, 1, F::one, 0.0, 0.0}; }
Term sq(double c) { return Term{c, 2, F::one, 0.0, 0.0}; }
Term cosw(double c, double w = 1.0, double phi = 0.0) { return Term{c, 0, F::cos, w, phi}; }
Term sinw(double c, double w = 1.0, double phi = 0.0) { return Term{c, 0, F::sin, w, phi}; }

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(trim(item));
    return out;
}

double parse_double(const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw Error(Errc::BadInput, "not a number: '" + s + "'");
    }
    if (used != s.size()) throw Error(Errc::BadInput, "not a number: '" + s + "'");
    return v;
}

int parse_int(const std::string& s) {
    const double v = parse_double(s);
    if (v != std::floor(v)) throw Error(Errc::BadInput, "not an integer: '" + s + "'");
    return static_cast<int>(v);
}

}  // namespace

Hyper parse_unit(const std::string& text, Dim dim) {
    const std::string t = trim(text);
    static const std::map<std::string, std::size_t> names{{"i", 1}, {"j", 2}, {"k", 3}, {"e", 4},
                                                          {"ie", 5}, {"je", 6}, {"ke", 7}};
    bool neg = !t.empty() && t[0] == '-';
    const std::string body = neg ? t.substr(1) : t;
    if (const auto it = names.find(body); it != names.end()) {
        const Hyper e = Hyper::basis(it->second, dim);
        return neg ? -e : e;
    }
    const auto parts = split(t, ',');
    Hyper h(dim);
    if (parts.size() > h.size()) throw Error(Errc::DimensionMismatch, "too many unit coefficients");
    // A list without the real slot is accepted when it has exactly size-1 entries.
    const std::size_t offset = parts.size() == h.size() - 1 ? 1 : 0;
    for (std::size_t n = 0; n < parts.size(); ++n) h[n + offset] = parse_double(parts[n]);
    if (std::abs(h.re()) > 1e-12) throw Error(Errc::BadInput, "a unit must be purely imaginary");
    const double n = h.norm();
    if (!(n > 0.0)) throw Error(Errc::BadInput, "a unit must be nonzero");
    return h / n;
}

PathSpec sigma_arc_path() {
    const Hyper i = q(0, 1, 0), j = q(0, 0, 1);
    return make_path(Dim::quaternion,
                     {arc_segment(pi / 2, pi, i, 0, 1, pi / 2, pi), arc_segment(pi, 1.5 * pi, -j, 0, 1, pi, 1.5 * pi)},
                     false);
}

PathSpec rocket_path() { return make_path(Dim::quaternion, {rocket_segment(0, 1)}, true); }

PathSpec lambda_loop_path() {
    std::vector<std::vector<Term>> parabola(4);
    parabola[0] = {lin(1.0), cst(1.0)};
    parabola[1] = {sq(1.0)};
    parabola[2] = {sq(1.0)};
    return make_path(Dim::quaternion,
                     {
                         components_segment(0, 1, -1, 1, parabola),                // i+j -> 1 -> 2+i+j
                         line_segment(1, 2, q(2, 1, 1), q(2, 1, 0)),               // 2+i+j -> 2+i
                         line_segment(2, 3, q(2, 1, 0), q(0, 1, 0)),               // 2+i -> i
                         arc_segment(3, 4, q(0, 1, 0), 0, 1, pi / 2, 1.5 * pi),    // i -> -1 -> -i
                         components_segment(4, 5, pi, pi / 2, {{}, {cosw(1)}, {sinw(1)}, {}}),  // -i -> j
                         line_segment(5, 6, q(0, 0, 1), q(0, 1, 1)),               // j -> i+j
                     },
                     true);
}

PathSpec three_exp_path() {
    const Hyper i = q(0, 1, 0);
    return make_path(Dim::quaternion,
                     {
                         arc_segment(0, pi, i, 0, 3, 0, pi),                 // 3 e^{it}
                         line_segment(pi, 3 * pi, q(-3, 0, 0), q(-1, 0, 0)),  // -4 + t/pi
                         arc_segment(3 * pi, 4 * pi, i, 0, 1, -3 * pi, -4 * pi),  // e^{-it}
                         line_segment(4 * pi, 6 * pi, q(1, 0, 0), q(3, 0, 0)),    // -3 + t/pi
                     },
                     true);
}

PathSpec gamma1m_gamma2_path(int m) {
    if (m < 1) throw Error(Errc::BadInput, "gamma1m_gamma2 needs m >= 1");
    const Hyper i = q(0, 1, 0);
    std::vector<Segment> segs;
    for (int c = 1; c <= m; ++c) segs.push_back(arc_segment(2 * pi * (c - 1), 2 * pi * c, i, 0, 1, pi, 3 * pi));
    segs.push_back(
        components_segment(2 * pi * m, 2 * pi * (m + 1), -pi, pi, {{cosw(1)}, {sinw(1)}, {cosw(1), cst(1)}, {}}));
    return make_path(Dim::quaternion, std::move(segs), true);
}

PathSpec meridians_path() {
    std::vector<std::vector<Term>> first{{cosw(1)}, {sinw(1), lin(-0.1)}, {}, {}};
    std::vector<std::vector<Term>> second{{cosw(1, -1, 2 * pi)}, {cst(-pi / 5), lin(0.1)}, {sinw(1, -1, 2 * pi)}, {}};
    return make_path(Dim::quaternion, {components_segment(0, pi, 0, pi, first), components_segment(pi, 2 * pi, pi, 2 * pi, second)},
                     true);
}

PathSpec slice_circle_path(const Hyper& unit, double r, int turns) {
    if (turns < 1 || !(r > 0)) throw Error(Errc::BadInput, "slice_circle needs r > 0 and turns >= 1");
    return make_path(unit.dim(), {arc_segment(0, 2 * pi * turns, unit, 0, r, 0, 2 * pi * turns)}, true);
}

std::vector<std::string> demo_names() {
    return {"sigma_arc",
            "sigma_hat",
            "rocket_neg",
            "rocket_pos",
            "lambda_loop(plus_one)",
            "lambda_loop(minus_one)",
            "three_exp_composite(constant_i)",
            "three_exp_composite(J_path)",
            "gamma1m_gamma2(3)",
            "meridians",
            "slice_circle(i,1,1)"};
}

DemoCase demo(const std::string& raw) {
    const std::string name = trim(raw);
    std::string family = name;
    std::vector<std::string> args;
    if (const auto open = name.find('('); open != std::string::npos) {
        if (name.back() != ')') throw Error(Errc::UnknownDemo, "malformed demo name '" + name + "'");
        family = name.substr(0, open);
        args = split(name.substr(open + 1, name.size() - open - 2), ',');
    }
    const Hyper i = q(0, 1, 0), j = q(0, 0, 1);

    DemoCase d;
    if (family == "sigma_arc" && args.empty()) {
        d.name = "sigma_arc";
        d.description = "cos t + I(t) sin t on [pi/2, 3pi/2], I = i before pi and -j from pi on";
        d.path = sigma_arc_path();
        d.expected.tame = false;
        d.expected.companion_exists = false;
        d.expected.liftable = false;
        d.expected.fail_at = pi;
        d.expected.fail_kind = PointKind::semi_tame;
        d.expected.facts = {{"point(pi)", "semi_tame", "reference"}, {"lift", "fails at pi", "reference"}};
    } else if (family == "sigma_hat" && args.empty()) {
        d.name = "sigma_hat";
        d.description = "-conj of sigma_arc; its image avoids (-inf, 0]";
        d.path = reflect_negconj(sigma_arc_path());
        d.expected.tame = false;
        d.expected.companion_exists = false;
        d.expected.liftable = true;
        d.expected.facts = {{"lift", "ok", "reference"}, {"companion", "none", "reference"}};
    } else if (family == "rocket_neg" && args.empty()) {
        d.name = "rocket_neg";
        d.description = "cos(pi - 2 pi t) + t(1-t)(i cos(2pi/t) + j sin(2pi/t)) on [0, 1]";
        d.path = rocket_path();
        d.expected.tame = false;
        d.expected.liftable = false;
        d.expected.fail_at = 0.0;
        d.expected.fail_kind = PointKind::not_tame;
        d.expected.facts = {{"point(0)", "not_tame", "reference"}, {"lift", "fails at 0", "reference"}};
    } else if (family == "rocket_pos" && args.empty()) {
        d.name = "rocket_pos";
        d.description = "-conj of rocket_neg; its image avoids (-inf, 0]";
        d.path = reflect_negconj(rocket_path());
        d.expected.tame = false;
        d.expected.liftable = true;
        d.expected.facts = {{"lift", "ok", "reference"}};
    } else if (family == "lambda_loop" && args.size() <= 1) {
        const std::string start = args.empty() ? "plus_one" : args[0];
        if (start != "plus_one" && start != "minus_one") throw Error(Errc::UnknownDemo, "lambda_loop start must be plus_one or minus_one");
        const bool plus = start == "plus_one";
        d.name = "lambda_loop(" + start + ")";
        d.description = "six-piece twisted tame loop through +1 (bounce) and -1 (flip)";
        d.path = rotate(lambda_loop_path(), plus ? 0.5 : 3.5);
        d.seed.initial_unit = plus ? (i + j) / std::sqrt(2.0) : i;
        d.expected.tame = true;
        d.expected.companion_exists = true;
        d.expected.twisted = true;
        d.expected.liftable = true;
        d.expected.facts = {{"twisted", "true", "reference"},
                            {"branch_change_report", plus ? "1" : "0", "reference"},
                            {"winding", "TwistedLoop", "reference"}};
        d.notes =
            "traversal: parabola t+1+t^2(i+j) for t in [-1,1]; segment 2+i+j -> 2+i; segment 2+i -> i; "
            "half circle cos s + i sin s, s in [pi/2, 3pi/2]; quarter circle i cos s + j sin s, s from pi down to pi/2; "
            "segment j -> i+j. Each piece has parameter length 1; the loop is rotated to start at the chosen point.";
    } else if (family == "three_exp_composite" && args.size() <= 1) {
        const std::string comp = args.empty() ? "constant_i" : args[0];
        if (comp != "constant_i" && comp != "J_path") throw Error(Errc::UnknownDemo, "three_exp_composite companion must be constant_i or J_path");
        d.name = "three_exp_composite(" + comp + ")";
        d.description = "3e^{it} on [0,pi], -4+t/pi on [pi,3pi], e^{-it} on [3pi,4pi], -3+t/pi on [4pi,6pi]";
        d.path = three_exp_path();
        d.seed.initial_unit = i;
        if (comp == "J_path") d.directives = {{0, Directive::flip}, {1, Directive::flip}};
        else d.directives = {{0, Directive::bounce}, {1, Directive::bounce}};
        d.expected.tame = false;
        d.expected.companion_exists = true;
        d.expected.twisted = false;
        d.expected.liftable = true;
        d.expected.winding = comp == "J_path" ? 1 : 0;
        d.expected.facts = {{"winding", comp == "J_path" ? "1" : "0", "reference"},
                            {"c_homotopic(constant_i, J_path)", "false", "reference"}};
        d.notes = "interval 0 is [pi,3pi] (negative), interval 1 is the wrap interval [4pi,6pi] u {0} (positive)";
    } else if (family == "gamma1m_gamma2" && args.size() <= 1) {
        const int m = args.empty() ? 3 : parse_int(args[0]);
        d.name = "gamma1m_gamma2(" + std::to_string(m) + ")";
        d.description = "m copies of the unit circle from -1 in C_i, then cos t + i sin t + j(cos t + 1) on [-pi, pi]";
        d.path = gamma1m_gamma2_path(m);
        d.seed.initial_unit = i;
        d.expected.tame = true;
        d.expected.companion_exists = true;
        d.expected.twisted = true;
        d.expected.liftable = true;
        std::string changes;
        for (int c = 1; c <= m; ++c) changes += (c > 1 ? "," : "") + std::to_string(m - 2 * (c - 1));
        d.expected.facts = {{"branch_change_report(copies)", changes, "reference"}};
        d.notes = "copy c occupies [2pi(c-1), 2pi c]; basepoint shift 2pi(c-1) starts the loop at -1 on copy c";
    } else if (family == "meridians" && args.empty()) {
        d.name = "meridians";
        d.description = "cos t + i(sin t - t/10) on [0,pi]; cos(2pi-t) - i(2pi-t)/10 + j sin(2pi-t) on [pi,2pi]";
        d.path = meridians_path();
        d.seed.initial_unit = i;
        d.expected.tame = false;
        d.expected.companion_exists = false;
        d.expected.liftable = true;
        d.expected.closed_sense_liftable = false;
        d.expected.facts = {{"closed_sense_lift", "none", "reference"}, {"open_lift[0,2pi]", "ok", "reference"}};
    } else if (family == "slice_circle" && args.size() <= 3) {
        const Hyper unit = args.size() >= 1 ? parse_unit(args[0]) : i;
        const double r = args.size() >= 2 ? parse_double(args[1]) : 1.0;
        const int turns = args.size() >= 3 ? parse_int(args[2]) : 1;
        std::ostringstream nm;
        nm.precision(17);
        nm << "slice_circle(" << (args.size() >= 1 ? args[0] : std::string("i")) << "," << r << "," << turns << ")";
        d.name = nm.str();
        d.description = "circle of radius r in one slice, traversed `turns` times from r";
        d.path = slice_circle_path(unit, r, turns);
        d.seed.initial_unit = unit;
        d.expected.tame = true;
        d.expected.companion_exists = true;
        d.expected.twisted = false;
        d.expected.liftable = true;
        d.expected.winding = turns;
        d.expected.facts = {{"winding", std::to_string(turns), "trivial"}};
    } else {
        throw Error(Errc::UnknownDemo, "unknown demo '" + name + "'");
    }
    return d;
}

}  // namespace hyperlog
