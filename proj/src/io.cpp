#include "hyperlog/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace hyperlog::io {

namespace {

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

json range(double lo, double hi) { return json::array({lo, hi}); }

json opt_unit(const std::optional<ImaginaryUnit>& u) { return u ? to_json(u->value()) : json(nullptr); }

const char* fn_name(Term::Fn f) {
    switch (f) {
        case Term::Fn::one: return "one";
        case Term::Fn::cos: return "cos";
        case Term::Fn::sin: return "sin";
    }
    return "one";
}

json terms_to_json(const std::vector<Term>& terms) {
    json out = json::array();
    for (const auto& t : terms) out.push_back({{"c", t.c}, {"p", t.p}, {"fn", fn_name(t.f)}, {"w", t.w}, {"phi", t.phi}});
    return out;
}

std::vector<Term> terms_from_json(const json& j) {
    std::vector<Term> out;
    for (const auto& e : j) {
        Term t;
        t.c = e.value("c", 1.0);
        t.p = e.value("p", 0);
        const std::string f = e.value("fn", std::string("one"));
        if (f == "one") t.f = Term::Fn::one;
        else if (f == "cos") t.f = Term::Fn::cos;
        else if (f == "sin") t.f = Term::Fn::sin;
        else throw Error(Errc::BadInput, "unknown term function '" + f + "'");
        t.w = e.value("w", 0.0);
        t.phi = e.value("phi", 0.0);
        if (t.p < 0) throw Error(Errc::BadInput, "negative power in term");
        out.push_back(t);
    }
    return out;
}

struct ShapeWriter {
    json& j;
    void operator()(const SliceArc& a) const {
        j["unit"] = to_json(a.unit);
        j["center"] = a.center;
        j["radius"] = a.radius;
    }
    void operator()(const Line& l) const {
        j["p0"] = to_json(l.p0);
        j["p1"] = to_json(l.p1);
    }
    void operator()(const SliceCurve& c) const {
        j["unit_start"] = to_json(c.unit_start);
        j["unit_end"] = to_json(c.unit_end);
        j["u"] = range(c.u0, c.u1);
        j["x"] = terms_to_json(c.x);
        j["y"] = terms_to_json(c.y);
    }
    void operator()(const Components& c) const {
        json coeffs = json::array();
        for (const auto& terms : c.coeffs) coeffs.push_back(terms_to_json(terms));
        j["coeffs"] = coeffs;
    }
    void operator()(const Samples& s) const {
        j["table_s"] = s.s;
        json vals = json::array();
        for (const auto& v : s.values) vals.push_back(to_json(v));
        j["values"] = vals;
    }
    void operator()(const Rocket&) const {}
};

SegmentShape shape_from_json(const std::string& kind, const json& j, Dim dim) {
    if (kind == "slice_arc") return SliceArc{hyper_from_json(j.at("unit"), dim), j.at("center").get<double>(), j.at("radius").get<double>()};
    if (kind == "line") return Line{hyper_from_json(j.at("p0"), dim), hyper_from_json(j.at("p1"), dim)};
    if (kind == "slice_curve") {
        SliceCurve c;
        c.unit_start = hyper_from_json(j.at("unit_start"), dim);
        c.unit_end = hyper_from_json(j.at("unit_end"), dim);
        c.u0 = j.at("u").at(0).get<double>();
        c.u1 = j.at("u").at(1).get<double>();
        c.x = terms_from_json(j.at("x"));
        c.y = terms_from_json(j.at("y"));
        return c;
    }
    if (kind == "components") {
        Components c;
        for (const auto& terms : j.at("coeffs")) c.coeffs.push_back(terms_from_json(terms));
        if (c.coeffs.size() != size_of(dim)) throw Error(Errc::BadInput, "components segment needs one term list per coefficient");
        return c;
    }
    if (kind == "samples") {
        Samples s;
        s.s = j.at("table_s").get<std::vector<double>>();
        for (const auto& v : j.at("values")) s.values.push_back(hyper_from_json(v, dim));
        if (s.s.size() != s.values.size() || s.s.size() < 2) throw Error(Errc::BadInput, "sample table needs matching s and values (at least two)");
        return s;
    }
    if (kind == "rocket") return Rocket{};
    throw Error(Errc::BadInput, "unknown segment kind '" + kind + "'");
}

}  // namespace

json to_json(const Hyper& q) {
    json out = json::array();
    for (double c : q.coeffs()) out.push_back(c);
    return out;
}

Hyper hyper_from_json(const json& j, Dim dim) {
    if (!j.is_array() || j.size() != size_of(dim))
        throw Error(Errc::BadInput, "expected an array of " + std::to_string(size_of(dim)) + " coefficients");
    std::vector<double> c;
    for (const auto& e : j) {
        if (!e.is_number()) throw Error(Errc::BadInput, "coefficient is not a number");
        c.push_back(e.get<double>());
    }
    return Hyper(dim, std::span<const double>(c));
}

json to_json(const PathSpec& path) {
    json j;
    j["dim"] = size_of(path.dim);
    j["domain"] = range(path.a, path.b);
    j["closed"] = path.closed;
    json segs = json::array();
    for (const auto& s : path.segments) {
        json e;
        e["kind"] = s.kind();
        e["t"] = range(s.t0, s.t1);
        e["s"] = range(s.s0, s.s1);
        e["negconj"] = s.negconj;
        std::visit(ShapeWriter{e}, s.shape);
        segs.push_back(e);
    }
    j["segments"] = segs;
    return j;
}

PathSpec path_from_json(const json& doc) {
    // A demo export wraps the path spec together with its metadata.
    const json& j = doc.contains("path") && doc["path"].is_object() ? doc["path"] : doc;
    try {
        PathSpec p;
        const int dim = j.value("dim", 4);
        if (dim != 4 && dim != 8) throw Error(Errc::BadInput, "dim must be 4 or 8");
        p.dim = dim == 4 ? Dim::quaternion : Dim::octonion;
        p.closed = j.value("closed", false);
        for (const auto& e : j.at("segments")) {
            Segment s;
            s.t0 = e.at("t").at(0).get<double>();
            s.t1 = e.at("t").at(1).get<double>();
            s.s0 = e.at("s").at(0).get<double>();
            s.s1 = e.at("s").at(1).get<double>();
            s.negconj = e.value("negconj", false);
            s.shape = shape_from_json(e.at("kind").get<std::string>(), e, p.dim);
            p.segments.push_back(std::move(s));
        }
        if (p.segments.empty()) throw Error(Errc::BadInput, "path has no segments");
        p.a = p.segments.front().t0;
        p.b = p.segments.back().t1;
        if (j.contains("domain")) {
            const double a = j["domain"].at(0).get<double>(), b = j["domain"].at(1).get<double>();
            if (a != p.a || b != p.b) throw Error(Errc::BadInput, "domain does not match the segment ranges");
        }
        validate(p);
        return p;
    } catch (const json::exception& e) {
        throw Error(Errc::BadInput, std::string("malformed path spec: ") + e.what());
    }
}

PathSpec load_path(const std::string& file) {
    std::ifstream in(file);
    if (!in) throw Error(Errc::BadInput, "cannot open '" + file + "'");
    try {
        return path_from_json(json::parse(in));
    } catch (const json::exception& e) {
        throw Error(Errc::BadInput, std::string("invalid JSON in '") + file + "': " + e.what());
    }
}

json to_json(const ObstructionReport& rep) {
    json j;
    j["domain"] = range(rep.a, rep.b);
    j["closed"] = rep.closed;
    j["tame"] = rep.tame;
    json pts = json::array();
    for (const auto& p : rep.points)
        pts.push_back({{"t", p.t},
                       {"sign", p.value_sign},
                       {"kind", to_string(p.kind)},
                       {"left_dir", opt_unit(p.left_dir)},
                       {"right_dir", opt_unit(p.right_dir)},
                       {"wrap", p.wrap}});
    j["points"] = pts;
    json ivs = json::array();
    for (std::size_t n = 0; n < rep.intervals.size(); ++n) {
        const auto& iv = rep.intervals[n];
        ivs.push_back({{"index", n},
                       {"range", range(iv.lo, iv.hi)},
                       {"sign", iv.sign},
                       {"kind", to_string(iv.kind)},
                       {"directive", to_string(iv.directive)},
                       {"non_unique", iv.non_unique},
                       {"wrap", iv.wrap},
                       {"left_dir", opt_unit(iv.left_dir)},
                       {"right_dir", opt_unit(iv.right_dir)}});
    }
    j["intervals"] = ivs;
    json arcs = json::array();
    for (const auto& a : rep.big_arcs)
        arcs.push_back({{"range", range(a.s, a.e)}, {"signs", json::array({a.sign_s, a.sign_e})}, {"wrap", a.wrap}});
    j["big_arcs"] = arcs;
    json unres = json::array();
    for (const auto& b : rep.unresolved) unres.push_back(range(b.lo, b.hi));
    j["unresolved"] = unres;
    return j;
}

json to_json(const LiftResult& lr) {
    json j;
    j["ok"] = lr.ok;
    if (!lr.ok || !lr.lift) {
        j["fail_t"] = lr.fail_t;
        j["fail_kind"] = lr.fail_kind;
        j["message"] = lr.message;
        return j;
    }
    const LogLift& l = *lr.lift;
    j["initial_branch"] = l.initial_branch;
    j["final_branch"] = l.final_branch;
    j["residual"] = l.residual;
    j["max_jump"] = l.max_jump;
    j["samples"] = l.size();
    json trace = json::array();
    for (const auto& p : l.branch_trace) trace.push_back({{"range", range(p.lo, p.hi)}, {"k", p.k}});
    j["branch_trace"] = trace;
    j["start_value"] = to_json(l.samples.front().value);
    j["end_value"] = to_json(l.samples.back().value);
    return j;
}

json to_json(const WindingResult& wr) {
    json j;
    j["twisted"] = wr.twisted;
    j["signature"] = wr.signature;
    j["circular_signature"] = wr.circular_signature ? json(*wr.circular_signature) : json(nullptr);
    j["winding"] = wr.winding ? json(*wr.winding) : json(nullptr);
    j["shadow_winding"] = wr.twisted ? json(nullptr) : json(wr.shadow_winding);
    j["signature_winding"] = wr.signature_winding ? json(*wr.signature_winding) : json(nullptr);
    j["disagreement"] = wr.disagreement;
    json flips = json::array();
    for (const auto& f : wr.flips)
        flips.push_back({{"at", f.is_interval ? range(f.lo, f.hi) : json(f.lo)}, {"sign", f.sign}, {"wrap", f.wrap}});
    j["flips"] = flips;
    json prov = json::object();
    for (const auto& [n, d] : wr.provenance) prov[std::to_string(n)] = to_string(d);
    j["provenance"] = prov;
    return j;
}

json to_json(const Companion& c) {
    json j;
    j["exists"] = c.exists;
    j["unique"] = c.unique;
    j["reason"] = c.reason;
    json samples = json::array();
    for (std::size_t n = 0; n < c.size(); ++n)
        samples.push_back({{"t", c.t[n]}, {"unit", to_json(c.units[n].representative().value())}});
    j["samples"] = samples;
    return j;
}

json to_json(const DemoCase& d) {
    json j;
    j["name"] = d.name;
    j["description"] = d.description;
    j["path"] = to_json(d.path);
    json dirs = json::object();
    for (const auto& [n, dir] : d.directives) dirs[std::to_string(n)] = to_string(dir);
    j["directives"] = dirs;
    j["seed"] = {{"k0", d.seed.k0}, {"initial_unit", d.seed.initial_unit ? to_json(*d.seed.initial_unit) : json(nullptr)}};
    json e = json::object();
    const Expected& x = d.expected;
    if (x.tame) e["tame"] = *x.tame;
    if (x.companion_exists) e["companion_exists"] = *x.companion_exists;
    if (x.twisted) e["twisted"] = *x.twisted;
    if (x.liftable) e["liftable"] = *x.liftable;
    if (x.fail_at) e["fail_at"] = *x.fail_at;
    if (x.fail_kind) e["fail_kind"] = to_string(*x.fail_kind);
    if (x.winding) e["winding"] = *x.winding;
    if (x.closed_sense_liftable) e["closed_sense_liftable"] = *x.closed_sense_liftable;
    json facts = json::array();
    for (const auto& f : x.facts) facts.push_back({{"key", f.key}, {"value", f.value}, {"provenance", f.provenance}});
    e["facts"] = facts;
    j["expected"] = e;
    j["notes"] = d.notes;
    return j;
}

void write_samples_csv(std::ostream& os, const SampledPath& sp) {
    const std::size_t dim = sp.values.empty() ? 4 : sp.values.front().size();
    os << "t,re";
    for (std::size_t c = 1; c < dim; ++c) os << ",im" << c;
    os << '\n';
    for (std::size_t n = 0; n < sp.size(); ++n) {
        os << num(sp.t[n]);
        for (double c : sp.values[n].coeffs()) os << ',' << num(c);
        os << '\n';
    }
}

void write_lift_csv(std::ostream& os, const LogLift& lift) {
    const std::size_t dim = lift.samples.empty() ? 4 : lift.samples.front().value.size();
    os << "t";
    for (std::size_t c = 0; c < dim; ++c) os << ",c" << c;
    os << ",k\n";
    for (const auto& s : lift.samples) {
        os << num(s.t);
        for (double c : s.value.coeffs()) os << ',' << num(c);
        os << ',' << s.k << '\n';
    }
}

void write_shadow_csv(std::ostream& os, const Shadow& s) {
    os << "t,x,y\n";
    for (std::size_t n = 0; n < s.size(); ++n) os << num(s.t[n]) << ',' << num(s.x[n]) << ',' << num(s.y[n]) << '\n';
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace hyperlog::io
