// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if any criterion fails.
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "hyperlog/corpus.hpp"
#include "hyperlog/io.hpp"
#include "hyperlog/winding.hpp"

#ifndef HYPERLOG_CLI
#error "HYPERLOG_CLI must name the command-line tool"
#endif

using namespace hyperlog;

namespace {

constexpr double pi = std::numbers::pi;

struct Check {
    bool ok = true;
    std::ostringstream why;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            why << what;
        }
    }
};

int failures = 0;

void criterion(int n, const std::string& title, const std::function<void(Check&)>& body) {
    Check c;
    try {
        body(c);
    } catch (const std::exception& e) {
        c.require(false, std::string("exception: ") + e.what());
    }
    std::cout << (c.ok ? "PASS" : "FAIL") << "  [" << n << "] " << title;
    if (!c.ok) {
        std::cout << " -- " << c.why.str();
        ++failures;
    }
    std::cout << std::endl;
}

Hyper random_hyper(std::mt19937_64& rng, Dim dim, double scale) {
    std::normal_distribution<double> g(0.0, scale);
    Hyper q(dim);
    for (std::size_t c = 0; c < q.size(); ++c) q[c] = g(rng);
    return q;
}

double rel(const Hyper& x, const Hyper& y) { return distance(x, y) / std::max(1.0, y.norm()); }

// Closed demos whose companion exists.
std::vector<DemoCase> companion_loops() {
    std::vector<DemoCase> out;
    for (const auto& n : demo_names()) {
        DemoCase d = demo(n);
        if (d.path.closed && d.expected.companion_exists.value_or(false)) out.push_back(d);
    }
    return out;
}

// Start the loop at its sample farthest from the real axis (smallest parameter on ties).
PathSpec rotate_off_axis(const PathSpec& loop, const std::map<std::size_t, Directive>& dirs) {
    const Analysis an = analyze(loop, dirs);
    std::size_t best = 0;
    for (std::size_t n = 1; n + 1 < an.samples.size(); ++n)
        if (an.samples.values[n].im_norm() > an.samples.values[best].im_norm()) best = n;
    return best == 0 ? loop : rotate(loop, an.samples.t[best]);
}

// Interval directives are indexed by position; keep the kinds when the basepoint moves.
std::map<std::size_t, Directive> carry_directives(const PathSpec& from, const std::map<std::size_t, Directive>& dirs,
                                                  const PathSpec& to) {
    if (dirs.empty()) return {};
    const Analysis a = analyze(from, dirs), b = analyze(to);
    std::map<std::size_t, Directive> out;
    const double len = from.length();
    for (std::size_t n = 0; n < b.report.intervals.size(); ++n) {
        const auto& iv = b.report.intervals[n];
        const double mid_to = iv.wrap ? iv.hi : 0.5 * (iv.lo + iv.hi);
        for (const auto& src : a.report.intervals) {
            auto inside = [&](double t) {
                t = from.a + std::fmod(std::fmod(t - from.a, len) + len, len);
                return src.wrap ? (t >= src.lo || t <= src.hi) : (t >= src.lo && t <= src.hi);
            };
            if (inside(mid_to)) out[n] = src.directive;
        }
    }
    return out;
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

int main() {
    criterion(1, "algebra round trips: exp(log q) = q, L(E(q)) = q, E(L(p)) = p", [](Check& c) {
        std::mt19937_64 rng(1);
        for (Dim dim : {Dim::quaternion, Dim::octonion}) {
            double worst_exp = 0, worst_le = 0, worst_el = 0;
            for (int n = 0; n < 10000; ++n) {
                Hyper q = random_hyper(rng, dim, 2.0);
                if (q.im_norm() < 1e-6 && q.re() <= 0) q[1] += 0.5;
                worst_exp = std::max(worst_exp, rel(exp_h(log_principal(q)), q));
                const Hyper w = random_hyper(rng, dim, 6.0);  // arguments well beyond the principal range
                worst_le = std::max(worst_le, rel(L_map(E_map(w)), w));
                const ManifoldPoint p = E_map(random_hyper(rng, dim, 6.0));
                const ManifoldPoint back = E_map(L_map(p));
                worst_el = std::max(worst_el, std::max(rel(back.q, p.q), rel(back.p, p.p)));
            }
            c.require(worst_exp <= 1e-9, "exp(log q) error " + std::to_string(worst_exp));
            c.require(worst_le <= 1e-9, "L(E(q)) error " + std::to_string(worst_le));
            c.require(worst_el <= 1e-9, "E(L(p)) error " + std::to_string(worst_el));
        }
    });

    criterion(2, "branch identities Arg_{2l+1} = Arg_{-(2l+2)}, exp(Arg_{2k}) = exp(Arg)", [](Check& c) {
        std::mt19937_64 rng(2);
        double worst_id = 0, worst_exp = 0;
        for (int n = 0; n < 1000; ++n) {
            const Hyper q = random_hyper(rng, Dim::quaternion, 1.5);
            if (q.im_norm() < 1e-9) continue;
            const Hyper principal = exp_h(Arg_branch(q, 0));
            for (long l = -3; l <= 3; ++l) {
                worst_id = std::max(worst_id, distance(Arg_branch(q, 2 * l + 1), Arg_branch(q, -(2 * l + 2))));
                worst_exp = std::max(worst_exp, distance(exp_h(Arg_branch(q, 2 * l)), principal));
            }
        }
        c.require(worst_id <= 1e-12, "odd/even identity error " + std::to_string(worst_id));
        c.require(worst_exp <= 1e-9, "even-branch exponential error " + std::to_string(worst_exp));
    });

    criterion(3, "sigma arc: semi-tame at pi, no lift; reflected arc lifts (residual <= 1e-8)", [](Check& c) {
        const PathSpec s = sigma_arc_path();
        const Analysis an = analyze(s);
        bool semi = false;
        for (const auto& p : an.report.points)
            if (std::abs(p.t - pi) < 1e-9 && p.kind == PointKind::semi_tame) semi = true;
        c.require(semi, "no semi-tame point at pi");
        const LiftResult r = lift_path(an, 0);
        c.require(!r.ok && std::abs(r.fail_t - pi) < 1e-9 && r.fail_kind == "semi_tame", "lift did not fail at pi");
        const LiftResult h = lift_path(reflect_negconj(s), 0);
        c.require(h.ok && h.lift->residual <= 1e-8, "reflected arc did not lift within 1e-8");
    });

    criterion(4, "rocket: not tame at 0, no lift; reflected rocket lifts (residual <= 1e-8)", [](Check& c) {
        const Analysis an = analyze(rocket_path());
        bool not_tame = false;
        for (const auto& p : an.report.points)
            if (p.t == 0.0 && p.kind == PointKind::not_tame) not_tame = true;
        c.require(not_tame, "no not-tame point at 0");
        const LiftResult r = lift_path(an, 0, ImaginaryUnit::from(Hyper::basis(1)));
        c.require(!r.ok && r.fail_t == 0.0 && r.fail_kind == "not_tame", "lift did not fail at 0");
        const LiftResult h = lift_path(reflect_negconj(rocket_path()), 0);
        c.require(h.ok && h.lift->residual <= 1e-8, "reflected rocket did not lift within 1e-8");
    });

    criterion(5, "3e^{it} composite: winding 0 (constant i) and 1 (J path), not c-homotopic", [](Check& c) {
        const DemoCase a = demo("three_exp_composite(constant_i)"), b = demo("three_exp_composite(J_path)");
        const WindingResult wa = analyze_winding(a.path, a.directives), wb = analyze_winding(b.path, b.directives);
        c.require(winding_number(wa) == 0, "constant companion winding " + std::to_string(winding_number(wa)));
        c.require(winding_number(wb) == 1, "J companion winding " + std::to_string(winding_number(wb)));
        c.require(!c_homotopy_equivalent(wa, wb), "reported c-homotopic");
    });

    criterion(6, "lambda loop: tame, twisted, TwistedLoop refusal, branch change 1 from +1 and 0 from -1", [](Check& c) {
        const DemoCase plus = demo("lambda_loop(plus_one)"), minus = demo("lambda_loop(minus_one)");
        const Analysis an = analyze(plus.path);
        c.require(an.report.tame, "not tame");
        const WindingResult wr = analyze_winding(plus.path);
        c.require(wr.twisted, "not twisted");
        bool refused = false;
        try {
            (void)winding_number(wr);
        } catch (const Error& e) {
            refused = e.code() == Errc::TwistedLoop;
        }
        c.require(refused, "winding_number did not refuse");
        const long bp = branch_change_report(plus.path, plus.path.a), bm = branch_change_report(minus.path, minus.path.a);
        c.require(bp == 1, "from +1: " + std::to_string(bp));
        c.require(bm == 0, "from -1: " + std::to_string(bm));
    });

    criterion(7, "gamma1^3 gamma2: branch change 3, 1, -1 from copies 1, 2, 3", [](Check& c) {
        const PathSpec p = gamma1m_gamma2_path(3);
        const std::array<long, 3> expect{3, 1, -1};
        for (int copy = 0; copy < 3; ++copy) {
            const long got = branch_change_report(p, 2 * pi * copy);
            c.require(got == expect[copy], "copy " + std::to_string(copy + 1) + ": " + std::to_string(got));
        }
    });

    criterion(8, "meridians: no closed-sense lift; open lift over [0, 2pi] (residual <= 1e-8)", [](Check& c) {
        const PathSpec m = meridians_path();
        const ImaginaryUnit i = ImaginaryUnit::from(Hyper::basis(1));
        const ClosedLiftReport cl = closed_lift(m, 0, i);
        c.require(!(cl.liftable_unrolled && cl.periodic), "closed-sense lift reported");
        const LiftResult open = lift_path(m, 0, i);
        c.require(open.ok && open.lift->residual <= 1e-8, "open lift failed");
    });

    criterion(9, "twistedness laws on random single-slice loops and corpus loops", [](Check& c) {
        struct LoopCase {
            std::string name;
            PathSpec path;
            std::map<std::size_t, Directive> dirs;
        };
        std::vector<LoopCase> loops;
        for (const auto& d : companion_loops()) loops.push_back({d.name, d.path, d.directives});
        std::mt19937 rng(9);
        std::uniform_real_distribution<double> coef(-1.0, 1.0), center(-2.0, 2.0), radius(0.3, 2.0), phase(0.0, 2 * pi);
        while (loops.size() < companion_loops().size() + 50) {
            const double cx = center(rng), r = radius(rng);
            Hyper u(Dim::quaternion, {0.0, coef(rng), coef(rng), coef(rng)});
            if (std::abs(std::abs(cx) - r) < 0.1 || u.norm() < 0.1) continue;
            u = u / u.norm();
            const double phi = phase(rng);
            loops.push_back({"random circle", make_path(Dim::quaternion, {arc_segment(0, 2 * pi, u, cx, r, phi, phi + 2 * pi)}, true), {}});
        }
        for (const auto& lc : loops) {
            const PathSpec rotated = rotate_off_axis(lc.path, lc.dirs);
            const auto dirs = carry_directives(lc.path, lc.dirs, rotated);
            const WindingResult wr = analyze_winding(rotated, dirs);
            const Shadow& s = wr.shadow;
            const Shadow sc = s.conjugated();
            auto closed = [](const Shadow& x) {
                return std::abs(x.x.front() - x.x.back()) < 1e-9 && std::abs(x.y.front() - x.y.back()) < 1e-9;
            };
            const bool conjugate_ends = std::abs(s.x.front() - s.x.back()) < 1e-9 &&
                                        std::abs(s.y.front() + s.y.back()) < 1e-9 && std::abs(s.y.front()) > 1e-9;
            c.require(!wr.twisted == (closed(s) && closed(sc)), lc.name + ": untwisted != shadows closed");
            c.require(wr.twisted == conjugate_ends, lc.name + ": twisted != conjugate endpoints");
            if (!wr.twisted)
                c.require(shadow_winding_oracle(sc) == -shadow_winding_oracle(s), lc.name + ": conjugate windings not opposite");
        }
        // Loops missing the real axis: triangles in the half-space where the i coefficient is positive.
        std::uniform_real_distribution<double> pos(0.2, 2.0);
        for (int n = 0; n < 20; ++n) {
            std::array<Hyper, 3> v;
            for (auto& p : v) p = Hyper(Dim::quaternion, {coef(rng) * 2, pos(rng), coef(rng), coef(rng)});
            const PathSpec tri = make_path(Dim::quaternion,
                                           {line_segment(0, 1, v[0], v[1]), line_segment(1, 2, v[1], v[2]),
                                            line_segment(2, 3, v[2], v[0])},
                                           true);
            const Analysis an = analyze(tri);
            c.require(an.report.empty() && an.report.tame, "triangle meets the real axis");
            c.require(!analyze_winding(tri).twisted, "triangle reported twisted");
        }
    });

    criterion(10, "signature machinery: terminal branches, cancellation, |sigma_c|/2 = shadow winding", [](Check& c) {
        for (const auto& n : demo_names()) {
            const DemoCase d = demo(n);
            if (!d.expected.tame.value_or(false)) continue;
            const PathSpec p = d.path.closed ? rotate_off_axis(d.path, d.directives) : d.path;
            const Analysis an = analyze(p);
            const int sigma = signature(an.report);
            for (long k0 = -2; k0 <= 2; ++k0) {
                const LiftResult r = lift_path(an, k0, d.seed.initial_unit ? std::optional(ImaginaryUnit::from(*d.seed.initial_unit)) : std::nullopt);
                c.require(r.ok, d.name + ": lift failed");
                if (r.ok)
                    c.require(r.lift->final_branch == terminal_branch(k0, sigma) &&
                                  r.lift->branch_trace.back().k == r.lift->final_branch,
                              d.name + ": terminal branch mismatch for k0=" + std::to_string(k0));
            }
        }
        std::mt19937 rng(10);
        std::uniform_int_distribution<int> len(0, 40), bit(0, 1);
        for (int trial = 0; trial < 1000; ++trial) {
            std::vector<int> s(static_cast<std::size_t>(len(rng)));
            for (int& x : s) x = bit(rng) ? 1 : -1;
            std::vector<int> stack;
            for (int x : s) {
                if (!stack.empty() && stack.back() == x) stack.pop_back();
                else stack.push_back(x);
            }
            const int reduced = stack.empty() ? 0 : -stack.front() * static_cast<int>(stack.size());
            c.require(alternating_sum(s) == reduced, "cancellation mismatch");
        }
        for (const auto& d : companion_loops()) {
            const Analysis an = analyze(d.path, d.directives);
            bool all_flips = true;
            for (const auto& p : an.report.points) all_flips = all_flips && p.kind == PointKind::flip;
            for (const auto& iv : an.report.intervals) all_flips = all_flips && iv.kind == IntervalKind::flip;
            if (!all_flips) continue;
            const WindingResult wr = analyze_winding(d.path, d.directives);
            if (wr.twisted || !wr.signature_winding) continue;
            c.require(*wr.signature_winding == std::abs(wr.shadow_winding), d.name + ": |sigma_c|/2 != shadow winding");
        }
    });

    criterion(11, "determinism: repeated CLI runs on every demo are byte-identical", [](Check& c) {
        namespace fs = std::filesystem;
        const fs::path dir = fs::temp_directory_path() / ("hyperlog_acceptance_" + std::to_string(::getpid()));
        fs::create_directories(dir);
        const std::string cli = HYPERLOG_CLI;
        int run = 0;
        auto capture = [&](const std::string& args) {
            const fs::path out = dir / ("run" + std::to_string(run++) + ".txt");
            const std::string cmd = "\"" + cli + "\" " + args + " > \"" + out.string() + "\" 2>&1";
            const int status = std::system(cmd.c_str());
            return std::to_string(status) + "\n" + read_file(out);
        };
        for (const auto& n : demo_names()) {
            const DemoCase d = demo(n);
            std::vector<std::string> cmds = {"analyze", "lift", "demo export"};
            if (d.path.closed && d.expected.companion_exists.value_or(false)) cmds.push_back("winding");
            for (const auto& cmd : cmds) {
                const std::string args = cmd == "demo export" ? cmd + " '" + n + "'" : cmd + " --demo '" + n + "'";
                c.require(capture(args) == capture(args), "differs: " + args);
            }
        }
        fs::remove_all(dir);
    });

    return failures == 0 ? 0 : 1;
}
