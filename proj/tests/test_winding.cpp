#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "hyperlog/corpus.hpp"
#include "hyperlog/winding.hpp"

using namespace hyperlog;

namespace {

constexpr double pi = std::numbers::pi;
const Hyper I = Hyper::basis(1);

// Cancel adjacent equal signs until the sequence alternates; an alternating sequence
// starting with s and of length m has alternating sum -s m.
int cancellation_signature(const std::vector<int>& signs) {
    std::vector<int> stack;
    for (int s : signs) {
        if (!stack.empty() && stack.back() == s) stack.pop_back();
        else stack.push_back(s);
    }
    return stack.empty() ? 0 : -stack.front() * static_cast<int>(stack.size());
}

Shadow plane_curve(int n, double ax, double by, bool conj = false) {
    Shadow s;
    for (int k = 0; k <= n; ++k) {
        const double t = 2 * pi * k / n;
        s.t.push_back(t);
        s.x.push_back(ax * std::cos(t));
        s.y.push_back((conj ? -1 : 1) * by * std::sin(t));
    }
    return s;
}

}  // namespace

TEST_CASE("signature formula") {
    CHECK(alternating_sum({}) == 0);
    CHECK(alternating_sum({-1, 1}) == 2);
    CHECK(alternating_sum({1, 1}) == 0);
    CHECK(alternating_sum({1}) == -1);
}

TEST_CASE("alternating sum agrees with pair cancellation") {
    std::mt19937 rng(20240611);
    std::uniform_int_distribution<int> len(0, 40), bit(0, 1);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<int> signs(static_cast<std::size_t>(len(rng)));
        for (int& s : signs) s = bit(rng) ? 1 : -1;
        CHECK(alternating_sum(signs) == cancellation_signature(signs));
    }
}

TEST_CASE("shadow winding oracle on plane curves") {
    CHECK(shadow_winding_oracle(plane_curve(64, 1, 1)) == 1);
    CHECK(shadow_winding_oracle(plane_curve(64, 1, 1, true)) == -1);
    CHECK(shadow_winding_oracle(plane_curve(64, 2, 1)) == 1);
    CHECK(shadow_winding_oracle(plane_curve(64, 2, 1).conjugated()) == -1);
    CHECK_THROWS_AS(shadow_winding_oracle(plane_curve(2, 1, 1)), Error);
    Shadow open = plane_curve(64, 1, 1);
    open.x.back() = 2.0;
    CHECK_THROWS_AS(shadow_winding_oracle(open), Error);
}

TEST_CASE("slice circle: untwisted, winding 1, two flips") {
    const WindingResult wr = analyze_winding(slice_circle_path(I, 1.0, 1));
    CHECK_FALSE(wr.twisted);
    CHECK(winding_number(wr) == 1);
    CHECK(wr.shadow_winding == 1);
    CHECK(wr.flips.size() == 2);
    CHECK(wr.circular_signature == 2);
    CHECK(wr.signature_winding == 1);
    CHECK_FALSE(wr.disagreement);
    CHECK(shadow_winding_oracle(wr.shadow.conjugated()) == -wr.shadow_winding);

    const WindingResult neg = analyze_winding(slice_circle_path(I, 1.0, 1), {}, ImaginaryUnit::from(-I));
    CHECK(neg.shadow_winding == -1);
    CHECK(winding_number(neg) == 1);
}

TEST_CASE("loops missing the real axis are untwisted with winding 0") {
    const Hyper J = Hyper::basis(2);
    const Hyper p0 = Hyper::real(1) + I, p1 = Hyper::real(2) + J, p2 = Hyper::real(-1.5) + (I + J) * 2.0;
    const PathSpec p = make_path(Dim::quaternion,
                                 {line_segment(0, 1, p0, p1), line_segment(1, 2, p1, p2), line_segment(2, 3, p2, p0)},
                                 true);
    const WindingResult wr = analyze_winding(p);
    CHECK_FALSE(wr.twisted);
    CHECK(winding_number(wr) == 0);
    CHECK(wr.circular_signature == 0);
    CHECK(wr.flips.empty());
}

TEST_CASE("three-exp composite: windings 0 and 1, not c-homotopic") {
    const DemoCase ci = demo("three_exp_composite(constant_i)");
    const DemoCase jp = demo("three_exp_composite(J_path)");
    const WindingResult a = analyze_winding(ci.path, ci.directives);
    const WindingResult b = analyze_winding(jp.path, jp.directives);
    CHECK_FALSE(a.twisted);
    CHECK_FALSE(b.twisted);
    CHECK(winding_number(a) == 0);
    CHECK(winding_number(b) == 1);
    CHECK(b.circular_signature == 2);
    CHECK(a.provenance.at(0) == Directive::bounce);
    CHECK(b.provenance.at(1) == Directive::flip);
    CHECK_FALSE(c_homotopy_equivalent(a, b));

    // With the constant companion the path is its own shadow.
    for (std::size_t n = 0; n < a.shadow.size(); ++n) {
        const Hyper v = ci.path.evaluate(a.shadow.t[n]);
        CHECK(a.shadow.x[n] == doctest::Approx(v.re()).epsilon(1e-12));
        CHECK(a.shadow.y[n] == doctest::Approx(v[1]).epsilon(1e-12));
    }
}

TEST_CASE("c-homotopy decisions on slice circles") {
    const PathSpec c1 = slice_circle_path(I, 1.0, 1);
    const WindingResult w1 = analyze_winding(c1);
    CHECK(c_homotopy_equivalent(w1, analyze_winding(reparameterize(c1, 0.0, 1.0))));
    CHECK_FALSE(c_homotopy_equivalent(w1, analyze_winding(slice_circle_path(I, 1.0, 2))));
    CHECK_THROWS_AS(c_homotopy_equivalent(w1, analyze_winding(slice_circle_path(I, 2.0, 1))), Error);
}

TEST_CASE("lambda loop is twisted and its argument change depends on the basepoint") {
    for (const char* name : {"lambda_loop(plus_one)", "lambda_loop(minus_one)"}) {
        const DemoCase d = demo(name);
        const WindingResult wr = analyze_winding(d.path, d.directives);
        CHECK(wr.twisted);
        CHECK_FALSE(wr.winding);
        CHECK(wr.flips.size() % 2 == 1);
        CHECK(*wr.circular_signature % 2 != 0);
        CHECK_THROWS_AS(winding_number(wr), Error);
    }
    const PathSpec plus = demo("lambda_loop(plus_one)").path, minus = demo("lambda_loop(minus_one)").path;
    CHECK(branch_change_report(plus, plus.a) == 1);
    CHECK(branch_change_report(minus, minus.a) == 0);
}

TEST_CASE("gamma1^3 gamma2: twisted, argument change 3, 1, -1 by copy") {
    const PathSpec p = gamma1m_gamma2_path(3);
    const WindingResult wr = analyze_winding(p);
    CHECK(wr.twisted);
    CHECK(wr.flips.size() == 7);
    CHECK(branch_change_report(p, 0.0) == 3);
    CHECK(branch_change_report(p, 2 * pi) == 1);
    CHECK(branch_change_report(p, 4 * pi) == -1);
}

TEST_CASE("all-real loops have no twist to decide") {
    const PathSpec p = make_path(Dim::quaternion,
                                 {line_segment(0, 1, Hyper::real(1), Hyper::real(2)),
                                  line_segment(1, 2, Hyper::real(2), Hyper::real(1))},
                                 true);
    const Analysis an = analyze(p);
    const Companion c = build_companion(an.samples, an.report);
    CHECK_THROWS_AS(is_twisted(c, an.samples), Error);
}

TEST_CASE("random single-slice circles") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> coef(-1.0, 1.0), center(-2.0, 2.0), radius(0.3, 2.0), phase(0.0, 2 * pi);
    std::uniform_int_distribution<int> turns(1, 2);
    int done = 0;
    while (done < 50) {
        const double c = center(rng), r = radius(rng);
        if (std::abs(std::abs(c) - r) < 0.1) continue;
        Hyper u(Dim::quaternion, {0.0, coef(rng), coef(rng), coef(rng)});
        if (u.norm() < 0.1) continue;
        u = u / u.norm();
        const int m = turns(rng);
        const double phi = phase(rng);
        const PathSpec p = make_path(Dim::quaternion, {arc_segment(0, 2 * pi * m, u, c, r, phi, phi + 2 * pi * m)}, true);
        const WindingResult wr = analyze_winding(p);
        CHECK_FALSE(wr.twisted);
        CHECK(wr.flips.size() % 2 == 0);
        // Untwisted: the shadow closes up.
        CHECK(std::abs(wr.shadow.y.front() - wr.shadow.y.back()) < 1e-9);
        const long expected = std::abs(c) < r ? m : 0;
        CHECK(winding_number(wr) == expected);
        CHECK(std::abs(wr.shadow_winding) == expected);
        CHECK_FALSE(wr.disagreement);
        ++done;
    }
}
