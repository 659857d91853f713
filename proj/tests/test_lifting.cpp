#include <cmath>
#include <numbers>

#include "doctest.h"
#include "hyperlog/corpus.hpp"
#include "hyperlog/lifting.hpp"

using namespace hyperlog;

namespace {

constexpr double pi = std::numbers::pi;
const Hyper I = Hyper::basis(1);
const Hyper J = Hyper::basis(2);

ImaginaryUnit U(const Hyper& h) { return ImaginaryUnit::from(h); }

Hyper real(double x) { return Hyper::real(x); }

// Loop through +1 with a semi-tame joint and no crossings: 1 -> i in C_i, i -> j, j -> 1 in C_j.
PathSpec quiet_semi_tame_loop() {
    return make_path(Dim::quaternion,
                     {arc_segment(0, 1, I, 0, 1, 0, pi / 2), line_segment(1, 2, I, J),
                      arc_segment(2, 3, J, 0, 1, pi / 2, 0)},
                     true);
}

// Semi-tame joint at +1 and one positive flip at 2 (circle of radius 1/2 about 3/2).
PathSpec positive_flip_loop() {
    const Hyper top_i = real(1.5) + I * 0.5, top_j = real(1.5) + J * 0.5;
    return make_path(Dim::quaternion,
                     {arc_segment(0, 3, I, 1.5, 0.5, pi, 2.5 * pi), line_segment(3, 4, top_i, top_j),
                      arc_segment(4, 5, J, 1.5, 0.5, pi / 2, pi)},
                     true);
}

// Semi-tame joint at +1 and one negative flip at -1.
PathSpec negative_flip_loop() {
    return make_path(Dim::quaternion,
                     {arc_segment(0, 3, I, 0, 1, 0, 1.5 * pi), line_segment(3, 4, -I, -J),
                      arc_segment(4, 5, J, 0, 1, -pi / 2, 0)},
                     true);
}

}  // namespace

TEST_CASE("branch bookkeeping at real values") {
    CHECK(arrival_angle(0, -1) == doctest::Approx(pi));
    CHECK(arrival_angle(1, -1) == doctest::Approx(pi));
    CHECK(arrival_angle(2, -1) == doctest::Approx(3 * pi));
    CHECK(arrival_angle(-1, -1) == doctest::Approx(-pi));
    CHECK(arrival_angle(0, 1) == 0.0);
    CHECK(arrival_angle(-1, 1) == 0.0);
    CHECK(arrival_angle(1, 1) == doctest::Approx(2 * pi));
    CHECK(arrival_angle(2, 1) == doctest::Approx(2 * pi));
    CHECK(flip_branch(0, -1) == 1);
    CHECK(flip_branch(1, -1) == 0);
    CHECK(flip_branch(0, 1) == -1);
    CHECK(flip_branch(1, 1) == 2);
    // Branches on either side of the arrival angle share it as an endpoint of their ranges.
    for (long k = -4; k <= 4; ++k)
        for (int s : {-1, 1}) {
            const long k2 = flip_branch(k, s);
            CHECK(arrival_angle(k2, s) == doctest::Approx(arrival_angle(k, s)));
            CHECK(flip_branch(k2, s) == k);
        }
    CHECK(terminal_branch(0, 2) == 2);
    CHECK(terminal_branch(1, 2) == -1);
}

TEST_CASE("circle in a slice lifts to t i") {
    const PathSpec c = slice_circle_path(I, 1.0, 1);
    const LiftResult r = lift_path(c, 0, U(I));
    REQUIRE(r.ok);
    const LogLift& lift = *r.lift;
    for (const auto& s : lift.samples) CHECK(distance(s.value, I * s.t) < 1e-9);
    CHECK(distance(lift.samples.back().value, I * (2 * pi)) < 1e-12);
    CHECK(lift.residual < 1e-12);
    CHECK(lift.final_branch == 1);
}

TEST_CASE("circle of radius 2 in C_j, three turns") {
    const PathSpec c = slice_circle_path(J, 2.0, 3);
    const LiftResult r = lift_path(c, 0, U(J));
    REQUIRE(r.ok);
    for (const auto& s : r.lift->samples) CHECK(distance(s.value, real(std::log(2.0)) + J * s.t) < 1e-9);
}

TEST_CASE("positive real path lifts to the real logarithm") {
    const PathSpec p = make_path(Dim::quaternion, {line_segment(0, 1, real(1), real(std::exp(1.0)))}, false);
    const LiftResult r = lift_path(p, 0);
    REQUIRE(r.ok);
    for (const auto& s : r.lift->samples) CHECK(distance(s.value, real(std::log(1 + s.t * (std::exp(1.0) - 1)))) < 1e-12);

    // Other branches need a unit and add a constant imaginary part.
    CHECK_THROWS_AS(lift_path(p, 2), Error);
    const LiftResult r2 = lift_path(p, 2, U(I));
    REQUIRE(r2.ok);
    CHECK(distance(r2.lift->samples.back().value, real(1) + I * (2 * pi)) < 1e-12);
}

TEST_CASE("constant path at i") {
    const PathSpec p = make_path(Dim::quaternion, {line_segment(0, 1, I, I)}, false);
    const LiftResult r0 = lift_path(p, 0);
    REQUIRE(r0.ok);
    CHECK(distance(r0.lift->samples.front().value, I * (pi / 2)) < 1e-14);
    const LiftResult r1 = lift_path(p, 1);
    REQUIRE(r1.ok);
    CHECK(distance(r1.lift->samples.front().value, -I * (1.5 * pi)) < 1e-14);
    CHECK(r1.lift->residual < 1e-14);
}

TEST_CASE("sigma arc fails at its semi-tame crossing") {
    const LiftResult r = lift_path(sigma_arc_path(), 0);
    CHECK_FALSE(r.ok);
    CHECK(r.fail_t == doctest::Approx(pi).epsilon(1e-9));
    CHECK(r.fail_kind == "semi_tame");
    CHECK(r.message.find("semi-tame") != std::string::npos);
    CHECK_THROWS_AS(continuation_log(r), Error);
}

TEST_CASE("reflected sigma arc lifts") {
    const PathSpec p = reflect_negconj(sigma_arc_path());
    const LiftResult r = lift_path(p, 0);
    REQUIRE(r.ok);
    CHECK(r.lift->residual <= 1e-8);
    CHECK(r.lift->max_jump < 0.2);
}

TEST_CASE("rocket: negative version fails at 0, positive version lifts") {
    const LiftResult neg = lift_path(rocket_path(), 0, U(I));
    CHECK_FALSE(neg.ok);
    CHECK(neg.fail_t == 0.0);
    CHECK(neg.fail_kind == "not_tame");

    const LiftResult pos = lift_path(reflect_negconj(rocket_path()), 0);
    REQUIRE(pos.ok);
    CHECK(pos.lift->residual <= 1e-8);
}

TEST_CASE("terminal branch follows the flip signature") {
    // Arc in C_i from i through -1, +1, -1, +1 and back to i (two turns), then through slice j.
    const PathSpec p = make_path(Dim::quaternion,
                                 {arc_segment(0, 4 * pi, I, 0, 1, pi / 2, 4.5 * pi),
                                  line_segment(4 * pi, 4 * pi + 1, I, J),
                                  arc_segment(4 * pi + 1, 5 * pi + 1, J, 0, 1, pi / 2, -pi / 2)},
                                 false);
    const Analysis an = analyze(p);
    std::vector<int> signs;
    for (const auto& f : flip_events(an.report)) signs.push_back(f.sign);
    REQUIRE(signs.size() == 5);
    const int sigma = alternating_sum(signs);
    for (long k0 = -2; k0 <= 2; ++k0) {
        const LiftResult r = lift_path(an, k0);
        REQUIRE(r.ok);
        CHECK(r.lift->final_branch == terminal_branch(k0, sigma));
        CHECK(r.lift->branch_trace.back().k == r.lift->final_branch);
        CHECK(r.lift->residual < 1e-9);
        // On high branches the unit turns under a large argument, so steps are long but stay below π.
        CHECK(r.lift->max_jump < pi);
    }
}

TEST_CASE("tampered lifts are detected") {
    const PathSpec c = slice_circle_path(I, 1.0, 1);
    const LiftResult r = lift_path(c, 0, U(I));
    REQUIRE(r.ok);
    LogLift bad = *r.lift;
    auto& mid = bad.samples[bad.size() / 3];
    mid.value = real(mid.value.re()) - mid.value.im();  // conjugated unit: wrong point
    CHECK(verify_lift(c, bad) > 1e-3);

    LogLift shifted = *r.lift;
    auto& m2 = shifted.samples[shifted.size() / 3];
    m2.value = m2.value + I * (2 * pi);  // same exponential, off the continuous lift
    CHECK(verify_lift(c, shifted) < 1e-9);
    CHECK(max_consecutive_jump(shifted) > pi);
    CHECK(max_consecutive_jump(*r.lift) < 0.2);
}

TEST_CASE("closed-sense lift") {
    const ClosedLiftReport circle = closed_lift(slice_circle_path(I, 1.0, 1), 0, U(I));
    CHECK(circle.liftable_unrolled);
    CHECK(circle.periodic);

    const ClosedLiftReport mer = closed_lift(meridians_path(), 0, U(I));
    CHECK_FALSE(mer.liftable_unrolled);
    // The loop itself still lifts as an open path.
    CHECK(lift_path(meridians_path(), 0, U(I)).ok);
}

TEST_CASE("loops with non-tame positive joints") {
    {
        const PathSpec p = quiet_semi_tame_loop();
        const Analysis an = analyze(p);
        const auto chk = closed_nontame_check(p, an.report);
        CHECK(chk.liftable);
        CHECK(chk.direct_lift_ok);
        CHECK(chk.segment_signatures == std::vector<int>{0});
    }
    {
        const PathSpec p = positive_flip_loop();
        const Analysis an = analyze(p);
        const auto chk = closed_nontame_check(p, an.report);
        CHECK(chk.liftable);
        CHECK(chk.direct_lift_ok);
        CHECK(chk.segment_signatures == std::vector<int>{-1});
    }
    {
        const PathSpec p = negative_flip_loop();
        const Analysis an = analyze(p);
        const auto chk = closed_nontame_check(p, an.report);
        CHECK_FALSE(chk.liftable);
        CHECK_FALSE(chk.direct_lift_ok);
        CHECK(chk.segment_signatures == std::vector<int>{1});
    }
    {
        const PathSpec p = meridians_path();
        const Analysis an = analyze(p);
        const auto chk = closed_nontame_check(p, an.report);
        CHECK_FALSE(chk.liftable);
        CHECK_FALSE(chk.direct_lift_ok);
    }
    // Hypotheses: a positive non-tame parameter must exist, and none may be negative.
    const PathSpec circle = slice_circle_path(I, 1.0, 1);
    CHECK_THROWS_AS(closed_nontame_check(circle, analyze(circle).report), Error);
    const PathSpec rocket = rocket_path();
    CHECK_THROWS_AS(closed_nontame_check(rocket, analyze(rocket).report), Error);
}
