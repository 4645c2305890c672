#include "norlund/error.hpp"
#include "norlund/inequalities.hpp"
#include "support/families.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace norlund;
using testing_support::AlignedInstance;
using testing_support::symmetric_by_enumeration;

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();

double one(double) { return 1.0; }
double zero(double) { return 0.0; }
double id(double t) { return t; }
double inv_square(double t) { return 1.0 / (t * t); }
double half_pow(double t) { return std::exp2(-t); }

ErrorKind kind_of(auto&& call)
{
    try {
        call();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::InvalidArgument;
}

} // namespace

TEST_CASE("violation tolerance scales with the larger side")
{
    CHECK(violation_tolerance(0.0, 0.0) == 1e-9);
    CHECK(violation_tolerance(-50.0, 2.0) == 1e-9 * 50.0);
    CHECK(violation_tolerance(0.5, 3.0) == 1e-9 * 3.0);
}

TEST_CASE("Hölder examples")
{
    const auto r = holder_check(one, one, 0.0, 2.0, StepPair(1.0, 1.0), 2.0);
    CHECK(r.lhs == 2.0);
    CHECK(std::abs(r.rhs - 2.0) <= 4 * eps);
    CHECK(r.holds);
    REQUIRE(r.context.p);
    REQUIRE(r.context.q);
    CHECK(*r.context.q == 2.0);

    const auto z = holder_check(zero, half_pow, 0.0, 2.0, StepPair(1.0, 1.0), 3.0);
    CHECK(z.lhs == 0.0);
    CHECK(z.holds);

    const AlignedInstance inst{1.0, 5.0, 2.0, 2.0, 2, 2};
    const double p = 3.0;
    const double q = 1.5;
    const auto h = holder_check(inv_square, half_pow, 1.0, 5.0, StepPair(2.0, 2.0), p);
    const double lhs = symmetric_by_enumeration([](double t) { return std::abs(inv_square(t) * half_pow(t)); }, inst);
    const double A = symmetric_by_enumeration([&](double t) { return std::pow(inv_square(t), p); }, inst);
    const double B = symmetric_by_enumeration([&](double t) { return std::pow(half_pow(t), q); }, inst);
    const double rhs = std::pow(A, 1.0 / p) * std::pow(B, 1.0 / q);
    CHECK(std::abs(h.lhs - lhs) <= 1e-14 * lhs);
    CHECK(std::abs(h.rhs - rhs) <= 1e-14 * rhs);
    CHECK(h.holds);
    CHECK(h.margin > 0.0);
    CHECK(*h.context.q == doctest::Approx(q).epsilon(1e-15));
}

TEST_CASE("Cauchy–Schwarz examples")
{
    const auto f = [](double t) { return std::sin(t) + 2.0; };
    const auto same = cauchy_schwarz_check(f, f, -1.0, 3.0, StepPair(0.5, 1.0));
    CHECK(same.holds);
    CHECK(std::abs(same.margin) <= same.viol_tol);

    // Both grids on [0, 3] with unit steps.
    const AlignedInstance inst{0.0, 3.0, 1.0, 1.0, 3, 3};
    const auto cs = cauchy_schwarz_check(one, id, 0.0, 3.0, StepPair(1.0, 1.0));
    const double lhs = symmetric_by_enumeration([](double t) { return std::abs(t); }, inst);
    const double A = symmetric_by_enumeration(one, inst);
    const double B = symmetric_by_enumeration([](double t) { return t * t; }, inst);
    CHECK(lhs == 4.5);
    CHECK(A == 3.0);
    CHECK(B == 9.5);
    CHECK(cs.lhs == lhs);
    CHECK(cs.rhs == std::sqrt(A * B));
    CHECK(cs.holds);

    // The forward-only calculus reads t = 0, 1, 2: lhs 3 and rhs √3·√5.
    const auto forward = cauchy_schwarz_check(one, id, 0.0, 3.0, StepPair(1.0, 0.0));
    CHECK(forward.lhs == 3.0);
    CHECK(std::abs(forward.rhs - std::sqrt(3.0) * std::sqrt(5.0)) <= 2 * eps * forward.rhs);
    CHECK(forward.holds);

    const auto zero_g = cauchy_schwarz_check(half_pow, zero, 0.0, 2.0, StepPair(1.0, 1.0));
    CHECK(zero_g.lhs == 0.0);
    CHECK(zero_g.rhs == 0.0);
    CHECK(zero_g.holds);
}

TEST_CASE("Minkowski examples")
{
    const StepPair steps(1.0, 1.0);
    const auto neg = minkowski_check(id, [](double t) { return -t; }, 0.0, 2.0, steps, 2.0);
    CHECK(neg.lhs == 0.0);
    CHECK(neg.holds);

    const auto same = minkowski_check(half_pow, half_pow, -1.0, 3.0, StepPair(0.5, 0.25), 3.0);
    CHECK(same.holds);
    CHECK(std::abs(same.margin) <= same.viol_tol);

    const AlignedInstance inst{1.0, 5.0, 2.0, 2.0, 2, 2};
    const auto m = minkowski_check(inv_square, half_pow, 1.0, 5.0, StepPair(2.0, 2.0), 2.0);
    const double lhs = std::sqrt(symmetric_by_enumeration(
        [](double t) { const double s = inv_square(t) + half_pow(t); return s * s; }, inst));
    const double rhs = std::sqrt(symmetric_by_enumeration([](double t) { return std::pow(inv_square(t), 2.0); }, inst)) +
                       std::sqrt(symmetric_by_enumeration([](double t) { return std::pow(half_pow(t), 2.0); }, inst));
    CHECK(std::abs(m.lhs - lhs) <= 1e-14 * lhs);
    CHECK(std::abs(m.rhs - rhs) <= 1e-14 * rhs);
    CHECK(m.holds);
}

TEST_CASE("mean value constant examples")
{
    const auto c = mvt_constant([](double) { return 2.5; }, one, -1.0, 2.0, StepPair(0.5, 1.5));
    CHECK_FALSE(c.degenerate);
    CHECK(c.K == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(c.within_bounds());

    const auto d = mvt_constant(half_pow, zero, 0.0, 2.0, StepPair(1.0, 1.0));
    CHECK(d.degenerate);
    CHECK(d.K == 0.0);
    CHECK(d.integral_fg == 0.0);
    CHECK(d.within_bounds());

    const auto r = mvt_constant(inv_square, one, 1.0, 3.0, StepPair(2.0, 2.0));
    CHECK_FALSE(r.degenerate);
    CHECK(r.integral_g == 2.0);
    CHECK(std::abs(r.K - 5.0 / 9.0) <= 1e-15);
    CHECK(r.m == 1.0 / 9.0);
    CHECK(r.M == 1.0);
    CHECK(r.within_bounds());

    CHECK(kind_of([] { mvt_constant(one, [](double t) { return t - 1.0; }, 0.0, 2.0, StepPair(1.0, 1.0)); }) ==
          ErrorKind::NegativeWeight);
}

TEST_CASE("comparison examples")
{
    const auto z = comparison_check(zero, zero, 0.0, 1.0, StepPair(1.0, 1.0));
    CHECK(z.lhs == 0.0);
    CHECK(z.rhs == 0.0);
    CHECK(z.all_hold());

    const auto alternating = [](double t) { return (static_cast<long>(std::floor(t)) % 2 == 0 ? 1.0 : -1.0) * std::exp2(-t); };
    const AlignedInstance inst{0.0, 4.0, 1.0, 1.0, 4, 4};
    const auto a = comparison_check(alternating, half_pow, 0.0, 4.0, StepPair(1.0, 1.0));
    CHECK(a.lhs == std::abs(symmetric_by_enumeration(alternating, inst)));
    CHECK(a.rhs == symmetric_by_enumeration(half_pow, inst));
    CHECK(a.holds);
    CHECK(a.all_hold());
    REQUIRE(a.clauses.size() == 2);

    const auto eq = comparison_check(inv_square, inv_square, 1.0, 3.0, StepPair(2.0, 2.0));
    CHECK(std::abs(eq.rhs - 10.0 / 9.0) <= 1e-15);
    CHECK(eq.lhs == eq.rhs);
    CHECK(eq.holds);
}

TEST_CASE("comparison hypothesis failures name the witness point")
{
    try {
        comparison_check([](double t) { return t; }, one, 0.0, 3.0, StepPair(1.0, 1.0));
        FAIL("expected HypothesisFailed");
    } catch (const HypothesisFailed& e) {
        CHECK(e.kind() == ErrorKind::HypothesisFailed);
        CHECK(e.point() == 2.0);
    }
}

TEST_CASE("inequality argument errors")
{
    const StepPair steps(1.0, 1.0);
    CHECK(kind_of([&] { holder_check(one, one, 0.0, 2.0, steps, 1.0); }) == ErrorKind::BadExponent);
    CHECK(kind_of([&] { minkowski_check(one, one, 0.0, 2.0, steps, 0.5); }) == ErrorKind::BadExponent);
    CHECK(kind_of([&] { holder_check(one, one, 0.0, 2.0, steps, std::nan("")); }) == ErrorKind::BadExponent);
    CHECK(kind_of([&] { cauchy_schwarz_check(one, one, 2.0, 2.0, steps); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([&] { cauchy_schwarz_check(one, one, 3.0, 2.0, steps); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([] { cauchy_schwarz_check(one, one, 0.0, 1.0, StepPair(0.3, 0.3)); }) == ErrorKind::NotAligned);
    CHECK(kind_of([] { cauchy_schwarz_check(one, one, 0.0, 2.0, StepPair(1.0, 1.0), IntegralMode::Strict); }) ==
          ErrorKind::NotIntegrable);
}

TEST_CASE("unaligned convergent data runs Strict and can violate Hölder")
{
    // Without alignment the integral is a difference of two infinite series,
    // not a positive functional, and the inequality need not hold.
    const auto f = [](double t) { return std::exp2(-std::abs(t)); };
    const auto g = [](double t) { return std::exp(-t * t); };
    const auto r = holder_check(f, g, 0.0, 1.0, StepPair(0.3, 0.7), 2.5);
    REQUIRE_FALSE(r.context.modes.empty());
    for (const auto& use : r.context.modes) {
        CHECK(use.mode == IntegralMode::Strict);
    }
    CHECK(r.margin == r.rhs - r.lhs);
    CHECK(r.margin < -0.01);
    CHECK_FALSE(r.holds);
}

TEST_CASE("sample points cover both grids")
{
    const auto points = sample_points(1.0, 3.0, StepPair(2.0, 2.0));
    REQUIRE(points.size() == 2);
    CHECK(points[0] == 1.0);
    CHECK(points[1] == 3.0);
    CHECK(sample_points(0.0, 2.0, StepPair(1.0, 0.0)).size() == 2);
}

TEST_CASE("property: inequalities hold on the decaying family")
{
    testing_support::Rng rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        const auto inst = testing_support::random_aligned(rng);
        const auto f = testing_support::random_decaying(rng, inst);
        const auto g = testing_support::random_decaying(rng, inst);
        const StepPair steps(inst.alpha, inst.beta);
        for (double p : {1.5, 2.0, 3.0, 10.0}) {
            const auto h = holder_check(f, g, inst.a, inst.b, steps, p);
            CHECK(h.holds);
            CHECK(h.margin >= -h.viol_tol);
            CHECK(minkowski_check(f, g, inst.a, inst.b, steps, p).holds);

            // Equality case g = |f|^{p/q}.
            const auto witness = [&](double t) { return std::pow(std::abs(f(t)), p - 1.0); };
            const auto w = holder_check(f, witness, inst.a, inst.b, steps, p);
            CHECK(w.holds);
            CHECK(w.margin <= 1e-8 * w.rhs);
        }
        const auto cs = cauchy_schwarz_check(f, g, inst.a, inst.b, steps);
        const auto h2 = holder_check(f, g, inst.a, inst.b, steps, 2.0);
        CHECK(cs.holds);
        CHECK(cs.lhs == h2.lhs);
        CHECK(std::abs(cs.rhs - h2.rhs) <= eps * h2.rhs);
    }
}

TEST_CASE("property: mean value constant lies between the sampled extrema")
{
    testing_support::Rng rng(32);
    for (int trial = 0; trial < 100; ++trial) {
        const auto inst = testing_support::random_aligned(rng);
        const auto f = testing_support::random_decaying(rng, inst);
        const auto g = testing_support::random_nonnegative(rng, inst);
        const StepPair steps(inst.alpha, inst.beta);
        const auto r = mvt_constant(f, g, inst.a, inst.b, steps);
        REQUIRE_FALSE(r.degenerate);
        CHECK(r.m - violation_tolerance(r.m, r.K) <= r.K);
        CHECK(r.K <= r.M + violation_tolerance(r.M, r.K));
        CHECK(r.within_bounds());

        const auto d = mvt_constant(f, zero, inst.a, inst.b, steps);
        CHECK(d.degenerate);
        CHECK(std::abs(d.integral_fg) <= 1e-12);
    }
}

TEST_CASE("property: comparison theorem and its corollaries")
{
    testing_support::Rng rng(33);
    for (int trial = 0; trial < 100; ++trial) {
        const auto inst = testing_support::random_aligned(rng);
        const auto f = testing_support::random_decaying(rng, inst);
        const auto h = testing_support::random_nonnegative(rng, inst);
        const auto g = [&](double t) { return std::abs(f(t)) + h(t); };
        const StepPair steps(inst.alpha, inst.beta);
        const auto r = comparison_check(f, g, inst.a, inst.b, steps);
        CHECK(r.all_hold());
        // Unsigned variant: 0 ≤ |f| ≤ g, so ∫|f| ≤ ∫g from the same run.
        const auto u = comparison_check([&](double t) { return std::abs(f(t)); }, g, inst.a, inst.b, steps);
        CHECK(u.all_hold());
        for (const auto& clause : u.clauses) {
            CHECK(clause.holds);
        }
    }
}
