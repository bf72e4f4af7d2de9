#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace geninv;
using testsupport::em;
using testsupport::q;

TEST_CASE("moore-penrose checker") {
    auto d = em({{2, 0}, {0, 0}});
    auto dp = ExactMatrix(2, 2);
    dp(0, 0) = q(1, 2);
    CHECK(check_moore_penrose(d, dp).passed);

    // the zero candidate fails with the first equation residual equal to |A|
    auto a = testsupport::fixture_ind2();
    auto zero = ExactMatrix::zeros(4, 4);
    auto report = check_moore_penrose(a, zero);
    CHECK_FALSE(report.passed);
    CHECK(report.equations[0].id == "AXA=A");
    CHECK(report.equations[0].residual == norm_max(a));

    CHECK(check_moore_penrose(testsupport::fixture_ind1(),
                              moore_penrose(testsupport::fixture_ind1()))
              .passed);
    CHECK_THROWS_AS(check_moore_penrose(a, ExactMatrix::zeros(3, 3)), DimensionMismatch);
}

TEST_CASE("drazin checker") {
    CHECK(check_drazin(ExactMatrix::identity(2), ExactMatrix::identity(2), 0).passed);

    auto n = em({{0, 1}, {0, 0}});
    CHECK(check_drazin(n, ExactMatrix::zeros(2, 2), 2).passed);

    auto a = testsupport::fixture_ind2();
    CHECK(check_drazin(a, drazin(a), 2).passed);
    CHECK_FALSE(check_drazin(a, ExactMatrix::zeros(4, 4), 2).passed);
}

TEST_CASE("core checker") {
    auto a = testsupport::fixture_ind1();
    CHECK(check_core(a, testsupport::fixture_ind1_core()).passed);
    CHECK(check_core(ExactMatrix::identity(2), ExactMatrix::identity(2)).passed);

    // Moore-Penrose is not the core inverse of this fixture: the range
    // condition R(X) in R(A) tells them apart.
    auto mp = moore_penrose(a);
    CHECK(mp != core(a));
    auto report = check_core(a, mp);
    CHECK_FALSE(report.passed);
    bool range_failed = false;
    for (const auto& c : report.range_checks)
        if (c.id == "R(X) in R(A)" && !c.ok) range_failed = true;
    CHECK(range_failed);

    CHECK_THROWS_AS(check_core(testsupport::fixture_ind2(), ExactMatrix::zeros(4, 4)),
                    IndexTooLarge);
}

TEST_CASE("dual core checker") {
    auto a = testsupport::fixture_ind1();
    CHECK(check_dual_core(a, dual_core(a)).passed);
    CHECK_FALSE(check_dual_core(a, core(a)).passed); // core fails the mirrored conditions here
}

TEST_CASE("core-EP checker") {
    auto a = testsupport::fixture_ind2();
    CHECK(check_core_ep(a, testsupport::fixture_ind2_core_ep()).passed);
    CHECK(check_core_ep(em({{0, 1}, {0, 0}}), ExactMatrix::zeros(2, 2)).passed);

    // the Drazin inverse fails the R(X) = R(X*) condition on this fixture
    auto report = check_core_ep(a, drazin(a));
    CHECK_FALSE(report.passed);
    bool star_range_failed = false;
    for (const auto& c : report.range_checks)
        if (c.id == "R(X)=R(X*)" && !c.ok) star_range_failed = true;
    CHECK(star_range_failed);
}

TEST_CASE("dual core-EP checker") {
    auto a = testsupport::fixture_ind2();
    CHECK(check_dual_core_ep(a, dual_core_ep(a)).passed);
    CHECK_FALSE(check_dual_core_ep(a, core_ep(a)).passed);
}

TEST_CASE("exact verification is arithmetic truth: any perturbation fails") {
    auto a = testsupport::fixture_ind2();
    auto x = testsupport::fixture_ind2_core_ep();
    REQUIRE(check_core_ep(a, x).passed);
    auto y = x;
    y(1, 2) += q(1, 1000000000); // tiny but nonzero
    CHECK_FALSE(check_core_ep(a, y).passed);
}

TEST_CASE("range comparisons") {
    auto x = em({{1, 0}, {0, 0}});
    auto y = em({{2, 0}, {0, 0}});
    CHECK(range_equal(x, y));
    CHECK_FALSE(range_subset(ExactMatrix::identity(2), x));
    CHECK(range_subset(x, ExactMatrix::identity(2)));
    CHECK_THROWS_AS(range_subset(x, em({{1, 2}})), DimensionMismatch);

    // the core-EP inverse spans the same column space as the chain head
    auto a = testsupport::fixture_ind2();
    auto chain = full_rank_chain(a);
    CHECK(range_equal(core_ep(a), chain.head));
    CHECK(range_equal(core_ep(a), drazin(a)));
}

TEST_CASE("float verification uses tolerances for equations") {
    auto a = to_float(testsupport::fixture_ind1());
    auto x = to_float(testsupport::fixture_ind1_core());
    auto report = check_core(a, x);
    CHECK(report.mode == ArithmeticMode::Float);
    REQUIRE(report.tolerance.has_value());
    CHECK(*report.tolerance == 1e-8 * (1.0 + 4.0));
    CHECK(report.passed);

    // a custom tolerance is honored
    auto strict = check_core(a, x, 1e-20);
    CHECK(*strict.tolerance == 1e-20);
}
