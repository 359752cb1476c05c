#include <cmath>

#include "doctest.h"
#include "semistable/subsequence.hpp"

using namespace semistable;

TEST_CASE("circular convergence verdicts") {
    SUBCASE("constant interior sequence") {
        std::vector<double> s(40, 0.8);
        CHECK(circular_limit(s, 0.8, 2.0).ok);
    }
    SUBCASE("alternation between the identified endpoints converges to 1") {
        std::vector<double> s;
        for (int r = 1; r <= 40; ++r) {
            s.push_back(1.0 - 1.0 / (r + 10.0));
            s.push_back(0.5 + 1.0 / (r + 10.0));
        }
        CHECK(circular_limit(s, 1.0, 2.0).ok);
    }
    SUBCASE("two interior limit points fail") {
        std::vector<double> s;
        for (int r = 0; r < 40; ++r) s.push_back(r % 2 ? 0.8 : 0.9);
        CHECK_FALSE(circular_limit(s, 0.8, 2.0).ok);
    }
}

TEST_CASE("plans for the dyadic family") {
    auto sp = st_petersburg(0.5);
    SUBCASE("lambda = 1 via block endpoints") {
        SubsequencePlan p = subsequence_for_lambda(sp, 1.0, 24, PlanMode::GammaOfN);
        for (double g : p.achieved_gamma) CHECK(g == doctest::Approx(1.0));
    }
    SUBCASE("lambda = 3/4 lands exactly on dyadic rationals") {
        SubsequencePlan p = subsequence_for_lambda(sp, 0.75, 24, PlanMode::GammaOfN);
        for (std::size_t r = 0; r < p.indices.size(); ++r) {
            // n_r = 3 * 2^{r-2} pattern: exact position 0.75 in every block
            CHECK(p.achieved_gamma[r] == doctest::Approx(0.75));
        }
        CHECK(p.achieved_gap <= 1e-12);
    }
    SUBCASE("infeasible when too few blocks are examined") {
        CHECK_THROWS(subsequence_for_lambda(sp, 0.9, 3, PlanMode::GammaOfN));
    }
}

TEST_CASE("plans through the integer norming sequence") {
    auto w = wang_continuous(0.5, 2.0, 0.04);
    SubsequencePlan p = subsequence_for_lambda(w, 0.9, 22, PlanMode::GammaOfAn);
    REQUIRE(p.indices.size() >= 18);
    for (std::size_t r = 13; r < p.indices.size(); ++r)
        CHECK(std::abs(p.achieved_gamma[r] - 0.9) <= 0.01);
}

TEST_CASE("gamma shift along a plan follows h_lambda") {
    auto sp = st_petersburg(0.5);
    SubsequencePlan p = subsequence_for_lambda(sp, 0.75, 22, PlanMode::GammaOfN);
    SUBCASE("worked value at y = 1.5") {
        GammaShiftReport rep = lemma_gamma_check(sp, p, 1.5);
        CHECK(rep.expected == doctest::Approx(0.5625));
        for (std::size_t r = 4; r < rep.observed.size(); ++r)
            CHECK(rep.observed[r] == doctest::Approx(0.5625).epsilon(1e-12));
        CHECK(rep.gap <= 1e-9);
    }
    SUBCASE("y = 1 reproduces the plan gap and y = c matches by periodicity") {
        GammaShiftReport r1 = lemma_gamma_check(sp, p, 1.0);
        GammaShiftReport rc = lemma_gamma_check(sp, p, 2.0);
        CHECK(r1.expected == doctest::Approx(rc.expected));
        CHECK(std::abs(r1.gap - rc.gap) <= 1e-12);
        CHECK(r1.gap <= p.achieved_gap + 1e-12);
    }
}
