#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "semistable/h_distribution.hpp"
#include "semistable/merging.hpp"
#include "semistable/renewal_path.hpp"
#include "semistable/renewal_sequence.hpp"

using namespace semistable;

namespace {
TailSpec degenerate_tau(std::uint64_t value) {
    TailSpec s;
    s.family = "degenerate";
    s.alpha = 0.5;
    s.c = 2.0;
    s.m = constant_amplitude(0.5, 2.0, 1.0);
    s.ell = [](double) { return 1.0; };
    s.ell1 = [](double) { return 1.0; };
    s.tail = [value](double x) { return x < static_cast<double>(value) ? 1.0 : 0.0; };
    s.quantile = [value](double) { return value; };
    return s;
}
}  // namespace

TEST_CASE("renewal recursion: degenerate laws") {
    // tau == 1: u_n = 1 for all n
    std::vector<double> g1 = {0.0, 1.0};
    RenewalSequence r1 = renewal_sequence(g1, 64);
    for (double u : r1.u) CHECK(u == doctest::Approx(1.0));
    // tau == 2: u alternates 1, 0, 1, 0, ...
    std::vector<double> g2 = {0.0, 0.0, 1.0};
    RenewalSequence r2 = renewal_sequence(g2, 65);
    for (std::size_t n = 0; n <= 65; ++n)
        CHECK(r2.u[n] == doctest::Approx(n % 2 == 0 ? 1.0 : 0.0));
}

TEST_CASE("divide-and-conquer convolution agrees with the direct recursion") {
    auto w = wang_continuous(0.5, 2.0, 0.04);
    const std::size_t N = 4096;
    std::vector<double> g(N + 1, 0.0);
    for (std::size_t j = 1; j <= N; ++j) g[j] = w.tau_pmf(j);
    RenewalSequence direct = renewal_sequence(g, N);
    std::vector<double> fast = renewal_sequence_fft(g, N);
    for (std::size_t n = 0; n <= N; ++n)
        CHECK(fast[n] == doctest::Approx(direct.u[n]).epsilon(1e-12));
    // u stays within [0,1]
    for (double u : direct.u) {
        CHECK(u >= 0.0);
        CHECK(u <= 1.0 + 1e-12);
    }
}

TEST_CASE("partial sums and the horizon guard") {
    std::vector<double> g = {0.0, 1.0};
    RenewalSequence r = renewal_sequence(g, 16);
    CHECK(r.partial_sum(3.7) == doctest::Approx(4.0));  // u_0..u_3
    CHECK_THROWS_AS(r.partial_sum(17.2), std::out_of_range);
}

TEST_CASE("simulated paths: degenerate return times") {
    auto one = degenerate_tau(1);
    RenewalPath p1 = simulate_returns(one, 100, 3);
    CHECK(p1.S_n == 100);
    auto two = degenerate_tau(2);
    CHECK(simulate_returns(two, 100, 3).S_n == 50);
    CHECK(simulate_returns(two, 101, 3).S_n == 51);  // ceil(n/2)
}

TEST_CASE("pathwise duality holds exactly") {
    for (const auto& spec : {st_petersburg(0.5), wang_continuous(0.5, 2.0, 0.04),
                             fibonacci(0.7)}) {
        for (std::uint64_t seed = 0; seed < 300; ++seed)
            CHECK(duality_holds(simulate_returns(spec, 2048, seed)));
    }
}

TEST_CASE("empirical occupation cdf: degenerate check and tail limits") {
    auto one = degenerate_tau(1);
    // S_n = n = 1024 on every path; a_n = 32, so S_n/a_n = 32 exactly
    EmpiricalCdf e = empirical_cdf_S(one, 1024, {0.5, 2.0, 31.9, 32.0, 40.0}, 2000, 9);
    CHECK(e.value[0] == doctest::Approx(0.0));
    CHECK(e.value[1] == doctest::Approx(0.0));
    CHECK(e.value[2] == doctest::Approx(0.0));
    CHECK(e.value[3] == doctest::Approx(1.0));  // degenerate atom at 32
    CHECK(e.value[4] == doctest::Approx(1.0));  // the far tail of the grid is 1
    CHECK_THROWS_AS(empirical_cdf_S(one, 16, {1.0}, 10, 1), std::domain_error);
}

TEST_CASE("H distribution: bounds, monotonicity, slope for a constant amplitude") {
    auto mw = wang_amplitude(0.5, 2.0, 0.04);
    double prev = 0.0;
    for (int i = 0; i < 18; ++i) {
        double x = 0.05 * std::pow(6.0 / 0.05, i / 17.0);
        Accuracy h = H_lambda_cdf(mw, 0.75, x);
        CHECK(h.value >= prev - 1e-7);
        CHECK(h.value >= 0.0);
        CHECK(h.value <= 1.0);
        prev = h.value;
    }
    auto mc = constant_amplitude(0.5, 2.0, 0.7);
    for (double lam : {0.6, 1.0}) {
        SlopeReport r = H_slope_at_zero(mc, lam);
        CHECK(std::abs(r.slope / 0.7 - 1.0) <= 0.02);
        CHECK(r.reference == doctest::Approx(0.7));
    }
}

TEST_CASE("H slope differs across lambda when the amplitude oscillates") {
    auto mw = wang_amplitude(0.5, 2.0, 0.04);
    SlopeReport a = H_slope_at_zero(mw, 0.6);
    SlopeReport b = H_slope_at_zero(mw, 1.0);
    CHECK(a.reference != doctest::Approx(b.reference).epsilon(1e-3));
    CHECK(std::abs(a.slope - b.slope) > 0.01);
}

TEST_CASE("H moments: diagnostics") {
    SUBCASE("degenerate samples give unit moments") {
        std::vector<double> ones(500, 1.0);
        MomentReport r = H_moments_from_samples(ones, 6, 0.5);
        for (double m : r.moments) CHECK(m == doctest::Approx(1.0));
    }
    SUBCASE("cdf route: M_0 = 1 and a Mittag-Leffler-compatible profile") {
        auto mc = constant_amplitude(0.5, 2.0, 1.0);
        MomentReport r = H_moments_from_cdf(mc, 1.0, 4);
        CHECK(r.moments[0] == doctest::Approx(1.0));
        CHECK(r.within_profile);
        for (int k = 1; k <= 4; ++k) CHECK(r.moments[k] > 0.0);
    }
    SUBCASE("first moment self-consistent across seeds") {
        auto sp = st_petersburg(0.5);
        auto norm = [&](std::vector<std::uint64_t> occ, double a_n) {
            std::vector<double> v;
            for (auto s : occ) v.push_back(static_cast<double>(s) / a_n);
            return v;
        };
        double a_n = static_cast<double>(sp.norming_a(1 << 14));
        auto ma = H_moments_from_samples(norm(occupation_ensemble(sp, 1 << 14, 20000, 5), a_n),
                                         2, 0.5);
        auto mb = H_moments_from_samples(norm(occupation_ensemble(sp, 1 << 14, 20000, 6), a_n),
                                         2, 0.5);
        double sigma = std::hypot(ma.stderr_[1], mb.stderr_[1]);
        CHECK(std::abs(ma.moments[1] - mb.moments[1]) <= 3.0 * sigma);
    }
}

TEST_CASE("mittag-leffler moments: closed form sanity") {
    // k = 1: Gamma(1+a)/Gamma(1+a) = 1; k = 2: 2 Gamma(1+a)^2 / Gamma(1+2a)
    CHECK(mittag_leffler_moment(1, 0.5) == doctest::Approx(1.0));
    double g = std::tgamma(1.5);
    CHECK(mittag_leffler_moment(2, 0.5) == doctest::Approx(2.0 * g * g / std::tgamma(2.0)));
}

TEST_CASE("merging reference uses the moving position parameter") {
    auto sp = st_petersburg(0.5);
    const std::uint64_t n = 1 << 16;  // a_n = 256
    std::vector<double> grid = {3.0};  // gamma(768) = 0.75 vs gamma(256) = 1.0
    MergingReport right = merging_gap(sp, n, grid, 2000, 11);
    MergingReport wrong = merging_gap_wrong_index(sp, n, grid, 2000, 11);
    SemistableLaw vlaw(sp.m, 0.75);
    double expect = vlaw.cdf(std::pow(3.0, -2.0)).value;
    CHECK(right.reference[0] == doctest::Approx(expect).epsilon(1e-6));
    CHECK(std::abs(right.reference[0] - wrong.reference[0]) > 1e-3);
}

TEST_CASE("merging: trivial grid point has both terms near 1") {
    auto sp = st_petersburg(0.5);
    MergingReport rep = merging_gap(sp, 1 << 14, {0.01}, 3000, 21);
    CHECK(rep.empirical[0] >= 0.99);
    CHECK(rep.reference[0] >= 0.99);
    CHECK(rep.gap[0] <= 0.02);
}
