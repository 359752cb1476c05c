#include <cmath>

#include "doctest.h"
#include "semistable/tail_spec.hpp"
#include "semistable/log_periodic.hpp"

using namespace semistable;

TEST_CASE("tail values: closed examples per family") {
    auto sp = st_petersburg(0.5);
    CHECK(sp.tail_bar(4.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(sp.tail_bar(8.0) == doctest::Approx(0.5).epsilon(1e-15));  // no atom in (4,16)
    CHECK(sp.tail_bar(3.9) == 1.0);                                  // below the support
    CHECK(sp.tail_bar(16.0) == doctest::Approx(0.25).epsilon(1e-15));

    auto w = wang_continuous(0.5, 2.0, 0.04);
    CHECK(w.tail_bar(0.5) == 1.0);
    CHECK(w.tail_bar(1.0) == doctest::Approx(0.5).epsilon(1e-15));  // xi_1 = 1/2
    for (long n : {2L, 7L, 1000L}) {
        double a = 2.0 * M_PI * 0.5 / std::log(2.0);
        double xi = 0.5 * std::pow(n, -0.5) * (1.0 + 0.08 * std::sin(a * std::log((double)n)));
        CHECK(w.tail_bar(static_cast<double>(n)) == doctest::Approx(xi).epsilon(1e-14));
        CHECK(w.tail_bar(n + 0.7) == doctest::Approx(xi).epsilon(1e-14));  // step function
    }

    auto f = fibonacci(0.7);
    // tail on [S_n, S_{n+1}) equals both lambda^{n+1} and q_n S_n^{-alpha}
    const double G = golden_mean();
    double q0 = fibonacci_q0();
    double a = 1.0, b = 2.0;
    for (long n = 0; n <= 25; ++n) {
        double qn = 0.7 * std::pow(q0, f.alpha) *
                    std::pow(1.0 - std::pow(-1.0, (double)n) * std::pow(G, -2.0 * (n + 2.0)),
                             f.alpha);
        double lhs = f.tail_bar(a);
        CHECK(lhs == doctest::Approx(std::pow(0.7, (double)n + 1.0)).epsilon(1e-13));
        CHECK(lhs == doctest::Approx(qn * std::pow(a, -f.alpha)).epsilon(1e-12));
        double t = a + b;
        a = b;
        b = t;
    }
    CHECK(f.tau_pmf(3) == doctest::Approx(0.147).epsilon(1e-12));  // (1-lambda) lambda^2
    CHECK(f.tau_pmf(1) == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("lattice reconstruction: tail equals the pmf sum exactly") {
    for (const auto& spec : {st_petersburg(0.5), wang_continuous(0.5, 2.0, 0.04),
                             wang_noncontinuous(0.5), fibonacci(0.7), pareto_lattice(0.5, 1.0)}) {
        double acc = 0.0;
        for (std::uint64_t j = 1; j <= 3000; ++j) {
            acc += spec.tau_pmf(j);
            if (j % 251 == 0)
                CHECK(1.0 - acc == doctest::Approx(spec.tail_bar((double)j)).epsilon(1e-12));
        }
        // total mass: partial sum + tail telescopes to 1 exactly
        CHECK(acc + spec.tail_bar(3000.0) == doctest::Approx(1.0).epsilon(1e-12));
        // pmf nonnegative on a scan
        for (std::uint64_t j = 1; j <= 500; ++j) CHECK(spec.tau_pmf(j) >= -1e-16);
    }
}

TEST_CASE("null recurrence: truncated mean grows without bound") {
    // sum_{j<K} P(tau > j) ~ K^{1-alpha}; for alpha = 1/2 it passes 1e3 by K = 1e6
    for (const auto& spec : {st_petersburg(0.5), wang_continuous(0.5, 2.0, 0.04),
                             wang_noncontinuous(0.5), pareto_lattice(0.5, 1.0)}) {
        double acc = 0.0, prev = 0.0;
        bool increasing = true;
        for (std::uint64_t j = 0; j < 1000000; j += (j < 1000 ? 1 : 997)) {
            double step = spec.tail_bar((double)j);
            acc += step * (j < 1000 ? 1.0 : 997.0);
            if (acc < prev) increasing = false;
            prev = acc;
        }
        CHECK(increasing);
        CHECK(acc > 1e3);
    }
    // heavier index: growth continues at the theoretical K^{1-alpha} scale
    auto f = fibonacci(0.7);
    double acc = 0.0;
    for (std::uint64_t j = 0; j < 1000000; j += 997) acc += 997.0 * f.tail_bar((double)j);
    CHECK(acc > 0.3 * std::pow(1e6, 1.0 - f.alpha) / (1.0 - f.alpha));
}

TEST_CASE("position parameter gamma") {
    auto sp = st_petersburg(0.5);
    CHECK(sp.gamma_pos(6.0) == doctest::Approx(0.75).epsilon(1e-14));
    for (long n : {3L, 9L, 20L}) CHECK(sp.gamma_pos(sp.k_n(n)) == doctest::Approx(1.0));
    CHECK(sp.gamma_pos(sp.k_n(20) + 1.0) ==
          doctest::Approx(0.5).epsilon(1e-5));  // just past a block boundary
    // range invariant
    auto w = wang_continuous(0.5, 2.0, 0.04);
    for (int i = 0; i < 300; ++i) {
        double x = std::pow(10.0, 1.0 + 5.0 * i / 299.0) * 1.0091;
        double g = w.gamma_pos(x);
        CHECK(g > 0.5 - 1e-9);
        CHECK(g <= 1.0 + 1e-9);
    }
}

TEST_CASE("block position delta") {
    auto sp = st_petersburg(0.5);
    CHECK(sp.delta(20.0) == doctest::Approx(1.25).epsilon(1e-13));  // A_{k_2} = 16
    for (long n : {1L, 2L, 5L}) CHECK(sp.delta(sp.A_kn(n)) == doctest::Approx(1.0));
    CHECK_THROWS_AS(sp.delta(0.5), std::domain_error);
    // invariance under the block scaling at matched phases (unit ell1)
    for (double x : {17.0, 70.0, 300.0}) {
        long n = 0;
        while (sp.A_kn(n + 1) <= x) ++n;
        double scaled = x * sp.A_kn(n + 1) / sp.A_kn(n);
        CHECK(sp.delta(scaled) == doctest::Approx(sp.delta(x)).epsilon(1e-10));
    }
}

TEST_CASE("norming sequences") {
    auto sp = st_petersburg(0.5);
    CHECK(sp.norming_a(100.0) == 10);
    CHECK(sp.norming_A(16.0) == doctest::Approx(256.0));
    CHECK(norming_composition_gap(sp, 1e4, 1e6, 400) <= 0.02);
    auto f = fibonacci(0.7);
    CHECK(norming_composition_gap(f, 1e4, 1e6, 200) <= 0.02);
}

TEST_CASE("h_lambda: values and periodicity") {
    CHECK(h_lambda(1.0, 1.0, 2.0) == doctest::Approx(1.0));
    CHECK(h_lambda(1.0, 2.0, 2.0) == doctest::Approx(1.0));
    CHECK(h_lambda(0.75, 1.0, 2.0) == doctest::Approx(0.75));
    for (double x : {0.37, 1.9, 13.0}) {
        CHECK(h_lambda(0.8, 2.0 * x, 2.0) ==
              doctest::Approx(h_lambda(0.8, x, 2.0)).epsilon(1e-12));
        double h = h_lambda(0.8, x, 2.0);
        CHECK(h > 0.5);
        CHECK(h <= 1.0 + 1e-12);
    }
}

TEST_CASE("reconstruction residual h vanishes along the norming subsequence") {
    for (const auto& spec : {st_petersburg(0.5), wang_continuous(0.5, 2.0, 0.04),
                             fibonacci(0.7)}) {
        double x = 1.3;  // continuity point for every built-in amplitude
        double h10 = std::abs(spec.h_err(spec.A_kn(10) * x));
        double h30 = std::abs(spec.h_err(spec.A_kn(30) * x));
        INFO(spec.family);
        CHECK(h30 <= h10 + 1e-3);
        CHECK(h30 <= 0.02);
    }
}

TEST_CASE("discrete extension keeps the tail and repairs the identity") {
    for (const auto& base : {st_petersburg(0.5), wang_continuous(0.5, 2.0, 0.04)}) {
        TailSpec ext = extend_discrete(base);
        // tail is unchanged and piecewise constant: F(3.7) = F(3)
        CHECK(ext.tail_bar(3.7) == base.tail_bar(3.0));
        CHECK(ext.tail_bar(17.2) == base.tail_bar(17.0));
        // extended ell is slowly varying: ell(2x)/ell(x) -> 1
        for (double x : {1e3, 1e5, 1e6})
            CHECK(std::abs(ext.ell(2.0 * x) / ext.ell(x) - 1.0) <= 2.0 / x);
        // residual h with the extended ell still vanishes along the subsequence
        double x = 1.3;
        double h30 = ext.tail_bar(ext.A_kn(30) * x) * std::pow(ext.A_kn(30) * x, ext.alpha) /
                         ext.ell(ext.A_kn(30) * x) -
                     ext.m.eval(ext.delta(ext.A_kn(30) * x));
        CHECK(std::abs(h30) <= 0.02);
    }
}

TEST_CASE("tau sampler: supports and masses") {
    auto sp = st_petersburg(0.5);
    auto draws = sample_tau(sp, 31, 100000);
    std::size_t first_atom = 0;
    for (auto t : draws) {
        // support {ceil(2^{n/alpha})} = {4, 16, 64, ...}
        double l = 0.5 * std::log2(static_cast<double>(t));
        CHECK(std::abs(l - std::round(l)) <= 1e-12);
        if (t == 4) ++first_atom;
    }
    double p = static_cast<double>(first_atom) / draws.size();
    CHECK(std::abs(p - 0.5) <= 3.0 * 0.5 / std::sqrt(100000.0));

    auto f = fibonacci(0.7);
    auto fd = sample_tau(f, 77, 100000);
    std::size_t s0 = 0;
    for (auto t : fd) {
        // support is the Fibonacci sequence
        std::uint64_t a = 1, b = 2;
        while (b <= t) {
            std::uint64_t tt = a + b;
            a = b;
            b = tt;
        }
        CHECK(a == t);
        if (t == 1) ++s0;
    }
    CHECK(std::abs(static_cast<double>(s0) / fd.size() - 0.3) <=
          3.0 * std::sqrt(0.3 * 0.7 / 100000.0));

    // degenerate pmf: all mass at tau = 1
    TailSpec deg;
    deg.family = "degenerate";
    deg.alpha = 0.5;
    deg.c = 2.0;
    deg.m = constant_amplitude(0.5, 2.0, 1.0);
    deg.tail = [](double x) { return x < 1.0 ? 1.0 : 0.0; };
    deg.ell = [](double) { return 1.0; };
    deg.ell1 = [](double) { return 1.0; };
    deg.quantile = [](double) { return std::uint64_t{1}; };
    for (auto t : sample_tau(deg, 5, 64)) CHECK(t == 1);
}

TEST_CASE("tau sampler hits deep quantiles correctly") {
    auto w = wang_continuous(0.5, 2.0, 0.04);
    // smallest t with tail(t) < v must satisfy tail(t) < v <= tail(t-1)
    for (double v : {0.9, 0.2, 1e-3, 1e-7, 1e-11}) {
        std::uint64_t t = w.quantile(v);
        CHECK(w.tail_bar(static_cast<double>(t)) < v);
        if (t > 1) CHECK(w.tail_bar(static_cast<double>(t - 1)) >= v);
    }
}

TEST_CASE("serialization round-trips exactly") {
    for (const auto& spec : {st_petersburg(0.5), wang_continuous(0.5, 2.0, 0.04),
                             wang_noncontinuous(0.5), fibonacci(0.7), pareto_lattice(0.5, 0.9)}) {
        std::string j = tail_spec_to_json(spec);
        TailSpec back = tail_spec_from_json(j);
        CHECK(tail_spec_to_json(back) == j);
        for (double x : {1.0, 5.5, 123.0})
            CHECK(back.tail_bar(x) == spec.tail_bar(x));
    }
    CHECK_THROWS(tail_spec_from_json("{\"family\":\"nope\"}"));
}
