#include <cmath>

#include "doctest.h"
#include "semistable/transfer_matrix.hpp"

using namespace semistable;

namespace {
TailSpec tau_one() {
    TailSpec s;
    s.alpha = 0.5;
    s.c = 2.0;
    s.m = constant_amplitude(0.5, 2.0, 1.0);
    s.ell = [](double) { return 1.0; };
    s.ell1 = [](double) { return 1.0; };
    s.tail = [](double x) { return x < 1.0 ? 1.0 : 0.0; };
    s.quantile = [](double) { return std::uint64_t{1}; };
    return s;
}
}  // namespace

TEST_CASE("trivial chain: K = 1 with unit return time") {
    TransferMatrix tm = transfer_matrix(tau_one(), 1);
    CHECK(tm.row0[0] == doctest::Approx(1.0));
    CHECK(tm.row0[1] == doctest::Approx(0.0));
    for (double u : tm.u_by_powers(32)) CHECK(u == doctest::Approx(1.0));
}

TEST_CASE("rows sum to one and the invariant measure is stationary") {
    for (const auto& spec : {st_petersburg(0.5), wang_continuous(0.5, 2.0, 0.04),
                             fibonacci(0.7)}) {
        TransferMatrix tm = transfer_matrix(spec, 4096);
        CHECK(tm.row_sum_defect() <= 1e-15);
        CHECK(tm.stationarity_defect(spec, 512) <= 1e-15);
    }
}

TEST_CASE("matrix powers reproduce the renewal sequence below the cap") {
    auto w = wang_continuous(0.5, 2.0, 0.04);
    const std::size_t K = 2048;
    TransferMatrix tm = transfer_matrix(w, K);
    std::vector<double> u_mat = tm.u_by_powers(K);
    std::vector<double> g(K + 1, 0.0);
    for (std::size_t j = 1; j <= K; ++j) g[j] = w.tau_pmf(j);
    RenewalSequence u = renewal_sequence(g, K);
    double worst = 0.0;
    for (std::size_t n = 0; n <= K; ++n)
        worst = std::max(worst, std::abs(u_mat[n] - u.u[n]));
    CHECK(worst <= 1e-12);
}

TEST_CASE("operator partial sums coincide with the scalar scaling") {
    auto sp = st_petersburg(0.5);
    TransferMatrix tm = transfer_matrix(sp, 3000);
    OperatorScalingReport rep = operator_karamata_gap(tm, sp, {1.07, 1.31}, {3, 4});
    CHECK(rep.max_gap_vs_scalar <= 1e-12);
    CHECK(rep.shift_identity_gap <= 1e-12);
    CHECK(rep.positive);
    CHECK_THROWS_AS(operator_karamata_gap(tm, sp, {1.0}, {12}), std::out_of_range);
}
