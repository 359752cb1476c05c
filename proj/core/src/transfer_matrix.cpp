#include "semistable/transfer_matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace semistable {

TransferMatrix transfer_matrix(const TailSpec& spec, std::size_t K) {
    if (K < 1) throw std::domain_error("transfer_matrix: K must be positive");
    TransferMatrix tm;
    tm.K = K;
    tm.row0.assign(K + 1, 0.0);
    for (std::size_t k = 0; k < K; ++k) tm.row0[k] = spec.chain_pmf(k);
    tm.row0[K] = spec.tail_bar(static_cast<double>(K));  // folded mass: P(tau > K)
    return tm;
}

std::vector<double> TransferMatrix::u_by_powers(std::size_t n_max) const {
    // v <- v P, starting from the indicator of state 0; u_n = v[0]
    std::vector<double> v(K + 1, 0.0), w(K + 1, 0.0);
    v[0] = 1.0;
    std::vector<double> u(n_max + 1, 0.0);
    u[0] = 1.0;
    for (std::size_t n = 1; n <= n_max; ++n) {
        const double v0 = v[0];
        for (std::size_t k = 0; k < K; ++k) w[k] = v0 * row0[k] + v[k + 1];
        w[K] = v0 * row0[K];
        std::swap(v, w);
        u[n] = v[0];
    }
    return u;
}

double TransferMatrix::row_sum_defect() const {
    double s = 0.0;
    for (double x : row0) s += x;
    return std::abs(s - 1.0);
}

double TransferMatrix::stationarity_defect(const TailSpec& spec, std::size_t rows) const {
    // pi_k = P(tau > k); (pi P)(k) = pi_0 f_k + pi_{k+1} must equal pi_k
    double worst = 0.0;
    for (std::size_t k = 0; k + 1 < rows && k < K; ++k) {
        double pik = spec.tail_bar(static_cast<double>(k));
        double img = spec.chain_pmf(k) + spec.tail_bar(static_cast<double>(k + 1));
        worst = std::max(worst, std::abs(img - pik));
    }
    return worst;
}

OperatorScalingReport operator_karamata_gap(const TransferMatrix& tm, const TailSpec& spec,
                                            const std::vector<double>& z_grid,
                                            const std::vector<long>& n_list) {
    OperatorScalingReport rep;
    rep.z_grid = z_grid;
    rep.n_list = n_list;
    const double alpha = spec.alpha, c = spec.c;
    const double r = std::pow(c, 1.0 / alpha);

    // operator readout at state 0 and its prefix sums
    long n_needed = 0;
    for (long n : n_list)
        for (double z : z_grid)
            n_needed = std::max(n_needed, static_cast<long>(std::pow(c, n / alpha) * z) + 1);
    if (n_needed > static_cast<long>(tm.K))
        throw std::out_of_range("operator_karamata_gap: horizon exceeds the matrix cap");
    std::vector<double> u_op = tm.u_by_powers(static_cast<std::size_t>(n_needed));
    std::vector<double> U(u_op.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < u_op.size(); ++i) {
        if (u_op[i] < 0.0) rep.positive = false;
        acc += u_op[i];
        U[i] = acc;
    }

    // scalar route on the same pmf
    std::vector<double> g(static_cast<std::size_t>(n_needed) + 1, 0.0);
    for (std::size_t j = 1; j < g.size(); ++j) g[j] = spec.tau_pmf(j);
    RenewalSequence scalar = renewal_sequence(g, static_cast<std::size_t>(n_needed));

    for (long n : n_list) {
        std::vector<double> row;
        for (double z : z_grid) {
            double arg = std::pow(c, static_cast<double>(n) / alpha) * z;
            double denom = std::pow(c, static_cast<double>(n)) * std::pow(z, alpha) /
                           spec.ell(arg);
            double op_val = U[static_cast<std::size_t>(std::floor(arg))] / denom;
            double sc_val = scalar.partial_sum(arg) / denom;
            rep.max_gap_vs_scalar = std::max(rep.max_gap_vs_scalar, std::abs(op_val - sc_val));
            row.push_back(op_val);
        }
        rep.profile.push_back(row);
    }
    // index-shift identity: p_hat_n(r z) = p_hat_{n+1}(z) exactly
    for (std::size_t ni = 0; ni + 1 < n_list.size(); ++ni) {
        if (n_list[ni + 1] != n_list[ni] + 1) continue;
        for (double z : z_grid) {
            double a1 = std::pow(c, static_cast<double>(n_list[ni]) / alpha) * (r * z);
            double a2 = std::pow(c, static_cast<double>(n_list[ni + 1]) / alpha) * z;
            if (std::max(a1, a2) > static_cast<double>(n_needed)) continue;
            double v1 = U[static_cast<std::size_t>(std::floor(a1))] /
                        (std::pow(c, static_cast<double>(n_list[ni])) * std::pow(r * z, alpha));
            double v2 = U[static_cast<std::size_t>(std::floor(a2))] /
                        (std::pow(c, static_cast<double>(n_list[ni + 1])) * std::pow(z, alpha));
            rep.shift_identity_gap = std::max(rep.shift_identity_gap, std::abs(v1 - v2));
        }
    }
    return rep;
}

}  // namespace semistable
