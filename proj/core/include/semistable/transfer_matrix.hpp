#pragma once

#include <cstddef>
#include <vector>

#include "semistable/renewal_sequence.hpp"
#include "semistable/tail_spec.hpp"

namespace semistable {

// Renewal-chain transition matrix truncated to states 0..K. Row 0 carries the
// return distribution with the beyond-K mass folded into state K (so the
// readout u_n is exact for n <= K); rows l >= 1 step down deterministically.
struct TransferMatrix {
    std::size_t K = 0;
    std::vector<double> row0;  // row0[k] = P(X_{n+1} = k | X_n = 0)

    // u_n for n = 0..n_max via powers applied to the indicator of state 0.
    std::vector<double> u_by_powers(std::size_t n_max) const;
    // max row-sum defect (implicit rows are exact by construction)
    double row_sum_defect() const;
    // stationarity defect of pi_k = P(tau > k) on the untruncated rows
    double stationarity_defect(const TailSpec& spec, std::size_t rows) const;
};

TransferMatrix transfer_matrix(const TailSpec& spec, std::size_t K);

struct OperatorScalingReport {
    std::vector<double> z_grid;
    std::vector<long> n_list;
    std::vector<std::vector<double>> profile;   // normalized operator partial sums
    double max_gap_vs_scalar = 0.0;             // vs renewal_scaling_p on the same useq
    double shift_identity_gap = 0.0;            // z -> r z  equals  n -> n+1
    bool positive = true;
};

// Karamata-type scaling of the operator partial sums on the renewal shift:
// sum_{j <= floor(c^{n/alpha} z)} (L^j 1)(0), normalized by c^n z^alpha.
OperatorScalingReport operator_karamata_gap(const TransferMatrix& tm, const TailSpec& spec,
                                            const std::vector<double>& z_grid,
                                            const std::vector<long>& n_list);

}  // namespace semistable
