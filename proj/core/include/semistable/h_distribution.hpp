#pragma once

#include <vector>

#include "semistable/semistable_law.hpp"
#include "semistable/tail_spec.hpp"

namespace semistable {

// H_lambda(x) = 1 - G_{h_lambda(x)}(x^{-1/alpha}); the occupation-time limit law.
Accuracy H_lambda_cdf(const LogPeriodicM& m, double lambda, double x,
                      const QuadratureConfig& q = {});

struct SlopeReport {
    std::vector<double> xs;
    std::vector<double> ratios;  // H(x)/x
    double slope = 0.0;          // extrapolated
    double reference = 0.0;      // M(lambda^{1/alpha})
};

// Finite-difference slope of H_lambda at 0 against M(lambda^{1/alpha}).
SlopeReport H_slope_at_zero(const LogPeriodicM& m, double lambda,
                            const QuadratureConfig& q = {});

struct MomentReport {
    std::vector<double> moments;   // M_0..M_kmax
    std::vector<double> stderr_;   // zero when computed from the cdf
    double ml_scale = 1.0;         // fitted Mittag-Leffler scale
    double max_log_excess = 0.0;   // max_k log(M_k / ml profile)
    bool within_profile = true;
};

// Moments from iid samples of S_n/a_n (diagnostic).
MomentReport H_moments_from_samples(const std::vector<double>& samples, int k_max, double alpha);
// Moments by quadrature against the inverted cdf (diagnostic).
MomentReport H_moments_from_cdf(const LogPeriodicM& m, double lambda, int k_max,
                                const QuadratureConfig& q = {});

// k-th moment of the normalized Mittag-Leffler law of order alpha.
double mittag_leffler_moment(int k, double alpha);

}  // namespace semistable
