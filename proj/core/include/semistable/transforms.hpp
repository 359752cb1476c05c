#pragma once

#include <functional>
#include <vector>

#include "semistable/renewal_sequence.hpp"
#include "semistable/tail_spec.hpp"

namespace semistable {

// Log-periodic profile sampled on one period; phase = log_r(z) mod 1.
struct LogPeriodicP {
    double r = 4.0;
    double rho = 0.5;                // x^rho p(x) nondecreasing
    std::vector<double> phase;       // sorted, in [0,1)
    std::vector<double> value;

    double eval(double z) const;     // linear interpolation with wraparound
    bool monotone_check(int grid = 2048) const;  // z^rho p(z) nondecreasing per period
};

// Positive bounded log-periodic function with known jump abscissae.
struct PeriodicFn {
    double r = 4.0;
    std::function<double(double)> f;
    std::vector<double> jumps;       // abscissae within [1, r)
};

PeriodicFn periodic_from_amplitude(const LogPeriodicM& m);
PeriodicFn periodic_from_profile(const LogPeriodicP& p);

// B_rho p(x) = x^{-rho} Int_0^x y^{rho-1} p(y) dy (continuous, log-periodic).
double op_B(const PeriodicFn& p, double rho, double x);

// A_rho p(s) = s^rho Int_0^inf e^{-sx} d(p(x) x^rho), evaluated through the
// integrated-by-parts form s^{rho+1} Int e^{-sx} p(x) x^rho dx.
double op_A(const PeriodicFn& p, double rho, double s);

// q0(s) = A_{1-alpha}(B_{1-alpha} M)(s); the Laplace-side amplitude of the
// return-time tail. Returned as a log-periodic profile in s.
LogPeriodicP q0_of_amplitude(const LogPeriodicM& m, int grid = 512);

struct LaplaceValue {
    double value = 0.0;      // 1 - E[e^{-s tau}]
    double cutoff_error = 0.0;
    bool exact_sum = true;
};

// 1 - F^(s) = sum_k (1 - e^{-sk}) P(tau = k), via the exact lattice sum for
// moderate s and the tail-integral identity s Int e^{-sy} P(tau > y) dy below.
LaplaceValue laplace_F(const TailSpec& spec, double s);

struct ScalingReport {
    std::vector<double> z_grid;
    std::vector<long> n_list;
    std::vector<std::vector<double>> p_hat;   // [n_index][z_index]
    std::vector<std::vector<double>> delta_prev;  // |p_hat_n - p_hat_{n-1}|
    LogPeriodicP limit;                        // profile at the largest n
};

// p_hat_n(z) = U(c^{n/alpha} z) / (c^n z^alpha) over the grid and index list.
ScalingReport renewal_scaling_p(const RenewalSequence& useq, double alpha, double c,
                                const std::vector<double>& z_grid,
                                const std::vector<long>& n_list);

// sup over the s grid of |A_alpha p_hat(s) * q0(s) - 1|.
double verify_A_alpha_p(const LogPeriodicP& p_hat, const LogPeriodicP& q0,
                        const std::vector<double>& s_grid);

// z grid of `count` points on [lo, hi] whose phases stay `guard` away from
// the discontinuity phases of the limit profile.
std::vector<double> z_grid_avoiding_jumps(const TailSpec& spec, double lo, double hi,
                                          int count, double guard = 1e-3);

}  // namespace semistable
