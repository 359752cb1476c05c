#pragma once

#include <cstdint>
#include <vector>

namespace semistable {

// Coefficient tables of the C^1 quadratic-branch interval map built over the
// continuous node sequence xi_n.  rem_n is the exact branch-slope remainder
// computed from xi; the alternating series defining B_n is accelerated with
// an Euler tail so its truncation error stays below 1e-12 n^{-2}.
struct SmoothCoeffs {
    std::size_t N = 0;
    std::vector<double> alpha_n;  // valid from index 1
    std::vector<double> rem_n;    // valid from index 2: Dxi_{n-2}/Dxi_{n-1} - 1 - alpha_n/n
    std::vector<double> q_n;      // valid from index 3
    std::vector<double> B_n;      // valid from index 2
    std::vector<double> A_n;      // valid from index 2
    double tail_bound = 0.0;      // Euler-tail truncation bound at the far end
};

SmoothCoeffs smooth_coeffs(double alpha, double c, double eps, std::size_t N,
                           int tail_terms = 64);

class SmoothWangMap {
  public:
    SmoothWangMap(double alpha, double c, double eps, std::size_t N = 20000,
                  int tail_terms = 64);

    double alpha() const { return alpha_; }
    double c() const { return c_; }
    double eps() const { return eps_; }
    const SmoothCoeffs& coeffs() const { return co_; }

    double xi(double n) const;
    std::uint64_t branch_of(double y) const;  // y in (xi_{n+1}, xi_n]
    double eval(double x) const;
    double deriv(double x) const;

    // residuals of the branch glue conditions at node n (value, derivative)
    double glue_value_residual(std::size_t n) const;
    double glue_deriv_residual(std::size_t n) const;

  private:
    double alpha_, c_, eps_;
    SmoothCoeffs co_;
};

// sup over the branches J_n, n <= n_max, of |F''| / (F')^2 for the induced
// first-return map F on [1/2, 1], via the chain rule along the branch orbit.
double distortion_bound(const SmoothWangMap& map, long n_max);

}  // namespace semistable
