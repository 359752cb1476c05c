#pragma once

#include <cstdint>

namespace semistable {

// Countably piecewise linear interval map with an indifferent (or
// subsequence-indifferent) fixed point at 0: branch nodes xi_n decrease to 0,
// T(xi_n) = xi_{n-1}, and the last branch is 2x-1 on (1/2, 1].
class WangMap {
  public:
    static WangMap continuous(double alpha, double c, double eps);
    static WangMap noncontinuous(double alpha);

    double alpha() const { return alpha_; }
    double c() const { return c_; }
    double eps() const { return eps_; }
    bool is_continuous() const { return continuous_; }

    double xi(double n) const;  // xi_0 = 1, xi_1 = 1/2
    double eval(double x) const;
    // first return time to [1/2, 1]: tau = n+1 iff x in ((1+xi_{n+1})/2, (1+xi_n)/2]
    std::uint64_t return_time(double x) const;
    // n >= 0 with y in (xi_{n+1}, xi_n]; y must lie in (0, 1]
    std::uint64_t branch_of(double y) const;

  private:
    double alpha_ = 0.5, c_ = 2.0, eps_ = 0.0;
    bool continuous_ = true;
};

struct DerivativeLimits {
    double liminf_est = 1.0;
    double limsup_est = 1.0;
    double restricted_ratio = 1.0;  // ratio at n ~ 1e4 away from the jump set
};

// Limit points of T(xi_n)/xi_n for the noncontinuous variant, and the ratio
// along indices avoiding floor(2^{k/alpha}).
DerivativeLimits noncont_derivative_limits(const WangMap& map, long n_max = 100000);

}  // namespace semistable
