#include "semistable/wang_map.hpp"

#include <cmath>
#include <stdexcept>

#include "semistable/log_periodic.hpp"

namespace semistable {

WangMap WangMap::continuous(double alpha, double c, double eps) {
    wang_amplitude(alpha, c, eps);  // validates parameters
    WangMap m;
    m.alpha_ = alpha;
    m.c_ = c;
    m.eps_ = eps;
    m.continuous_ = true;
    return m;
}

WangMap WangMap::noncontinuous(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("alpha outside (0,1)");
    WangMap m;
    m.alpha_ = alpha;
    m.c_ = 2.0;
    m.eps_ = 0.0;
    m.continuous_ = false;
    return m;
}

double WangMap::xi(double n) const {
    if (n <= 0.0) return 1.0;
    if (continuous_) {
        const double a = 2.0 * M_PI * alpha_ / std::log(c_);
        return 0.5 * std::pow(n, -alpha_) * (1.0 + 2.0 * eps_ * std::sin(a * std::log(n)));
    }
    double l = alpha_ * std::log2(n);
    double f = l - std::floor(l);
    return 0.5 * std::pow(n, -alpha_) * (1.0 + std::pow(2.0, f));
}

std::uint64_t WangMap::branch_of(double y) const {
    if (!(y > 0.0 && y <= 1.0)) throw std::domain_error("branch_of: y outside (0,1]");
    if (y > 0.5) return 0;
    // invert the power-law envelope, then settle by exact node comparison
    double guess = std::pow(2.0 * y / (continuous_ ? 1.0 : 1.5), -1.0 / alpha_);
    std::uint64_t n = guess < 1.0 ? 1 : static_cast<std::uint64_t>(guess);
    if (n < 1) n = 1;
    while (n > 1 && xi(static_cast<double>(n)) < y) --n;
    while (xi(static_cast<double>(n + 1)) >= y) ++n;
    return n;  // y in (xi_{n+1}, xi_n]
}

double WangMap::eval(double x) const {
    if (x > 0.5 && x <= 1.0) return 2.0 * x - 1.0;
    if (x == 0.0) return 0.0;
    if (!(x > 0.0 && x <= 1.0)) throw std::domain_error("eval: x outside [0,1]");
    std::uint64_t n = branch_of(x);
    if (n == 0) return 2.0 * x - 1.0;
    double xin = xi(static_cast<double>(n)), xin1 = xi(static_cast<double>(n + 1));
    double xim = xi(static_cast<double>(n - 1));
    // snap near-node inputs onto the node
    if (std::abs(x - xin) < 1e-14 * xin) return xim;
    if (std::abs(x - xin1) < 1e-14 * xin1) return xin;
    return ((xin - x) * xin + (x - xin1) * xim) / (xin - xin1);
}

std::uint64_t WangMap::return_time(double x) const {
    if (!(x > 0.5 && x <= 1.0)) throw std::domain_error("return_time: x outside (1/2,1]");
    double y = 2.0 * x - 1.0;
    if (y <= 0.0) throw std::domain_error("return_time: boundary point");
    return branch_of(y) + 1;
}

DerivativeLimits noncont_derivative_limits(const WangMap& map, long n_max) {
    if (map.is_continuous())
        throw std::domain_error("derivative limit points: noncontinuous variant only");
    DerivativeLimits d;
    double lo = 1e18, hi = 0.0;
    for (long n = n_max / 2; n <= n_max; ++n) {
        double ratio = map.xi(static_cast<double>(n - 1)) / map.xi(static_cast<double>(n));
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    d.liminf_est = lo;
    d.limsup_est = hi;
    // ratio at n ~ 1e4 with no integer between alpha log2 n and alpha log2(n+1)
    long n0 = 10000;
    auto crosses = [&](long n) {
        return std::floor(map.alpha() * std::log2(static_cast<double>(n))) !=
               std::floor(map.alpha() * std::log2(static_cast<double>(n + 1)));
    };
    while (crosses(n0) || crosses(n0 - 1)) ++n0;
    d.restricted_ratio = map.xi(static_cast<double>(n0 - 1)) / map.xi(static_cast<double>(n0));
    return d;
}

}  // namespace semistable
