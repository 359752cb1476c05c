#include "semistable/fib_tower.hpp"

#include <cmath>
#include <stdexcept>

#include "semistable/log_periodic.hpp"

namespace semistable {

FibonacciTower::FibonacciTower(double lambda_slope) : lambda_(lambda_slope) {
    const double G = golden_mean();
    if (!(lambda_slope > 1.0 / G && lambda_slope < 1.0))
        throw std::domain_error("lambda outside (1/G, 1)");
    alpha_ = -std::log(lambda_slope) / std::log(G);
}

long FibonacciTower::base_branch(double y) const {
    if (!(y > 0.0 && y <= 1.0)) throw std::domain_error("base_branch: y outside (0,1]");
    long n = static_cast<long>(std::floor(std::log(y) / std::log(lambda_)));
    // settle y in (lambda^{n+1}, lambda^n]
    while (y > std::pow(lambda_, static_cast<double>(n))) --n;
    while (y <= std::pow(lambda_, static_cast<double>(n + 1))) ++n;
    return n;
}

double FibonacciTower::base_eval(double y) const {
    if (y == 0.0) return 0.0;
    long n = base_branch(y);
    double ln = std::pow(lambda_, static_cast<double>(n));
    double ln1 = std::pow(lambda_, static_cast<double>(n + 1));
    return (ln - y) / (ln - ln1);
}

std::uint64_t FibonacciTower::fibonacci(long n) {
    if (n < 0) throw std::domain_error("fibonacci: n must be nonnegative");
    std::uint64_t a = 1, b = 2;
    for (long i = 0; i < n; ++i) {
        std::uint64_t t = a + b;
        a = b;
        b = t;
    }
    return a;
}

std::uint64_t FibonacciTower::return_time(double y) const {
    return fibonacci(base_branch(y));
}

FibonacciTower::State FibonacciTower::step(const State& s) const {
    std::uint64_t tau = return_time(s.y);
    if (s.level < tau) return {s.y, s.level + 1};
    return {base_eval(s.y), 1};
}

FibTailH fib_tail_h(const FibonacciTower& tower, long n, double x) {
    FibTailH out;
    const double G = golden_mean();
    const double q0 = fibonacci_q0();
    const double alpha = tower.alpha();
    const double lam = tower.lambda();
    const double qinf = lam * std::pow(q0, alpha);
    // continuity points of the amplitude have frac(log_G(x/q0)) > 0
    double lg = std::log(x / q0) / std::log(G);
    double frac = lg - std::floor(lg);
    if (frac < 1e-9 || frac > 1.0 - 1e-9) out.continuity_ok = false;

    // argument A_{k_n} x with k_n = floor(c^n), A_k = k^{1/alpha}
    double kn = std::floor(std::pow(1.0 / lam, static_cast<double>(n)));
    double arg = std::pow(kn, 1.0 / alpha) * x;
    // bracket S_m <= arg < S_{m+1}
    double a = 1.0, b = 2.0;
    long m = 0;
    while (b <= arg) {
        double t = a + b;
        a = b;
        b = t;
        ++m;
    }
    double qm = lam * std::pow(q0, alpha) *
                std::pow(1.0 - std::pow(-1.0, static_cast<double>(m)) *
                                   std::pow(G, -2.0 * (static_cast<double>(m) + 2.0)),
                         alpha);
    double lg_arg = std::log(arg / q0) / std::log(G);
    double frac_arg = lg_arg - std::floor(lg_arg);
    double t1 = qinf * (std::pow(G, alpha * (std::log(arg / a) / std::log(G))) -
                        std::pow(G, alpha * frac_arg));
    double t2 = (qm - qinf) * std::pow(G, alpha * (std::log(arg / a) / std::log(G)));
    out.value = t1 + t2;
    return out;
}

}  // namespace semistable
