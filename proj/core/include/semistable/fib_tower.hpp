#pragma once

#include <cstdint>

namespace semistable {

// Kakutani tower over the Lebesgue-preserving base map
//   T(y) = (lambda^n - y) / (lambda^n - lambda^{n+1}) on (lambda^{n+1}, lambda^n],
// with Fibonacci heights tau(y) = S_n on the n-th branch.
class FibonacciTower {
  public:
    explicit FibonacciTower(double lambda_slope);

    double lambda() const { return lambda_; }
    double alpha() const { return alpha_; }

    long base_branch(double y) const;        // n with y in (lambda^{n+1}, lambda^n]
    double base_eval(double y) const;        // T(y)
    std::uint64_t return_time(double y) const;  // S_n on the n-th branch

    struct State {
        double y = 1.0;
        std::uint64_t level = 1;
    };
    State step(const State& s) const;

    static std::uint64_t fibonacci(long n);  // S_0, S_1, ... = 1, 2, 3, 5, ...

  private:
    double lambda_, alpha_;
};

// h(A_{k_n} x) of the tail reconstruction along the norming subsequence, at
// a continuity point x of the amplitude; converges to 0 in n.
struct FibTailH {
    double value = 0.0;
    bool continuity_ok = true;  // false when frac(log_G(x/q0)) vanishes
};

FibTailH fib_tail_h(const FibonacciTower& tower, long n, double x);

}  // namespace semistable
