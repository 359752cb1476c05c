#pragma once

#include <cstddef>
#include <vector>

namespace semistable {

// Renewal sequence u_0 = 1, u_n = sum_{j=1}^{n} g_j u_{n-j}, where g_j is the
// return-time pmf P(tau = j), g_0 = 0.
struct RenewalSequence {
    std::vector<double> g;  // pmf, index 0..N (g[0] ignored)
    std::vector<double> u;  // u_0..u_N
    std::vector<double> U;  // prefix sums: U[n] = u_0 + ... + u_n

    std::size_t horizon() const { return u.empty() ? 0 : u.size() - 1; }
    // U(x) = sum_{j <= x} u_j, step function of a real argument
    double partial_sum(double x) const;
};

// Direct quadratic recursion.
RenewalSequence renewal_sequence(const std::vector<double>& g, std::size_t N);

// Divide-and-conquer FFT path; identical values up to roundoff (~1e-12).
std::vector<double> renewal_sequence_fft(const std::vector<double>& g, std::size_t N);

}  // namespace semistable
