#pragma once

#include <cstdint>
#include <vector>

#include "semistable/tail_spec.hpp"

namespace semistable {

// One simulated excursion record: return increments tau_i, partial sums
// Z_m = tau_1 + ... + tau_m, and the occupation count S_n of the renewal
// state up to time n-1 (Z_0 = 0, so S_n >= 1).
struct RenewalPath {
    std::vector<std::uint64_t> taus;
    std::vector<std::uint64_t> Z;  // Z[0] = 0
    std::uint64_t horizon = 0;
    std::uint64_t S_n = 0;
};

RenewalPath simulate_returns(const TailSpec& spec, std::uint64_t n, std::uint64_t seed);

// Exact pathwise duality: S_n >= m iff Z_{m-1} <= n-1 for all m <= S_n + 1.
bool duality_holds(const RenewalPath& path);

// Occupation counts S_n for an ensemble of independent paths. Deterministic
// for fixed (seed, chunking) independent of the worker count.
std::vector<std::uint64_t> occupation_ensemble(const TailSpec& spec, std::uint64_t n,
                                               std::size_t n_paths, std::uint64_t seed,
                                               int threads = 1);

// Monte Carlo curve P(S_n/a_n <= x) on a grid, with binomial standard errors.
struct EmpiricalCdf {
    std::vector<double> grid;
    std::vector<double> value;
    std::vector<double> stderr_;
    std::uint64_t a_n = 0;
};

EmpiricalCdf empirical_cdf_S(const TailSpec& spec, std::uint64_t n,
                             const std::vector<double>& grid, std::size_t n_samples,
                             std::uint64_t seed, int threads = 1);

}  // namespace semistable
