#pragma once

#include <cstdint>
#include <vector>

#include "semistable/semistable_law.hpp"
#include "semistable/tail_spec.hpp"

namespace semistable {

// Comparison of the occupation tail P(S_n >= a_n x) with the moving reference
// P(V_{gamma(a_n x)} <= x^{-1/alpha}) over a grid of x.
struct MergingReport {
    std::vector<double> grid;
    std::vector<double> empirical;
    std::vector<double> reference;
    std::vector<double> gap;
    double sup_gap = 0.0;
    std::uint64_t n = 0;
    std::uint64_t a_n = 0;
    std::size_t n_samples = 0;
};

// 20 logarithmically spaced grid points on [0.1, 10].
std::vector<double> default_merging_grid();

MergingReport merging_gap(const TailSpec& spec, std::uint64_t n,
                          const std::vector<double>& grid, std::size_t n_samples,
                          std::uint64_t seed, const QuadratureConfig& q = {},
                          int threads = 1);

// Same report but with the (deliberately wrong) constant position parameter
// gamma(a_n); used to pin down the moving-index construction in tests.
MergingReport merging_gap_wrong_index(const TailSpec& spec, std::uint64_t n,
                                      const std::vector<double>& grid, std::size_t n_samples,
                                      std::uint64_t seed, const QuadratureConfig& q = {},
                                      int threads = 1);

}  // namespace semistable
