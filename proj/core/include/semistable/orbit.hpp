#pragma once

#include <cstdint>
#include <vector>

#include "semistable/fib_tower.hpp"
#include "semistable/smooth_map.hpp"
#include "semistable/wang_map.hpp"

namespace semistable {

// Number of visits to the reference set Y in the first n steps of one orbit.
// Y = (1/2, 1] for the interval maps, the base level for the tower.
std::uint64_t orbit_occupation(const WangMap& map, double x0, std::uint64_t n_steps);
std::uint64_t orbit_occupation(const SmoothWangMap& map, double x0, std::uint64_t n_steps);
std::uint64_t orbit_occupation(const FibonacciTower& tower, double y0, std::uint64_t n_steps);

// Ensembles over uniform starts in Y (deterministic per seed and chunking).
std::vector<std::uint64_t> orbit_ensemble(const WangMap& map, std::uint64_t n_steps,
                                          std::size_t n_orbits, std::uint64_t seed,
                                          int threads = 1);
std::vector<std::uint64_t> orbit_ensemble(const SmoothWangMap& map, std::uint64_t n_steps,
                                          std::size_t n_orbits, std::uint64_t seed,
                                          int threads = 1);
std::vector<std::uint64_t> orbit_ensemble(const FibonacciTower& tower, std::uint64_t n_steps,
                                          std::size_t n_orbits, std::uint64_t seed,
                                          int threads = 1);

// Empirical return-time tail from uniform starts on Y: P(tau > n) estimates.
std::vector<double> empirical_return_tail(const WangMap& map, const std::vector<long>& ns,
                                          std::size_t n_samples, std::uint64_t seed);

}  // namespace semistable
