#include "semistable/merging.hpp"

#include <algorithm>
#include <cmath>

#include "semistable/renewal_path.hpp"

namespace semistable {

std::vector<double> default_merging_grid() {
    std::vector<double> g;
    for (int i = 0; i < 20; ++i) g.push_back(std::pow(10.0, -1.0 + 2.0 * i / 19.0));
    return g;
}

namespace {

MergingReport merging_impl(const TailSpec& spec, std::uint64_t n, const std::vector<double>& grid,
                           std::size_t n_samples, std::uint64_t seed, const QuadratureConfig& q,
                           int threads, bool moving_index) {
    MergingReport r;
    r.grid = grid;
    r.n = n;
    r.n_samples = n_samples;
    r.a_n = spec.norming_a(static_cast<double>(n));
    std::vector<std::uint64_t> s = occupation_ensemble(spec, n, n_samples, seed, threads);
    std::sort(s.begin(), s.end());
    for (double x : grid) {
        // P(S_n >= a_n x) = P(S_n >= ceil(a_n x)); the (m-1)-st return must
        // occur before the horizon.
        double thr = std::ceil(static_cast<double>(r.a_n) * x * (1.0 - 1e-13));
        auto it = std::lower_bound(s.begin(), s.end(), static_cast<std::uint64_t>(thr));
        double emp = static_cast<double>(s.end() - it) / static_cast<double>(n_samples);
        double gamma_arg = moving_index ? static_cast<double>(r.a_n) * x
                                        : static_cast<double>(r.a_n);
        double lam = spec.gamma_pos(gamma_arg);
        SemistableLaw law(spec.m, lam);
        double ref = law.cdf(std::pow(x, -1.0 / spec.alpha), q).value;
        r.empirical.push_back(emp);
        r.reference.push_back(ref);
        r.gap.push_back(std::abs(emp - ref));
        r.sup_gap = std::max(r.sup_gap, r.gap.back());
    }
    return r;
}

}  // namespace

MergingReport merging_gap(const TailSpec& spec, std::uint64_t n, const std::vector<double>& grid,
                          std::size_t n_samples, std::uint64_t seed, const QuadratureConfig& q,
                          int threads) {
    return merging_impl(spec, n, grid, n_samples, seed, q, threads, true);
}

MergingReport merging_gap_wrong_index(const TailSpec& spec, std::uint64_t n,
                                      const std::vector<double>& grid, std::size_t n_samples,
                                      std::uint64_t seed, const QuadratureConfig& q, int threads) {
    return merging_impl(spec, n, grid, n_samples, seed, q, threads, false);
}

}  // namespace semistable
