#include "semistable/renewal_path.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "semistable/rng.hpp"

namespace semistable {

RenewalPath simulate_returns(const TailSpec& spec, std::uint64_t n, std::uint64_t seed) {
    if (n < 1) throw std::domain_error("simulate_returns: n must be positive");
    RenewalPath p;
    p.horizon = n;
    p.Z.push_back(0);
    std::mt19937_64 rng = make_rng(seed, 0);
    std::uint64_t z = 0;
    while (z <= n - 1) {
        std::uint64_t tau = spec.quantile(uniform01(rng));
        p.taus.push_back(tau);
        z += tau;
        p.Z.push_back(z);
    }
    // S_n = max{m >= 1 : Z_{m-1} <= n-1}; Z_0 = 0 guarantees m = 1 qualifies
    std::uint64_t s = 0;
    for (std::size_t m = 1; m <= p.taus.size() + 1; ++m)
        if (p.Z[m - 1] <= n - 1) s = m;
    p.S_n = s;
    return p;
}

bool duality_holds(const RenewalPath& path) {
    const std::uint64_t n = path.horizon;
    for (std::uint64_t m = 1; m <= path.S_n + 1; ++m) {
        if (m - 1 >= path.Z.size()) break;
        bool lhs = path.S_n >= m;
        bool rhs = path.Z[m - 1] <= n - 1;
        if (lhs != rhs) return false;
    }
    return true;
}

namespace {

// S_n for one path without storing the trajectory
std::uint64_t occupation_once(const TailSpec& spec, std::uint64_t n, std::mt19937_64& rng) {
    std::uint64_t z = 0, m = 0;
    while (z <= n - 1) {
        ++m;  // visit number m occurred at time z
        z += spec.quantile(uniform01(rng));
    }
    return m;
}

}  // namespace

std::vector<std::uint64_t> occupation_ensemble(const TailSpec& spec, std::uint64_t n,
                                               std::size_t n_paths, std::uint64_t seed,
                                               int threads) {
    std::vector<std::uint64_t> out(n_paths);
    const std::size_t nchunks = (n_paths + kSampleChunk - 1) / kSampleChunk;
    auto work = [&](std::size_t c0, std::size_t c1) {
        for (std::size_t ci = c0; ci < c1; ++ci) {
            std::mt19937_64 rng = make_rng(seed, ci);
            const std::size_t lo = ci * kSampleChunk, hi = std::min(n_paths, lo + kSampleChunk);
            for (std::size_t i = lo; i < hi; ++i) out[i] = occupation_once(spec, n, rng);
        }
    };
    int nt = std::max(1, threads);
    if (nt == 1 || nchunks < 2) {
        work(0, nchunks);
    } else {
        std::vector<std::thread> pool;
        std::size_t per = (nchunks + nt - 1) / nt;
        for (int t = 0; t < nt; ++t) {
            std::size_t c0 = t * per, c1 = std::min(nchunks, c0 + per);
            if (c0 >= c1) break;
            pool.emplace_back(work, c0, c1);
        }
        for (auto& th : pool) th.join();
    }
    return out;
}

EmpiricalCdf empirical_cdf_S(const TailSpec& spec, std::uint64_t n,
                             const std::vector<double>& grid, std::size_t n_samples,
                             std::uint64_t seed, int threads) {
    if (n_samples < 1000) throw std::domain_error("empirical_cdf_S: need at least 1e3 samples");
    EmpiricalCdf e;
    e.grid = grid;
    e.a_n = spec.norming_a(static_cast<double>(n));
    std::vector<std::uint64_t> s = occupation_ensemble(spec, n, n_samples, seed, threads);
    std::sort(s.begin(), s.end());
    e.value.resize(grid.size());
    e.stderr_.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        // P(S_n <= a_n x): S_n <= floor(a_n x)
        double thr = std::floor(static_cast<double>(e.a_n) * grid[i]);
        auto it = std::upper_bound(s.begin(), s.end(), static_cast<std::uint64_t>(std::max(0.0, thr)));
        double p = static_cast<double>(it - s.begin()) / static_cast<double>(n_samples);
        e.value[i] = p;
        e.stderr_[i] = std::sqrt(std::max(p * (1.0 - p), 1.0 / n_samples) / n_samples);
    }
    return e;
}

}  // namespace semistable
