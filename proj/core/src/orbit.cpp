#include "semistable/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "semistable/rng.hpp"

namespace semistable {

namespace {

struct EscapeError : std::runtime_error {
    EscapeError() : std::runtime_error("orbit left [0,1] beyond tolerance (branch bug)") {}
};

// One excursion-tracked orbit for the piecewise linear map.
std::uint64_t occupation_wang(const WangMap& map, double x0, std::uint64_t n_steps) {
    double x = x0;
    std::uint64_t count = 0, step = 0;
    if (!(x >= 0.0 && x <= 1.0 + 1e-12)) throw EscapeError();
    while (step < n_steps) {
        if (x > 0.5) {
            // inside Y
            ++count;
            ++step;
            x = 2.0 * x - 1.0;
            if (x > 1.0 + 1e-12 || x < -1e-12) throw EscapeError();
            continue;
        }
        if (x <= 0.0) {
            // absorbed at the fixed point; no further visits
            step = n_steps;
            break;
        }
        // excursion: branch index decreases by one each step until Y
        std::uint64_t b = map.branch_of(x);
        double xin1 = map.xi(static_cast<double>(b + 1));
        double xin = map.xi(static_cast<double>(b));
        double xim = map.xi(static_cast<double>(b - 1));
        while (b >= 1 && step < n_steps) {
            x = ((xin - x) * xin + (x - xin1) * xim) / (xin - xin1);
            ++step;
            --b;
            if (b >= 1) {
                xin1 = xin;
                xin = xim;
                xim = map.xi(static_cast<double>(b - 1));
                if (x > xin * (1.0 + 1e-9) || x < xin1 * (1.0 - 1e-9)) throw EscapeError();
            }
        }
    }
    return count;
}

// Coefficients of branch n of the smooth map, rolled down an excursion via
// B_{n-1} = q_n - B_n (one q evaluation per step).
struct SmoothRoll {
    const SmoothWangMap* map;
    double a_here = 0.0;   // alpha_n / n
    double a_prev = 0.0;   // alpha_{n-1} / (n-1)
    double B = 0.0;        // B_n
    std::uint64_t n = 0;

    static double alpha_over(const SmoothWangMap& m, double n) {
        double a = 2.0 * M_PI * m.alpha() / std::log(m.c());
        double x = a * std::log(n);
        double s = std::sin(x), co = std::cos(x);
        double den = m.alpha() * (1.0 + 2.0 * m.eps() * s) - 2.0 * m.eps() * a * co;
        return (1.0 + m.alpha() - 2.0 * m.eps() * a * (a * s + m.alpha() * co) / den) / n;
    }
    static double rem(const SmoothWangMap& m, double n) {
        double d2 = m.xi(n - 2.0) - m.xi(n - 1.0);
        double d1 = m.xi(n - 1.0) - m.xi(n);
        return d2 / d1 - 1.0 - alpha_over(m, n) * 1.0;
    }
    static double q(const SmoothWangMap& m, double n) {
        return 2.0 * rem(m, n) - (alpha_over(m, n - 1.0) - alpha_over(m, n));
    }

    void seed(const SmoothWangMap& m, std::uint64_t branch_n) {
        map = &m;
        n = branch_n;
        if (n <= m.coeffs().N) {
            B = m.coeffs().B_n[n];
            a_here = m.coeffs().alpha_n[n] / static_cast<double>(n);
            a_prev = m.coeffs().alpha_n[n - 1] / static_cast<double>(n - 1);
        } else {
            // alternating suffix seeded far out, then rolled with no growth
            double nn = static_cast<double>(n);
            double acc = 0.0;
            long I = static_cast<long>(n) + 96;
            for (long i = static_cast<long>(n) + 1; i <= I; ++i) {
                double t = q(m, static_cast<double>(i));
                acc += (i % 2 == 0) ? t : -t;
            }
            B = ((n + 1) % 2 == 0 ? 1.0 : -1.0) * acc;
            a_here = alpha_over(m, nn);
            a_prev = alpha_over(m, nn - 1.0);
        }
    }
    // coefficients (A_n, slope offset) of the current branch
    void coefs(double& A_n, double& slope) {
        q_cache = q(*map, static_cast<double>(n));
        double B_prev = q_cache - B;
        A_n = a_prev - a_here + B_prev - B;
        slope = a_here + B;
        B_next = B_prev;
    }
    void descend() {
        B = B_next;
        --n;
        a_here = a_prev;
        a_prev = n >= 2 ? alpha_over(*map, static_cast<double>(n - 1)) : 0.0;
    }

  private:
    double q_cache = 0.0, B_next = 0.0;
};

std::uint64_t occupation_smooth(const SmoothWangMap& map, double x0, std::uint64_t n_steps) {
    double x = x0;
    std::uint64_t count = 0, step = 0;
    if (!(x >= 0.0 && x <= 1.0 + 1e-12)) throw EscapeError();
    while (step < n_steps) {
        if (x > 0.5) {
            ++count;
            ++step;
            x = 2.0 * x - 1.0;
            if (x > 1.0 + 1e-12 || x < -1e-12) throw EscapeError();
            continue;
        }
        if (x <= 0.0) break;
        std::uint64_t b = map.branch_of(x);  // x in (xi_{b+1}, xi_b]
        SmoothRoll roll;
        roll.seed(map, b + 1);  // branch domain [xi_n, xi_{n-1}] with n = b+1
        double xin = map.xi(static_cast<double>(b + 1));
        double xim = map.xi(static_cast<double>(b));
        while (roll.n >= 2 && step < n_steps) {
            double A, slope;
            roll.coefs(A, slope);
            double dx = x - xin;
            x = 0.5 * A * dx * dx / (xim - xin) + (1.0 + slope) * dx + xim;
            ++step;
            roll.descend();
            if (roll.n >= 2) {
                xin = xim;
                xim = map.xi(static_cast<double>(roll.n - 1));
                if (x > xim * (1.0 + 1e-9) || x < xin * (1.0 - 1e-9)) throw EscapeError();
            }
        }
    }
    return count;
}

std::uint64_t occupation_fib(const FibonacciTower& tower, double y0, std::uint64_t n_steps) {
    FibonacciTower::State s{y0, 1};
    std::uint64_t count = 0;
    for (std::uint64_t step = 0; step < n_steps; ++step) {
        if (s.level == 1) ++count;
        std::uint64_t tau = tower.return_time(s.y);
        if (s.level < tau) {
            ++s.level;
        } else {
            s.y = tower.base_eval(s.y);
            s.level = 1;
            if (!(s.y >= 0.0 && s.y <= 1.0 + 1e-12)) throw EscapeError();
            if (s.y <= 0.0) break;  // absorbed
        }
    }
    return count;
}

// `one` receives a uniform variate in (0,1) and maps it to its start point.
template <typename Fn>
std::vector<std::uint64_t> ensemble(Fn&& one, std::size_t n_orbits, std::uint64_t seed,
                                    int threads) {
    std::vector<std::uint64_t> out(n_orbits);
    const std::size_t nchunks = (n_orbits + kSampleChunk - 1) / kSampleChunk;
    auto work = [&](std::size_t c0, std::size_t c1) {
        for (std::size_t ci = c0; ci < c1; ++ci) {
            std::mt19937_64 rng = make_rng(seed, ci);
            const std::size_t lo = ci * kSampleChunk, hi = std::min(n_orbits, lo + kSampleChunk);
            for (std::size_t i = lo; i < hi; ++i) out[i] = one(uniform01(rng));
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

}  // namespace

std::uint64_t orbit_occupation(const WangMap& map, double x0, std::uint64_t n_steps) {
    return occupation_wang(map, x0, n_steps);
}
std::uint64_t orbit_occupation(const SmoothWangMap& map, double x0, std::uint64_t n_steps) {
    return occupation_smooth(map, x0, n_steps);
}
std::uint64_t orbit_occupation(const FibonacciTower& tower, double y0, std::uint64_t n_steps) {
    return occupation_fib(tower, y0, n_steps);
}

std::vector<std::uint64_t> orbit_ensemble(const WangMap& map, std::uint64_t n_steps,
                                          std::size_t n_orbits, std::uint64_t seed, int threads) {
    return ensemble([&](double u) { return occupation_wang(map, 0.5 + 0.5 * u, n_steps); },
                    n_orbits, seed, threads);
}
std::vector<std::uint64_t> orbit_ensemble(const SmoothWangMap& map, std::uint64_t n_steps,
                                          std::size_t n_orbits, std::uint64_t seed, int threads) {
    return ensemble([&](double u) { return occupation_smooth(map, 0.5 + 0.5 * u, n_steps); },
                    n_orbits, seed, threads);
}
std::vector<std::uint64_t> orbit_ensemble(const FibonacciTower& tower, std::uint64_t n_steps,
                                          std::size_t n_orbits, std::uint64_t seed, int threads) {
    return ensemble([&](double u) { return occupation_fib(tower, u, n_steps); }, n_orbits,
                    seed, threads);
}

std::vector<double> empirical_return_tail(const WangMap& map, const std::vector<long>& ns,
                                          std::size_t n_samples, std::uint64_t seed) {
    std::vector<std::uint64_t> counts(ns.size(), 0);
    const std::size_t nchunks = (n_samples + kSampleChunk - 1) / kSampleChunk;
    for (std::size_t ci = 0; ci < nchunks; ++ci) {
        std::mt19937_64 rng = make_rng(seed, ci);
        const std::size_t lo = ci * kSampleChunk, hi = std::min(n_samples, lo + kSampleChunk);
        for (std::size_t i = lo; i < hi; ++i) {
            double x = 0.5 + 0.5 * uniform01(rng);
            std::uint64_t tau = map.return_time(x);
            for (std::size_t j = 0; j < ns.size(); ++j)
                if (tau > static_cast<std::uint64_t>(ns[j])) ++counts[j];
        }
    }
    std::vector<double> out;
    for (std::size_t j = 0; j < ns.size(); ++j)
        out.push_back(static_cast<double>(counts[j]) / static_cast<double>(n_samples));
    return out;
}

}  // namespace semistable
