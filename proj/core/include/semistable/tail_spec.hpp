#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "semistable/log_periodic.hpp"

namespace semistable {

// Lattice return-time law tau with tail
//   P(tau > x) = ell(x) x^{-alpha} [ M(delta(x)) + h(x) ],
// where M is log-periodic, k_n = floor(c^n), A_n = n^{1/alpha} ell1(n), and h
// is the residual closing the identity exactly.  tail_bar is an exact step
// function of x; the chain convention indexes the lattice pmf as
// f_k = P(tau = k+1).
struct TailSpec {
    std::string family = "custom";
    double alpha = 0.5;
    double c = 2.0;
    LogPeriodicM m;
    double eps = 0.0;          // wang perturbation
    double lambda_slope = 0.0; // fibonacci branch slope
    double m0 = 1.0;           // constant-amplitude scale
    std::uint64_t lattice_cap = 1ULL << 20;

    std::function<double(double)> tail;        // P(tau > x), x >= 0
    std::function<double(double)> ell;         // slowly varying (default == 1)
    std::function<double(double)> ell1;        // paired slowly varying (default == 1)
    bool unit_ell = true;
    // smallest integer t >= 1 with tail(t) < v  (inverse transform hint)
    std::function<std::uint64_t(double)> quantile;

    double tail_bar(double x) const { return x < 0.0 ? 1.0 : tail(x); }
    double tau_pmf(std::uint64_t j) const {  // P(tau = j), j >= 1
        return tail_bar(static_cast<double>(j) - 1.0) - tail_bar(static_cast<double>(j));
    }
    double chain_pmf(std::uint64_t k) const { return tau_pmf(k + 1); }

    // subsequence k_n = floor(c^n) and norming sequences
    double k_n(long n) const;
    double norming_A(double n) const;          // A_n = n^{1/alpha} ell1(n)
    double A_kn(long n) const;                 // A(k_n)
    std::uint64_t norming_a(double n) const;   // integer a_n ~ n^alpha / ell(n)

    double delta(double x) const;              // x / A_{k_n}, A_{k_n} <= x < A_{k_{n+1}}
    double gamma_pos(double x) const;          // x / k_n, k_{n-1} < x <= k_n
    double h_err(double x) const;              // residual of the reconstruction identity

    // tau-pmf prefix for the renewal machinery: g[j] = P(tau = j), j = 0..N
    std::vector<double> tau_pmf_prefix(std::size_t N) const;
};

TailSpec st_petersburg(double alpha);
TailSpec wang_continuous(double alpha, double c, double eps);
TailSpec wang_noncontinuous(double alpha);
TailSpec fibonacci(double lambda_slope);
TailSpec pareto_lattice(double alpha, double m0);  // constant-amplitude anchor

// h_lambda(x) = lambda x / c^{ceil(log_c(lambda x))}, log-periodic in x.
double h_lambda(double lambda, double x, double c);

// Extension of a lattice (ell, h) pair to the continuum, preserving
// tail_bar(x) = tail_bar(floor(x)) exactly.
TailSpec extend_discrete(const TailSpec& spec);

// iid tau draws; deterministic per (seed, chunk) regardless of threading.
std::vector<std::uint64_t> sample_tau(const TailSpec& spec, std::uint64_t seed, std::size_t n);

// structured-text serialization (exact round-trip)
std::string tail_spec_to_json(const TailSpec& spec);
TailSpec tail_spec_from_json(const std::string& text);

// numeric validation of a user-supplied (ell, ell1) pairing: A(a_n)/n -> 1
double norming_composition_gap(const TailSpec& spec, double n_lo, double n_hi, int points);

}  // namespace semistable
