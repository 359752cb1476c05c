#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "semistable/levy_measure.hpp"
#include "semistable/log_periodic.hpp"

namespace semistable {

struct QuadratureConfig {
    double t_max = 256.0;        // initial truncation of the inversion integral
    int n_nodes = 96;            // minimum node budget per octave (>= 64)
    bool jump_split = true;      // atoms handled exactly, not through quadrature
    double small_jump_cut = 1e-4;  // sampling truncation epsilon
    double tol = 1e-8;           // target absolute error of inversion
    long max_panels = 400000;    // per-evaluation panel budget

    void validate() const {
        if (!(t_max > 0.0)) throw std::invalid_argument("t_max must be positive");
        if (n_nodes < 64) throw std::invalid_argument("n_nodes must be at least 64");
        if (!(small_jump_cut > 0.0 && small_jump_cut < 1.0))
            throw std::invalid_argument("small_jump_cut outside (0,1)");
    }
};

struct QuadratureError : std::runtime_error {
    explicit QuadratureError(const std::string& what) : std::runtime_error(what) {}
};

struct Accuracy {
    double value = 0.0;
    double error_bound = 0.0;
    long nodes = 0;
    std::string method;
};

struct SampleResult {
    std::vector<double> values;
    double bias_bound = 0.0;    // C eps^{1-alpha} bound on the truncation bias
    double mean_shift = 0.0;    // compensating drift actually added
    double poisson_rate = 0.0;  // jump intensity above the cut
};

// Nonnegative semistable law V_lambda: Levy function
// R_lambda(x) = -M(lambda^{1/alpha} x) / x^alpha.
class SemistableLaw {
  public:
    SemistableLaw(LogPeriodicM m, double lambda);

    double alpha() const { return m_.alpha; }
    double c() const { return m_.c; }
    double lambda() const { return lambda_; }
    const LogPeriodicM& amplitude() const { return m_; }
    const LevyMeasure& measure() const { return nu_; }
    // the alpha-stable sanity case (constant amplitude): flagged, not forbidden
    bool is_stable_case() const;

    // -R_lambda(x) = M(lambda^{1/alpha} x) / x^alpha
    double levy_tail(double x) const;

    // nu_lambda(x) = 1 - x^{-alpha} M(x lambda^{1/alpha}) / M(lambda^{1/alpha}), x >= 1
    double nu_lambda(double x) const;

    std::complex<double> char_fn(double t, const QuadratureConfig& q = {}) const;

    // G_lambda(x) by characteristic-function inversion, with accuracy report.
    Accuracy cdf(double x, const QuadratureConfig& q = {}) const;

    // log G_lambda(x); valid deep into the left tail.
    Accuracy log_cdf(double x, const QuadratureConfig& q = {}) const;

    SampleResult sample(std::uint64_t seed, std::size_t n, const QuadratureConfig& q = {}) const;

  private:
    LogPeriodicM m_;
    double lambda_;
    LevyMeasure nu_;
};

// Inversion driver shared with surrogate measures used in tests.
Accuracy cdf_from_measure(const LevyMeasure& nu, double x, const QuadratureConfig& q,
                          bool want_log = false);
std::complex<double> char_fn_from_measure(const LevyMeasure& nu, double t);
SampleResult sample_from_measure(const LevyMeasure& nu, std::uint64_t seed, std::size_t n,
                                 const QuadratureConfig& q);

// sup over the lambda grid of |x^alpha (1 - G_lambda(x)) / M(x lambda^{1/alpha}) - 1|
double uniform_subexp_gap(const LogPeriodicM& m, double x,
                          const std::vector<double>& lambda_grid,
                          const QuadratureConfig& q = {});

}  // namespace semistable
