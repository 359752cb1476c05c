#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace semistable {

// One oscillating power term of a log-periodic amplitude: kappa * x^{i omega}.
// Terms come in conjugate pairs so the sum is real.
struct AmpMode {
    std::complex<double> kappa;
    double omega = 0.0;
};

// Exponential sawtooth component: m0 * c^{ frac(log_r(x/p)) }, which is the
// generic shape of a log-periodic amplitude whose tail M(x)/x^alpha is a pure
// step function (jump abscissa p within one period, drop factor c).
struct StepComponent {
    double p = 1.0;
    double m0 = 1.0;
};

// Strictly positive amplitude M with M(c^{1/alpha} x) = M(x) and
// x -> M(x)/x^alpha nonincreasing.  When the exact structure is known
// (all built-in families), `modes` and `steps` reproduce eval() exactly:
//   M(x) = sum_j Re[kappa_j x^{i omega_j}] + sum_s m0_s c^{ frac(log_r(x/p_s)) }.
struct LogPeriodicM {
    double alpha = 0.5;
    double c = 2.0;
    std::function<double(double)> eval;
    std::vector<double> jump_hints;  // jump abscissae within [1, period)
    std::vector<AmpMode> modes;
    std::vector<StepComponent> steps;
    bool has_spectrum = false;
    std::string family = "custom";

    double period() const;  // c^{1/alpha}
    double spectrum_eval(double x) const;
    double min_on_period(int grid = 4096) const;
    double max_on_period(int grid = 4096) const;
};

struct MValidation {
    bool ok = true;
    double period_gap = 0.0;      // max relative defect of M(r x) = M(x)
    double tail_monotone_gap = 0.0;  // max increase of M(x)/x^alpha on the grid
    double spectrum_gap = 0.0;    // max |eval - spectrum| when has_spectrum
    double inf = 0.0, sup = 0.0;
    std::string message;
};

// Grid checks of the defining invariants (period identity to 1e-12 relative,
// positive bounded, M(x)/x^alpha nonincreasing).
MValidation validate_log_periodic(const LogPeriodicM& m, int grid_per_period = 4096);

// Built-in amplitude families.
LogPeriodicM constant_amplitude(double alpha, double c, double m0);
LogPeriodicM st_petersburg_amplitude(double alpha);
LogPeriodicM wang_amplitude(double alpha, double c, double eps);
LogPeriodicM wang_noncontinuous_amplitude(double alpha);
LogPeriodicM fibonacci_amplitude(double lambda_slope);

// Scale an amplitude by a positive constant (used when a return-time tail is
// known only up to an invariant-density factor).
LogPeriodicM scale_amplitude(const LogPeriodicM& m, double factor);

// Numeric spectral analysis for user-supplied amplitudes: detects tail jumps
// (threshold on the one-sided difference) and fits Fourier modes to the rest.
LogPeriodicM fit_spectrum(const LogPeriodicM& m, int max_modes = 48,
                          double jump_threshold = 1e-9);

// floor/ceil of log_b(v) with a guard band + power polish, so that exact
// period points classify onto the boundary index.
long floor_log(double v, double base);
long ceil_log(double v, double base);

// Golden-ratio constants of the Fibonacci family.
double fibonacci_q0();
double golden_mean();

}  // namespace semistable
