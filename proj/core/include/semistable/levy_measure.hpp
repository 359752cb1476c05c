#pragma once

#include <complex>
#include <vector>

#include "semistable/log_periodic.hpp"

namespace semistable {

using cplx = std::complex<double>;

// Geometric atom ladder: atoms at x0 r^k with mass a0 c^{-k}, k in Z.
struct LevyLadder {
    double x0 = 1.0;
    double a0 = 1.0;
};

// Power mode: tail contribution kappa * x^{-(alpha - i omega)}.
struct LevyMode {
    cplx kappa{1.0, 0.0};
    double omega = 0.0;
};

struct LevyAtom {
    double x = 1.0;
    double mass = 1.0;
};

// Nonnegative Levy measure on (0,inf) whose tail scales as T(r x) = T(x)/c.
// Ladders carry the jump part, modes the absolutely continuous part; single
// atoms support non-log-periodic surrogates used in tests.
class LevyMeasure {
  public:
    double alpha = 0.5;
    double c = 2.0;
    double r = 4.0;  // c^{1/alpha}
    std::vector<LevyLadder> ladders;
    std::vector<LevyMode> modes;
    std::vector<LevyAtom> atoms;

    bool mode_only() const { return ladders.empty() && atoms.empty(); }

    // nu((x, inf))
    double tail(double x) const;
    // density of the mode part (zero for pure ladders)
    double mode_density(double x) const;
    // D with density_modes(x) <= D x^{-alpha-1}
    double mode_density_envelope() const;

    // psi(t) = Int (e^{itx} - 1) dnu.  Requires Im t >= 0 unless mode_only().
    cplx psi(cplx t, double tol = 1e-14) const;

    // Laplace exponent Phi(h) = Int (1 - e^{-hx}) dnu and derivatives.
    double laplace(double h) const;
    double laplace_d1(double h) const;   // Int x e^{-hx} dnu
    double laplace_d2(double h) const;   // Int x^2 e^{-hx} dnu
    double mean_below(double eps) const; // Int_0^eps x dnu

    // h with laplace_d1(h) = x (unique; laplace_d1 is decreasing).
    double solve_saddle(double x) const;

    // largest atom weight scale still active at damping h (0 when atomless)
    double smallest_active_atom(double h, double tol) const;
};

// Measure of the law with position parameter lambda built from amplitude m:
// tail M(lambda^{1/alpha} x) / x^alpha.
LevyMeasure levy_from_amplitude(const LogPeriodicM& m, double lambda);

// Single-atom surrogate (compound Poisson) used by tests.
LevyMeasure levy_single_atom(double x, double mass);

}  // namespace semistable
