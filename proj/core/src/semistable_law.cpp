#include "semistable/semistable_law.hpp"

#include <algorithm>
#include <cmath>

#include "semistable/cgamma.hpp"
#include "semistable/gauss.hpp"
#include "semistable/rng.hpp"

namespace semistable {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct LineResult {
    double log_value = 0.0;  // log of the positive integral estimate
    double rel_bound = 0.0;
    long nodes = 0;
    bool ok = true;
};

// G(x) = -(1/pi) Int_0^inf Im[ exp(-i(s+ih)x + psi(s+ih)) / (s+ih) ] ds,
// valid for every h > 0 because exp(-itx) phi(t) is analytic above the real
// axis.  The integrand is scaled by exp(C) h, C = Phi(h) - h x, so its modulus
// never exceeds 1; G = exp(-C)/(pi h) * (-Int Im[scaled]).
LineResult line_integral(const LevyMeasure& nu, double x, double h, const QuadratureConfig& q) {
    LineResult out;
    const double phi_h = nu.laplace(h);
    const double C = phi_h - h * x;
    const double freq = x + nu.laplace_d1(h);
    const double W = nu.laplace_d2(h);
    double w = 2.0 * kPi / (6.0 * freq);
    if (W > 0.0) w = std::min(w, 0.7 / std::sqrt(W));
    w = std::min(w, 4.0 * h);

    const int order = 24;
    const GaussRule& rule = gauss_legendre(order);
    const cplx ii(0.0, 1.0);

    auto scaled = [&](double s) -> double {
        cplx t(s, h);
        cplx e = -ii * t * x + nu.psi(t) + C;
        // Re e <= 0 by construction
        cplx v = std::exp(e) * (h / t);
        return v.imag();
    };

    double acc = 0.0;
    double peak = 0.0;
    const int window = 256;
    double wmax = 0.0;
    int in_window = 0;
    long panels = 0;
    double s = 0.0;
    const double s_min = 12.0 * std::max(1.0 / std::sqrt(std::max(W, 1e-300)), h);
    double tail_probe = 0.0;
    while (true) {
        double contrib = 0.0;
        for (int i = 0; i < order; ++i)
            contrib += rule.w[i] * scaled(s + 0.5 * w * (1.0 + rule.x[i]));
        contrib *= 0.5 * w;
        acc += contrib;
        out.nodes += order;
        ++panels;
        peak = std::max(peak, std::abs(contrib));
        wmax = std::max(wmax, std::abs(contrib));
        if (++in_window == window) {
            double scale = std::max(std::abs(acc), peak);
            if (s > s_min && wmax < 2e-8 * scale) {
                tail_probe = wmax;
                break;
            }
            wmax = 0.0;
            in_window = 0;
        }
        if (panels >= q.max_panels) {
            double scale = std::max(std::abs(acc), peak);
            if (wmax > 1e-5 * scale) out.ok = false;
            tail_probe = wmax;
            break;
        }
        s += w;
    }
    double integral = -acc;  // Im integral is negative of pi G (scaled)
    if (!(integral > 0.0)) {
        out.ok = false;
        integral = std::max(integral, 1e-300);
    }
    // value = exp(-C) * integral / (pi h)
    out.log_value = -C + std::log(integral / (kPi * h));
    out.rel_bound = (tail_probe * 40.0 + 1e-15 * static_cast<double>(panels) * peak) /
                    std::max(integral, 1e-300);
    return out;
}

// Right-tail evaluation for mode-only measures on the rotated ray
// t = rho e^{-i theta}:
//   1 - G(x) = 1/2 - theta/pi + (1/pi) Int_0^inf Im[e^{-i tau x + psi(tau)}] drho/rho.
struct WedgeResult {
    double one_minus_g = 0.0;
    double bound = 0.0;
    long nodes = 0;
    bool ok = true;
};

WedgeResult wedge_integral(const LevyMeasure& nu, double x, const QuadratureConfig& q) {
    WedgeResult out;
    double theta = std::min(kPi / 8.0, 0.45 * kPi * (1.0 / nu.alpha - 1.0) + kPi / 16.0);
    theta = std::max(theta, kPi / 64.0);
    // decay margin: the zero-frequency mode must dominate on the ray
    double amain = 0.0, aosc = 0.0, cpsi = 0.0;
    for (;;) {
        amain = aosc = cpsi = 0.0;
        for (const auto& md : nu.modes) {
            cplx s(nu.alpha, -md.omega);
            double g = std::abs(md.kappa * cgamma(1.0 - s));
            cpsi += g * std::exp(std::abs(md.omega) * (theta + kPi / 2.0));
            if (md.omega == 0.0)
                amain += (md.kappa * cgamma(1.0 - s)).real() * std::cos(nu.alpha * (theta + kPi / 2.0));
            else
                aosc += g * std::exp(std::abs(md.omega) * (theta + kPi / 2.0));
        }
        if (aosc <= 0.8 * amain || theta <= kPi / 64.0) break;
        theta *= 0.5;
    }
    if (!(amain > 0.0) || aosc > 0.9 * amain) {
        out.ok = false;
        return out;
    }
    const double decay = amain - aosc;  // envelope exp(-decay rho^alpha)
    const cplx ray = std::polar(1.0, -theta);
    const cplx ii(0.0, 1.0);
    auto f = [&](double rho) -> double {
        cplx tau = rho * ray;
        return std::exp(-ii * tau * x + nu.psi(tau)).imag();
    };
    const int order = 24;
    const GaussRule& rule = gauss_legendre(order);
    const double tol = std::min(q.tol, 1e-8);
    const double rho_min = std::pow(tol * nu.alpha / (6.0 * std::max(cpsi, 1e-30)), 1.0 / nu.alpha);
    const double rho_knee = 1.0 / (x + 1.0);
    double head = x * rho_min + 3.0 * cpsi * std::pow(rho_min, nu.alpha) / nu.alpha;

    double acc = 0.0;
    long nodes = 0;
    // geometric panels through the power-law region
    double a = rho_min;
    while (a < rho_knee) {
        double b = std::min(a * 2.0, rho_knee);
        for (int i = 0; i < order; ++i) {
            double rho = 0.5 * (a + b) + 0.5 * (b - a) * rule.x[i];
            acc += rule.w[i] * f(rho) / rho * 0.5 * (b - a);
        }
        nodes += order;
        a = b;
    }
    // oscillation-resolved panels until one of the damping factors kills the integrand
    const double rho_end = std::min(50.0 / (x * std::sin(theta) + 1e-300),
                                    std::pow(45.0 / decay, 1.0 / nu.alpha));
    double w = 2.0 * kPi / (6.0 * (x * std::cos(theta) + 1.0));
    long panels = 0;
    while (a < rho_end && panels < q.max_panels) {
        double b = a + w;
        for (int i = 0; i < order; ++i) {
            double rho = 0.5 * (a + b) + 0.5 * (b - a) * rule.x[i];
            acc += rule.w[i] * f(rho) / rho * 0.5 * (b - a);
        }
        nodes += order;
        ++panels;
        a = b;
    }
    if (panels >= q.max_panels) out.ok = false;
    out.one_minus_g = 0.5 - theta / kPi + acc / kPi;
    const double damp_end = rho_end * x * std::sin(theta) + decay * std::pow(rho_end, nu.alpha);
    out.bound = (head + std::exp(-damp_end) + 1e-15 * static_cast<double>(nodes)) / kPi;
    out.nodes = nodes;
    return out;
}

}  // namespace

Accuracy cdf_from_measure(const LevyMeasure& nu, double x, const QuadratureConfig& q,
                          bool want_log) {
    q.validate();
    if (!(x > 0.0)) throw std::domain_error("cdf: x must be positive");
    Accuracy out;
    const double hstar = nu.solve_saddle(x);
    const double estar = nu.laplace(hstar) - hstar * x;
    if (estar > 4.0) {
        // deep left tail: saddle height makes the integrand concentrate
        LineResult lr = line_integral(nu, x, hstar, q);
        if (!lr.ok)
            throw QuadratureError("left-tail inversion did not stabilize within budget");
        out.method = "saddle-line";
        out.nodes = lr.nodes;
        if (want_log) {
            out.value = lr.log_value;
            out.error_bound = lr.rel_bound;  // bound on log via relative bound
        } else {
            out.value = std::exp(lr.log_value);
            out.error_bound = out.value * lr.rel_bound;
        }
        return out;
    }
    if (nu.mode_only() && nu.tail(x) < 0.25) {
        WedgeResult wr = wedge_integral(nu, x, q);
        if (wr.ok) {
            double g = 1.0 - wr.one_minus_g;
            out.method = "wedge";
            out.nodes = wr.nodes;
            out.value = want_log ? std::log(std::max(g, 1e-300)) : std::clamp(g, 0.0, 1.0);
            out.error_bound = want_log ? wr.bound / std::max(g, 1e-300) : wr.bound;
            return out;
        }
    }
    LineResult lr = line_integral(nu, x, 3.0 / x, q);
    if (!lr.ok) throw QuadratureError("inversion did not stabilize within budget");
    out.method = "line";
    out.nodes = lr.nodes;
    double g = std::exp(lr.log_value);
    double bound = g * lr.rel_bound;
    g = std::clamp(g, 0.0, 1.0);
    out.value = want_log ? std::log(std::max(g, 1e-300)) : g;
    out.error_bound = want_log ? bound / std::max(g, 1e-300) : bound;
    return out;
}

std::complex<double> char_fn_from_measure(const LevyMeasure& nu, double t) {
    if (t == 0.0) return {1.0, 0.0};
    return std::exp(nu.psi(cplx(t, 0.0)));
}

SampleResult sample_from_measure(const LevyMeasure& nu, std::uint64_t seed, std::size_t n,
                                 const QuadratureConfig& q) {
    q.validate();
    if (n == 0) throw std::invalid_argument("sample: n must be positive");
    const double eps = q.small_jump_cut;
    SampleResult res;
    res.values.assign(n, 0.0);
    res.mean_shift = nu.mean_below(eps);
    // bound C eps^{1-alpha} with C = alpha/(1-alpha) * (sup amplitude of the tail)
    double msup = nu.tail(eps) * std::pow(eps, nu.alpha);
    res.bias_bound = nu.alpha / (1.0 - nu.alpha) * msup * std::pow(eps, 1.0 - nu.alpha);
    const double rate = nu.tail(eps);
    res.poisson_rate = rate;

    // component masses above the cut
    double ladder_mass = 0.0;
    std::vector<double> ladder_tails;
    for (const auto& ld : nu.ladders) {
        long j = floor_log(eps / ld.x0, nu.r);
        double t = ld.a0 * std::pow(nu.c, -static_cast<double>(j)) / (nu.c - 1.0);
        ladder_tails.push_back(t);
        ladder_mass += t;
    }
    double atom_mass = 0.0;
    for (const auto& at : nu.atoms)
        if (at.x > eps) atom_mass += at.mass;
    const double mode_mass = std::max(rate - ladder_mass - atom_mass, 0.0);
    const double env = nu.mode_density_envelope();

    const std::size_t nchunks = (n + kSampleChunk - 1) / kSampleChunk;
    for (std::size_t ci = 0; ci < nchunks; ++ci) {
        std::mt19937_64 rng = make_rng(seed, ci);
        std::poisson_distribution<long> pois(rate);
        const std::size_t lo = ci * kSampleChunk, hi = std::min(n, lo + kSampleChunk);
        for (std::size_t idx = lo; idx < hi; ++idx) {
            long nj = pois(rng);
            double v = res.mean_shift;
            for (long j = 0; j < nj; ++j) {
                double u = uniform01(rng) * rate;
                if (u < ladder_mass) {
                    // geometric over the ladder atoms above eps
                    double upos = u;
                    std::size_t li = 0;
                    while (li + 1 < ladder_tails.size() && upos >= ladder_tails[li]) {
                        upos -= ladder_tails[li];
                        ++li;
                    }
                    const auto& ld = nu.ladders[li];
                    long kmin = floor_log(eps / ld.x0, nu.r) + 1;
                    double ug = uniform01(rng);
                    long kk = kmin + static_cast<long>(std::floor(std::log(ug) / -std::log(nu.c)));
                    v += ld.x0 * std::pow(nu.r, static_cast<double>(kk));
                } else if (u < ladder_mass + atom_mass) {
                    double upos = u - ladder_mass;
                    for (const auto& at : nu.atoms) {
                        if (at.x <= eps) continue;
                        if (upos < at.mass) {
                            v += at.x;
                            break;
                        }
                        upos -= at.mass;
                    }
                } else {
                    // mode part: Pareto envelope with rejection against the density
                    for (;;) {
                        double up = uniform01(rng);
                        double xx = eps * std::pow(up, -1.0 / nu.alpha);
                        double acc_p = nu.mode_density(xx) * std::pow(xx, nu.alpha + 1.0) / env;
                        if (uniform01(rng) <= acc_p) {
                            v += xx;
                            break;
                        }
                    }
                }
            }
            res.values[idx] = v;
        }
    }
    (void)mode_mass;
    return res;
}

SemistableLaw::SemistableLaw(LogPeriodicM m, double lambda)
    : m_(std::move(m)), lambda_(lambda), nu_(levy_from_amplitude(m_, lambda)) {}

bool SemistableLaw::is_stable_case() const {
    return m_.steps.empty() && m_.modes.size() == 1 && m_.modes[0].omega == 0.0;
}

double SemistableLaw::levy_tail(double x) const {
    if (!(x > 0.0)) throw std::domain_error("levy_tail: x must be positive");
    return m_.eval(std::pow(lambda_, 1.0 / m_.alpha) * x) / std::pow(x, m_.alpha);
}

double SemistableLaw::nu_lambda(double x) const {
    if (!(x >= 1.0)) throw std::domain_error("nu_lambda: x must be at least 1");
    const double ls = std::pow(lambda_, 1.0 / m_.alpha);
    return 1.0 - std::pow(x, -m_.alpha) * m_.eval(x * ls) / m_.eval(ls);
}

std::complex<double> SemistableLaw::char_fn(double t, const QuadratureConfig& q) const {
    q.validate();
    return char_fn_from_measure(nu_, t);
}

Accuracy SemistableLaw::cdf(double x, const QuadratureConfig& q) const {
    return cdf_from_measure(nu_, x, q, false);
}

Accuracy SemistableLaw::log_cdf(double x, const QuadratureConfig& q) const {
    return cdf_from_measure(nu_, x, q, true);
}

SampleResult SemistableLaw::sample(std::uint64_t seed, std::size_t n,
                                   const QuadratureConfig& q) const {
    return sample_from_measure(nu_, seed, n, q);
}

double uniform_subexp_gap(const LogPeriodicM& m, double x,
                          const std::vector<double>& lambda_grid, const QuadratureConfig& q) {
    if (!(x > 0.0)) throw std::domain_error("uniform_subexp_gap: x must be positive");
    double gap = 0.0;
    for (double lam : lambda_grid) {
        SemistableLaw law(m, lam);
        Accuracy a = law.cdf(x, q);
        double tail = (1.0 - a.value) * std::pow(x, m.alpha);
        double ref = m.eval(x * std::pow(lam, 1.0 / m.alpha));
        gap = std::max(gap, std::abs(tail / ref - 1.0));
    }
    return gap;
}

}  // namespace semistable
