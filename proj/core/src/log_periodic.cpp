#include "semistable/log_periodic.hpp"

#include <cmath>
#include <stdexcept>

namespace semistable {

double golden_mean() { return 0.5 * (1.0 + std::sqrt(5.0)); }
double fibonacci_q0() { return (3.0 + std::sqrt(5.0)) / (2.0 * std::sqrt(5.0)); }

double LogPeriodicM::period() const { return std::pow(c, 1.0 / alpha); }

long floor_log(double v, double base) {
    if (!(v > 0.0) || !(base > 1.0)) throw std::domain_error("floor_log: bad arguments");
    double l = std::log(v) / std::log(base);
    long n = static_cast<long>(std::floor(l));
    // polish against computed powers; exact boundaries must land on their index
    for (int i = 0; i < 4; ++i) {
        if (std::pow(base, static_cast<double>(n + 1)) <= v * (1.0 + 1e-12))
            ++n;
        else if (std::pow(base, static_cast<double>(n)) > v * (1.0 + 1e-12))
            --n;
        else
            break;
    }
    return n;
}

long ceil_log(double v, double base) {
    long f = floor_log(v, base);
    if (std::abs(std::pow(base, static_cast<double>(f)) / v - 1.0) <= 1e-12) return f;
    return f + 1;
}

static double frac_log(double x, double p, double r) {
    // frac(log_r(x/p)) in [0,1), snapping boundaries to 0
    long k = floor_log(x / p, r);
    double f = std::log(x / p) / std::log(r) - static_cast<double>(k);
    if (f < 0.0) f = 0.0;
    if (f >= 1.0) f = 0.0;
    return f;
}

double LogPeriodicM::spectrum_eval(double x) const {
    const double r = period();
    std::complex<double> acc(0.0, 0.0);
    for (const auto& md : modes) acc += md.kappa * std::polar(1.0, md.omega * std::log(x));
    double v = acc.real();
    for (const auto& st : steps) v += st.m0 * std::pow(c, frac_log(x, st.p, r));
    return v;
}

double LogPeriodicM::min_on_period(int grid) const {
    const double r = period();
    double lo = eval(1.0);
    for (int i = 0; i < grid; ++i) {
        double x = std::pow(r, (i + 0.5) / grid);
        lo = std::min(lo, eval(x));
    }
    for (double p : jump_hints) {
        lo = std::min(lo, eval(p));
        lo = std::min(lo, eval(p * (1.0 + 1e-12)));
    }
    return lo;
}

double LogPeriodicM::max_on_period(int grid) const {
    const double r = period();
    double hi = eval(1.0);
    for (int i = 0; i < grid; ++i) {
        double x = std::pow(r, (i + 0.5) / grid);
        hi = std::max(hi, eval(x));
    }
    for (double p : jump_hints) hi = std::max(hi, eval(p * (1.0 - 1e-12)));
    return hi;
}

MValidation validate_log_periodic(const LogPeriodicM& m, int grid_per_period) {
    MValidation v;
    if (!(m.alpha > 0.0 && m.alpha < 1.0)) {
        v.ok = false;
        v.message = "alpha outside (0,1)";
        return v;
    }
    if (!(m.c > 1.0)) {
        v.ok = false;
        v.message = "c must exceed 1";
        return v;
    }
    const double r = m.period();
    for (int i = 0; i <= grid_per_period; ++i) {
        double x = std::pow(r, static_cast<double>(i) / grid_per_period);
        double a = m.eval(x), b = m.eval(r * x);
        v.period_gap = std::max(v.period_gap, std::abs(b / a - 1.0));
        if (m.has_spectrum)
            v.spectrum_gap = std::max(v.spectrum_gap, std::abs(m.spectrum_eval(x) - a));
    }
    v.inf = m.min_on_period(grid_per_period);
    v.sup = m.max_on_period(grid_per_period);
    if (!(v.inf > 0.0) || !std::isfinite(v.sup)) {
        v.ok = false;
        v.message = "amplitude not positive and bounded";
        return v;
    }
    // x -> M(x)/x^alpha nonincreasing, checked between consecutive grid points
    // while avoiding upward jumps across period boundaries (none may exist).
    double prev = m.eval(1.0);
    for (int i = 1; i <= 4 * grid_per_period; ++i) {
        double x = std::pow(r, static_cast<double>(i) / grid_per_period);
        double t = m.eval(x) / std::pow(x, m.alpha);
        double pt = prev / std::pow(std::pow(r, static_cast<double>(i - 1) / grid_per_period), m.alpha);
        v.tail_monotone_gap = std::max(v.tail_monotone_gap, (t - pt) / pt);
        prev = m.eval(x);
    }
    if (v.period_gap > 1e-12) {
        v.ok = false;
        v.message = "period identity violated";
    } else if (v.tail_monotone_gap > 1e-10) {
        v.ok = false;
        v.message = "M(x)/x^alpha increases on the grid";
    } else if (m.has_spectrum && v.spectrum_gap > 1e-9 * v.sup) {
        v.ok = false;
        v.message = "spectrum does not reproduce eval";
    }
    return v;
}

LogPeriodicM constant_amplitude(double alpha, double c, double m0) {
    if (!(m0 > 0.0)) throw std::domain_error("constant amplitude must be positive");
    LogPeriodicM m;
    m.alpha = alpha;
    m.c = c;
    m.family = "constant";
    m.eval = [m0](double) { return m0; };
    m.modes = {{std::complex<double>(m0, 0.0), 0.0}};
    m.has_spectrum = true;
    return m;
}

LogPeriodicM st_petersburg_amplitude(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("alpha outside (0,1)");
    LogPeriodicM m;
    m.alpha = alpha;
    m.c = 2.0;
    m.family = "st_petersburg";
    m.eval = [alpha](double x) {
        double l = alpha * std::log2(x);
        double f = l - std::floor(l);
        return std::pow(2.0, f);
    };
    m.jump_hints = {1.0};
    m.steps = {{1.0, 1.0}};
    m.has_spectrum = true;
    return m;
}

LogPeriodicM wang_amplitude(double alpha, double c, double eps) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("alpha outside (0,1)");
    if (!(c > 1.0)) throw std::domain_error("c must exceed 1");
    // Monotonicity of the tail requires alpha + O(eps) > 0 with
    // |O(eps)| <= 2 alpha eps (1 + 2 pi / log c).
    const double bound = 1.0 / (2.0 * (1.0 + 2.0 * M_PI / std::log(c)));
    if (!(eps >= 0.0 && eps < bound))
        throw std::domain_error("eps outside the tail-monotonicity region");
    LogPeriodicM m;
    m.alpha = alpha;
    m.c = c;
    m.family = "wang";
    const double a = 2.0 * M_PI * alpha / std::log(c);
    m.eval = [eps, a](double x) { return 0.5 * (1.0 + 2.0 * eps * std::sin(a * std::log(x))); };
    const std::complex<double> i(0.0, 1.0);
    m.modes = {{std::complex<double>(0.5, 0.0), 0.0},
               {-i * (eps / 2.0), a},
               {i * (eps / 2.0), -a}};
    m.has_spectrum = true;
    return m;
}

LogPeriodicM wang_noncontinuous_amplitude(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("alpha outside (0,1)");
    LogPeriodicM m;
    m.alpha = alpha;
    m.c = 2.0;
    m.family = "wang_noncontinuous";
    m.eval = [alpha](double x) {
        double l = alpha * std::log2(x);
        double f = l - std::floor(l);
        return 0.5 * (1.0 + std::pow(2.0, f));
    };
    m.jump_hints = {1.0};
    m.modes = {{std::complex<double>(0.5, 0.0), 0.0}};
    m.steps = {{1.0, 0.5}};
    m.has_spectrum = true;
    return m;
}

LogPeriodicM fibonacci_amplitude(double lambda_slope) {
    const double G = golden_mean();
    if (!(lambda_slope > 1.0 / G && lambda_slope < 1.0))
        throw std::domain_error("lambda outside (1/G, 1)");
    const double alpha = -std::log(lambda_slope) / std::log(G);
    const double q0 = fibonacci_q0();
    const double qinf = lambda_slope * std::pow(q0, alpha);
    LogPeriodicM m;
    m.alpha = alpha;
    m.c = 1.0 / lambda_slope;  // G^alpha
    m.family = "fibonacci";
    m.eval = [alpha, q0, qinf, G](double x) {
        double l = std::log(x / q0) / std::log(G);
        double f = l - std::floor(l);
        return qinf * std::pow(G, alpha * f);
    };
    // normalize the jump abscissa q0*G^k into [1, G)
    double p = q0;
    const double r = G;
    while (p >= r) p /= r;
    while (p < 1.0) p *= r;
    m.jump_hints = {p};
    m.steps = {{p, qinf}};
    m.has_spectrum = true;
    return m;
}

LogPeriodicM scale_amplitude(const LogPeriodicM& m, double factor) {
    if (!(factor > 0.0)) throw std::domain_error("scale factor must be positive");
    LogPeriodicM out = m;
    auto base = m.eval;
    out.eval = [base, factor](double x) { return factor * base(x); };
    for (auto& md : out.modes) md.kappa *= factor;
    for (auto& st : out.steps) st.m0 *= factor;
    out.family = m.family + "_scaled";
    return out;
}

LogPeriodicM fit_spectrum(const LogPeriodicM& m, int max_modes, double jump_threshold) {
    LogPeriodicM out = m;
    out.steps.clear();
    out.modes.clear();
    const double r = m.period();
    const double lr = std::log(r);
    // Detect tail jumps at the hinted abscissae via one-sided limits.
    for (double p : m.jump_hints) {
        double left = m.eval(p * (1.0 - 1e-10)) / std::pow(p, m.alpha);
        double right = m.eval(p * (1.0 + 1e-10)) / std::pow(p, m.alpha);
        double drop = left - right;
        if (drop > jump_threshold) {
            // tail drops by m0 p^{-alpha} (c - 1) c^{-k}; at k=0 that is the drop
            double m0 = drop * std::pow(p, m.alpha) / (m.c - 1.0);
            out.steps.push_back({p, m0});
        }
    }
    // Fourier modes of the continuous remainder in theta = log_r x.
    const int N = 2048;
    std::vector<double> residual(N);
    for (int j = 0; j < N; ++j) {
        double x = std::pow(r, (j + 0.5) / N);
        double v = m.eval(x);
        for (const auto& st : out.steps) v -= st.m0 * std::pow(m.c, frac_log(x, st.p, r));
        residual[j] = v;
    }
    const double w0 = 2.0 * M_PI / lr;  // frequency unit in log x
    for (int k = 0; k <= max_modes; ++k) {
        std::complex<double> coef(0.0, 0.0);
        for (int j = 0; j < N; ++j) {
            double theta = (j + 0.5) / N;
            coef += residual[j] * std::polar(1.0, -2.0 * M_PI * k * theta);
        }
        coef /= static_cast<double>(N);
        if (k == 0) {
            if (std::abs(coef) > 1e-14) out.modes.push_back({coef, 0.0});
        } else if (std::abs(coef) > 1e-13) {
            out.modes.push_back({coef, k * w0});
            out.modes.push_back({std::conj(coef), -k * w0});
        }
    }
    out.has_spectrum = true;
    return out;
}

}  // namespace semistable
