#include "semistable/h_distribution.hpp"

#include <algorithm>
#include <cmath>

#include "semistable/gauss.hpp"

namespace semistable {

Accuracy H_lambda_cdf(const LogPeriodicM& m, double lambda, double x, const QuadratureConfig& q) {
    if (!(x > 0.0)) throw std::domain_error("H_lambda_cdf: x must be positive");
    const double h = h_lambda(lambda, x, m.c);
    SemistableLaw law(m, h);
    Accuracy g = law.cdf(std::pow(x, -1.0 / m.alpha), q);
    Accuracy out;
    out.value = std::clamp(1.0 - g.value, 0.0, 1.0);
    out.error_bound = g.error_bound;
    out.nodes = g.nodes;
    out.method = g.method;
    return out;
}

SlopeReport H_slope_at_zero(const LogPeriodicM& m, double lambda, const QuadratureConfig& q) {
    SlopeReport r;
    r.xs = {1e-2, std::pow(10.0, -2.5), 1e-3};
    for (double x : r.xs) {
        Accuracy h = H_lambda_cdf(m, lambda, x, q);
        r.ratios.push_back(h.value / x);
    }
    // H(x)/x = s0 + b x^beta + ...; a geometric grid lets Aitken extrapolate
    double d1 = r.ratios[1] - r.ratios[0], d2 = r.ratios[2] - r.ratios[1];
    if (std::abs(d1 - d2) > 1e-14) {
        double aitken = r.ratios[2] - d2 * d2 / (d1 - d2);
        // guard against noise amplification: stay within the observed bracket
        double lo = std::min({r.ratios[0], r.ratios[1], r.ratios[2]});
        double hi = std::max({r.ratios[0], r.ratios[1], r.ratios[2]});
        double span = hi - lo;
        r.slope = std::clamp(aitken, lo - 3.0 * span, hi + 3.0 * span);
    } else {
        r.slope = r.ratios[2];
    }
    r.reference = m.eval(std::pow(lambda, 1.0 / m.alpha));
    return r;
}

double mittag_leffler_moment(int k, double alpha) {
    // E M^k = k! Gamma(1+alpha)^k / Gamma(1+k alpha)
    double lg = std::lgamma(static_cast<double>(k) + 1.0) +
                k * std::lgamma(1.0 + alpha) - std::lgamma(1.0 + k * alpha);
    return std::exp(lg);
}

namespace {

MomentReport fit_profile(MomentReport r, double alpha) {
    // fit a scale theta so that M_k ~ theta^k * ml_k, least squares in log
    int kmax = static_cast<int>(r.moments.size()) - 1;
    double num = 0.0, den = 0.0;
    for (int k = 1; k <= kmax; ++k) {
        if (!(r.moments[k] > 0.0)) continue;
        double y = std::log(r.moments[k] / mittag_leffler_moment(k, alpha));
        num += k * y;
        den += static_cast<double>(k) * k;
    }
    double ltheta = den > 0.0 ? num / den : 0.0;
    r.ml_scale = std::exp(ltheta);
    r.max_log_excess = 0.0;
    for (int k = 1; k <= kmax; ++k) {
        if (!(r.moments[k] > 0.0)) continue;
        double prof = std::exp(k * ltheta) * mittag_leffler_moment(k, alpha);
        r.max_log_excess = std::max(r.max_log_excess, std::log(r.moments[k] / prof));
    }
    r.within_profile = r.max_log_excess < std::log(1.5);
    return r;
}

}  // namespace

MomentReport H_moments_from_samples(const std::vector<double>& samples, int k_max, double alpha) {
    if (k_max > 8) throw std::domain_error("H moments: k_max capped at 8");
    MomentReport r;
    r.moments.assign(k_max + 1, 0.0);
    r.stderr_.assign(k_max + 1, 0.0);
    const double n = static_cast<double>(samples.size());
    for (int k = 0; k <= k_max; ++k) {
        double s = 0.0, s2 = 0.0;
        for (double v : samples) {
            double p = std::pow(v, k);
            s += p;
            s2 += p * p;
        }
        r.moments[k] = s / n;
        r.stderr_[k] = std::sqrt(std::max(s2 / n - r.moments[k] * r.moments[k], 0.0) / n);
    }
    return fit_profile(std::move(r), alpha);
}

MomentReport H_moments_from_cdf(const LogPeriodicM& m, double lambda, int k_max,
                                const QuadratureConfig& q) {
    if (k_max > 8) throw std::domain_error("H moments: k_max capped at 8");
    MomentReport r;
    r.moments.assign(k_max + 1, 0.0);
    r.stderr_.assign(k_max + 1, 0.0);
    r.moments[0] = 1.0;
    // M_k = k Int x^{k-1} (1 - H(x)) dx; the tail decays like exp(-c x^{1/(1-alpha)})
    const double x_hi = 12.0;
    const int panels = 48;
    std::vector<double> xs, tails;
    for (int p = 0; p < panels; ++p) {
        double a = x_hi * p / panels, b = x_hi * (p + 1) / panels;
        const GaussRule& rule = gauss_legendre(8);
        for (std::size_t i = 0; i < rule.x.size(); ++i) {
            double x = 0.5 * (a + b) + 0.5 * (b - a) * rule.x[i];
            xs.push_back(x);
            tails.push_back(1.0 - H_lambda_cdf(m, lambda, x, q).value);
        }
    }
    for (int k = 1; k <= k_max; ++k) {
        double acc = 0.0;
        std::size_t idx = 0;
        const GaussRule& rule = gauss_legendre(8);
        for (int p = 0; p < panels; ++p) {
            double a = x_hi * p / panels, b = x_hi * (p + 1) / panels;
            for (std::size_t i = 0; i < rule.x.size(); ++i, ++idx)
                acc += rule.w[i] * k * std::pow(xs[idx], k - 1) * tails[idx] * 0.5 * (b - a);
        }
        r.moments[k] = acc;
    }
    return fit_profile(std::move(r), m.alpha);
}

}  // namespace semistable
