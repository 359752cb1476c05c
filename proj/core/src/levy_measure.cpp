#include "semistable/levy_measure.hpp"

#include <cmath>
#include <stdexcept>

#include "semistable/cgamma.hpp"

namespace semistable {

double LevyMeasure::tail(double x) const {
    if (!(x > 0.0)) throw std::domain_error("tail: x must be positive");
    double t = 0.0;
    for (const auto& md : modes) {
        cplx s(alpha, -md.omega);
        t += (md.kappa * std::exp(-s * std::log(x))).real();
    }
    for (const auto& ld : ladders) {
        // atoms strictly above x: k >= floor(log_r(x/x0)) + 1
        long j = floor_log(x / ld.x0, r);
        t += ld.a0 * std::pow(c, -static_cast<double>(j)) / (c - 1.0);
    }
    for (const auto& at : atoms)
        if (at.x > x) t += at.mass;
    return t;
}

double LevyMeasure::mode_density(double x) const {
    double d = 0.0;
    for (const auto& md : modes) {
        cplx s(alpha, -md.omega);
        d += (md.kappa * s * std::exp(-(s + 1.0) * std::log(x))).real();
    }
    return d;
}

double LevyMeasure::mode_density_envelope() const {
    double D = 0.0;
    for (const auto& md : modes) D += std::abs(md.kappa * cplx(alpha, -md.omega));
    return D;
}

cplx LevyMeasure::psi(cplx t, double tol) const {
    if (t == cplx(0.0, 0.0)) return {0.0, 0.0};
    if (t.imag() < -1e-15 && !mode_only())
        throw std::domain_error("psi: lower half-plane needs a mode-only measure");
    cplx acc(0.0, 0.0);
    const cplx i(0.0, 1.0);
    for (const auto& md : modes) {
        cplx s(alpha, -md.omega);
        // Int (e^{itx}-1) d(tail kappa x^{-s}) = -kappa Gamma(1-s) (-it)^s
        acc += -md.kappa * cgamma(1.0 - s) * std::exp(s * std::log(-i * t));
    }
    const double ta = std::abs(t);
    for (const auto& ld : ladders) {
        // sum outward from the atoms nearest scale 1/|t|
        long k0 = floor_log(1.0 / (ta * ld.x0), r);
        double scale = std::max(ld.a0 * std::pow(c, -static_cast<double>(k0)), 1e-300);
        for (long k = k0;; ++k) {
            double a = ld.x0 * std::pow(r, static_cast<double>(k));
            double mass = ld.a0 * std::pow(c, -static_cast<double>(k));
            cplx term = mass * (std::exp(i * t * a) - 1.0);
            acc += term;
            if (mass * 2.0 < tol * scale && k > k0 + 4) break;
            if (k > k0 + 4000) break;
        }
        for (long k = k0 - 1;; --k) {
            double a = ld.x0 * std::pow(r, static_cast<double>(k));
            double mass = ld.a0 * std::pow(c, -static_cast<double>(k));
            cplx term = mass * (std::exp(i * t * a) - 1.0);
            acc += term;
            if (mass * ta * a < tol * scale && k < k0 - 4) break;
            if (k < k0 - 4000) break;
        }
    }
    for (const auto& at : atoms) acc += at.mass * (std::exp(i * t * at.x) - 1.0);
    return acc;
}

double LevyMeasure::laplace(double h) const {
    if (!(h > 0.0)) throw std::domain_error("laplace: h must be positive");
    double acc = 0.0;
    for (const auto& md : modes) {
        cplx s(alpha, -md.omega);
        acc += (md.kappa * cgamma(1.0 - s) * std::pow(cplx(h, 0.0), s)).real();
    }
    for (const auto& ld : ladders) {
        long k0 = floor_log(1.0 / (h * ld.x0), r);
        for (long k = k0;; ++k) {
            double a = ld.x0 * std::pow(r, static_cast<double>(k));
            double mass = ld.a0 * std::pow(c, -static_cast<double>(k));
            double term = mass * -std::expm1(-h * a);
            acc += term;
            if (mass < 1e-17 * std::abs(acc) && k > k0 + 4) break;
            if (k > k0 + 4000) break;
        }
        for (long k = k0 - 1;; --k) {
            double a = ld.x0 * std::pow(r, static_cast<double>(k));
            double mass = ld.a0 * std::pow(c, -static_cast<double>(k));
            double term = mass * -std::expm1(-h * a);
            acc += term;
            if (term < 1e-17 * std::abs(acc) && k < k0 - 4) break;
            if (k < k0 - 4000) break;
        }
    }
    for (const auto& at : atoms) acc += at.mass * -std::expm1(-h * at.x);
    return acc;
}

template <int P>
static double ladder_moment(const LevyLadder& ld, double h, double r, double c) {
    // Int x^P e^{-hx} over the ladder
    long k0 = floor_log(1.0 / (h * ld.x0), r);
    double acc = 0.0;
    for (long k = k0;; ++k) {
        double a = ld.x0 * std::pow(r, static_cast<double>(k));
        double mass = ld.a0 * std::pow(c, -static_cast<double>(k));
        double term = mass * std::pow(a, P) * std::exp(-h * a);
        acc += term;
        if (term < 1e-17 * acc && k > k0 + 4) break;
        if (k > k0 + 4000) break;
    }
    for (long k = k0 - 1;; --k) {
        double a = ld.x0 * std::pow(r, static_cast<double>(k));
        double mass = ld.a0 * std::pow(c, -static_cast<double>(k));
        double term = mass * std::pow(a, P) * std::exp(-h * a);
        acc += term;
        if (term < 1e-17 * acc && k < k0 - 4) break;
        if (k < k0 - 4000) break;
    }
    return acc;
}

double LevyMeasure::laplace_d1(double h) const {
    double acc = 0.0;
    for (const auto& md : modes) {
        cplx s(alpha, -md.omega);
        acc += (md.kappa * s * cgamma(1.0 - s) * std::pow(cplx(h, 0.0), s - 1.0)).real();
    }
    for (const auto& ld : ladders) acc += ladder_moment<1>(ld, h, r, c);
    for (const auto& at : atoms) acc += at.mass * at.x * std::exp(-h * at.x);
    return acc;
}

double LevyMeasure::laplace_d2(double h) const {
    double acc = 0.0;
    for (const auto& md : modes) {
        cplx s(alpha, -md.omega);
        acc += (md.kappa * s * (1.0 - s) * cgamma(1.0 - s) * std::pow(cplx(h, 0.0), s - 2.0)).real();
    }
    for (const auto& ld : ladders) acc += ladder_moment<2>(ld, h, r, c);
    for (const auto& at : atoms) acc += at.mass * at.x * at.x * std::exp(-h * at.x);
    return acc;
}

double LevyMeasure::mean_below(double eps) const {
    double acc = 0.0;
    for (const auto& md : modes) {
        cplx s(alpha, -md.omega);
        acc += (md.kappa * (s / (1.0 - s)) * std::pow(cplx(eps, 0.0), 1.0 - s)).real();
    }
    for (const auto& ld : ladders) {
        long k = floor_log(eps / ld.x0, r);  // atoms at indices <= k are <= eps
        for (long j = k;; --j) {
            double a = ld.x0 * std::pow(r, static_cast<double>(j));
            if (a > eps) {
                continue;
            }
            double term = ld.a0 * std::pow(c, -static_cast<double>(j)) * a;
            acc += term;
            if (term < 1e-17 * acc && j < k - 4) break;
            if (j < k - 4000) break;
        }
    }
    for (const auto& at : atoms)
        if (at.x <= eps) acc += at.mass * at.x;
    return acc;
}

double LevyMeasure::solve_saddle(double x) const {
    if (!(x > 0.0)) throw std::domain_error("solve_saddle: x must be positive");
    // laplace_d1 is decreasing in h; bisect on log h
    double llo = std::log(1e-280), lhi = std::log(1e280);
    if (laplace_d1(std::exp(llo)) < x) return 1e-280;  // mean saturates below x
    if (laplace_d1(std::exp(lhi)) > x) return 1e280;
    for (int it = 0; it < 200 && lhi - llo > 1e-13; ++it) {
        double mid = 0.5 * (llo + lhi);
        if (laplace_d1(std::exp(mid)) > x)
            llo = mid;
        else
            lhi = mid;
    }
    return std::exp(0.5 * (llo + lhi));
}

double LevyMeasure::smallest_active_atom(double h, double tol) const {
    double a_min = 0.0;
    bool any = false;
    for (const auto& ld : ladders) {
        long k0 = floor_log(1.0 / (h * ld.x0), r);
        // walk down until the quadratic weight mass*a^2 is negligible
        long k = k0;
        double ref = ld.a0 * std::pow(c, -static_cast<double>(k0)) *
                     std::pow(ld.x0 * std::pow(r, static_cast<double>(k0)), 2);
        for (; k > k0 - 4000; --k) {
            double a = ld.x0 * std::pow(r, static_cast<double>(k - 1));
            double w = ld.a0 * std::pow(c, -static_cast<double>(k - 1)) * a * a;
            if (w < tol * ref) break;
        }
        double a = ld.x0 * std::pow(r, static_cast<double>(k));
        a_min = any ? std::min(a_min, a) : a;
        any = true;
    }
    for (const auto& at : atoms) {
        a_min = any ? std::min(a_min, at.x) : at.x;
        any = true;
    }
    return any ? a_min : 0.0;
}

LevyMeasure levy_from_amplitude(const LogPeriodicM& m, double lambda) {
    if (!(lambda > 1.0 / m.c && lambda <= 1.0))
        throw std::domain_error("lambda outside (1/c, 1]");
    LevyMeasure nu;
    nu.alpha = m.alpha;
    nu.c = m.c;
    nu.r = m.period();
    const double lam_scale = std::pow(lambda, 1.0 / m.alpha);
    const LogPeriodicM* src = &m;
    LogPeriodicM fitted;
    if (!m.has_spectrum) {
        fitted = fit_spectrum(m);
        src = &fitted;
    }
    for (const auto& md : src->modes)
        nu.modes.push_back({md.kappa * std::polar(1.0, md.omega * std::log(lam_scale) ), md.omega});
    for (const auto& st : src->steps)
        nu.ladders.push_back({st.p / lam_scale, st.m0 * std::pow(st.p, -m.alpha) * lambda * (m.c - 1.0)});
    return nu;
}

LevyMeasure levy_single_atom(double x, double mass) {
    LevyMeasure nu;
    nu.atoms = {{x, mass}};
    return nu;
}

}  // namespace semistable
