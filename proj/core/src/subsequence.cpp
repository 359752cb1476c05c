#include "semistable/subsequence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace semistable {

double circular_distance(double a, double b, double c) {
    // positions live on (1/c, 1] with 1 identified with 1/c; compare in log
    // scale modulo log c
    double d = std::abs(std::log(a) - std::log(b));
    double lc = std::log(c);
    d = std::fmod(d, lc);
    d = std::min(d, lc - d);
    // convert back to a linear-scale distance near 1
    return d;
}

CircularReport circular_limit(const std::vector<double>& seq, double lambda, double c) {
    CircularReport rep;
    if (seq.empty()) return rep;
    const double tol = 1e-3;
    const std::size_t tail_start = seq.size() / 2;
    double worst = 0.0;
    for (std::size_t i = tail_start; i < seq.size(); ++i) {
        double v = seq[i];
        double d;
        if (lambda < 1.0) {
            d = std::abs(v - lambda);
        } else {
            d = std::min(std::abs(v - 1.0), std::abs(v - 1.0 / c));
        }
        worst = std::max(worst, d);
    }
    rep.worst_distance = worst;
    rep.ok = worst <= tol;
    // crude cluster extraction for reporting
    std::vector<double> tail(seq.begin() + tail_start, seq.end());
    std::sort(tail.begin(), tail.end());
    for (double v : tail) {
        if (rep.limit_points.empty() || v - rep.limit_points.back() > 2.0 * tol)
            rep.limit_points.push_back(v);
    }
    return rep;
}

double SubsequencePlan::gamma_argument(const TailSpec& spec, std::size_t r) const {
    double n = indices[r];
    return mode == PlanMode::GammaOfN ? n : static_cast<double>(spec.norming_a(n));
}

SubsequencePlan subsequence_for_lambda(const TailSpec& spec, double lambda, int r_max,
                                       PlanMode mode) {
    if (!(lambda > 1.0 / spec.c && lambda <= 1.0))
        throw std::domain_error("subsequence_for_lambda: lambda outside (1/c, 1]");
    SubsequencePlan plan;
    plan.lambda_target = lambda;
    plan.mode = mode;
    for (int r = 2; r <= r_max; ++r) {
        double kr = spec.k_n(r);
        double target = lambda * kr;  // desired position inside block r
        double n;
        if (mode == PlanMode::GammaOfN) {
            n = std::round(target);
            if (n <= spec.k_n(r - 1)) n = std::floor(spec.k_n(r - 1)) + 1.0;
            if (n > kr) n = kr;
        } else {
            // smallest n with a_n >= ceil(lambda k_r): for unit ell, a_n = floor(n^alpha)
            double a_target = std::ceil(target - 1e-9);
            n = std::ceil(std::pow(a_target, 1.0 / spec.alpha) * (1.0 - 1e-13));
            while (static_cast<double>(spec.norming_a(n)) < a_target) n += 1.0;
            while (n > 1.0 && static_cast<double>(spec.norming_a(n - 1.0)) >= a_target) n -= 1.0;
        }
        plan.indices.push_back(n);
        plan.achieved_gamma.push_back(spec.gamma_pos(plan.gamma_argument(spec, plan.indices.size() - 1)));
    }
    CircularReport rep = circular_limit(plan.achieved_gamma, lambda, spec.c);
    plan.achieved_gap = rep.worst_distance;
    plan.converged = rep.ok;
    if (!plan.converged) {
        plan.note = "achieved limit points stay " + std::to_string(rep.worst_distance) +
                    " away from the target";
        throw std::runtime_error("subsequence_for_lambda: infeasible lambda within r_max (" +
                                 plan.note + ")");
    }
    return plan;
}

GammaShiftReport lemma_gamma_check(const TailSpec& spec, const SubsequencePlan& plan, double y) {
    if (!(y > 0.0)) throw std::domain_error("lemma_gamma_check: y must be positive");
    GammaShiftReport rep;
    rep.y = y;
    rep.expected = h_lambda(plan.lambda_target, y, spec.c);
    for (std::size_t r = 0; r < plan.indices.size(); ++r)
        rep.observed.push_back(spec.gamma_pos(plan.gamma_argument(spec, r) * y));
    const std::size_t tail_start = rep.observed.size() / 2;
    double worst = 0.0;
    for (std::size_t i = tail_start; i < rep.observed.size(); ++i)
        worst = std::max(worst, circular_distance(rep.observed[i], rep.expected, spec.c));
    rep.gap = worst;
    return rep;
}

}  // namespace semistable
