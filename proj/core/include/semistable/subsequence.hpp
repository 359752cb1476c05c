#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "semistable/tail_spec.hpp"

namespace semistable {

enum class PlanMode { GammaOfN, GammaOfAn };

// Index sequence n_r realizing a prescribed circular limit of the position
// parameter: gamma(n_r) -> lambda, or gamma(a_{n_r}) -> lambda.
struct SubsequencePlan {
    double lambda_target = 1.0;
    PlanMode mode = PlanMode::GammaOfN;
    std::vector<double> indices;          // n_r
    std::vector<double> achieved_gamma;   // gamma at the planned arguments
    double achieved_gap = 0.0;            // worst circular distance on the tail
    bool converged = true;
    std::string note;

    // the argument fed to gamma (n_r or a_{n_r})
    double gamma_argument(const TailSpec& spec, std::size_t r) const;
};

struct CircularReport {
    bool ok = false;
    std::vector<double> limit_points;
    double worst_distance = 0.0;
};

// distance on (1/c, 1] with the endpoints identified
double circular_distance(double a, double b, double c);

// true iff all accumulation points of the tail of `seq` equal lambda
// (for lambda < 1), or lie in {1, 1/c} (for lambda = 1), within 1e-3.
CircularReport circular_limit(const std::vector<double>& seq, double lambda, double c);

SubsequencePlan subsequence_for_lambda(const TailSpec& spec, double lambda, int r_max,
                                       PlanMode mode);

// Limit behaviour of gamma(x_r * y) along a plan, against h_lambda(y).
struct GammaShiftReport {
    double y = 1.0;
    double expected = 0.0;  // h_lambda(y)
    double gap = 0.0;       // worst circular distance on the tail
    std::vector<double> observed;
};

GammaShiftReport lemma_gamma_check(const TailSpec& spec, const SubsequencePlan& plan, double y);

}  // namespace semistable
