#include "semistable/gauss.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace semistable {

static GaussRule compute_rule(int n) {
    GaussRule r;
    r.x.resize(n);
    r.w.resize(n);
    // Newton iteration from the Chebyshev-angle initial guess.
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double p1 = 0.0;
        for (int it = 0; it < 100; ++it) {
            p1 = 1.0;
            double p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * x * p2 - j * p3) / (j + 1.0);
            }
            double dp = n * (x * p1 - p2) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) {
                p1 = 1.0;
                p2 = 0.0;
                for (int j = 0; j < n; ++j) {
                    double p3 = p2;
                    p2 = p1;
                    p1 = ((2.0 * j + 1.0) * x * p2 - j * p3) / (j + 1.0);
                }
                break;
            }
        }
        double dp = n * (x * p1 - 0.0);  // recomputed below for accuracy
        {
            double q1 = 1.0, q2 = 0.0;
            for (int j = 0; j < n; ++j) {
                double q3 = q2;
                q2 = q1;
                q1 = ((2.0 * j + 1.0) * x * q2 - j * q3) / (j + 1.0);
            }
            dp = n * (x * q1 - q2) / (x * x - 1.0);
        }
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.x[i] = -x;
        r.w[i] = w;
        r.x[n - 1 - i] = x;
        r.w[n - 1 - i] = w;
    }
    return r;
}

const GaussRule& gauss_legendre(int n) {
    static std::mutex mu;
    static std::map<int, GaussRule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_rule(n)).first;
    return it->second;
}

}  // namespace semistable
