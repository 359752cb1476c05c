#pragma once

#include <cstddef>
#include <vector>

namespace semistable {

struct GaussRule {
    std::vector<double> x;  // nodes on [-1,1]
    std::vector<double> w;
};

// Gauss-Legendre rule of order n (cached; thread-safe after first use).
const GaussRule& gauss_legendre(int n);

// Integrate f over [a,b] with a single Gauss-Legendre panel.
template <typename F>
auto gl_panel(F&& f, double a, double b, int order = 24) -> decltype(f(0.0)) {
    const GaussRule& r = gauss_legendre(order);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    decltype(f(0.0)) acc{};
    for (std::size_t i = 0; i < r.x.size(); ++i)
        acc += r.w[i] * f(mid + half * r.x[i]);
    return acc * half;
}

}  // namespace semistable
