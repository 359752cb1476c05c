#include "semistable/renewal_sequence.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace semistable {

double RenewalSequence::partial_sum(double x) const {
    if (x < 0.0) return 0.0;
    std::size_t n = static_cast<std::size_t>(std::floor(x));
    if (n >= U.size()) throw std::out_of_range("renewal partial sum beyond horizon");
    return U[n];
}

RenewalSequence renewal_sequence(const std::vector<double>& g, std::size_t N) {
    if (N < 1) throw std::domain_error("renewal_sequence: N must be positive");
    RenewalSequence r;
    r.g = g;
    r.g.resize(N + 1, 0.0);
    r.u.assign(N + 1, 0.0);
    r.u[0] = 1.0;
    for (std::size_t n = 1; n <= N; ++n) {
        double acc = 0.0;
        const double* gp = r.g.data();
        const double* up = r.u.data();
        for (std::size_t j = 1; j <= n; ++j) acc += gp[j] * up[n - j];
        r.u[n] = acc;
    }
    r.U.assign(N + 1, 0.0);
    double acc = 0.0;
    for (std::size_t n = 0; n <= N; ++n) {
        acc += r.u[n];
        r.U[n] = acc;
    }
    return r;
}

namespace {

using cd = std::complex<double>;

void fft(std::vector<cd>& a, bool inverse) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        double ang = 2.0 * M_PI / static_cast<double>(len) * (inverse ? -1.0 : 1.0);
        cd wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cd w(1.0, 0.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                cd x = a[i + j], y = a[i + j + len / 2] * w;
                a[i + j] = x + y;
                a[i + j + len / 2] = x - y;
                w *= wl;
            }
        }
    }
    if (inverse)
        for (auto& v : a) v /= static_cast<double>(n);
}

// convolve a[0..la) with b[0..lb), add result into out beginning at `shift`,
// restricted to indices in [first, limit)
void conv_add(const double* a, std::size_t la, const double* b, std::size_t lb,
              std::vector<double>& out, std::size_t shift, std::size_t first,
              std::size_t limit) {
    std::size_t need = la + lb - 1;
    std::size_t n = 1;
    while (n < need) n <<= 1;
    std::vector<cd> fa(n), fb(n);
    for (std::size_t i = 0; i < la; ++i) fa[i] = a[i];
    for (std::size_t i = 0; i < lb; ++i) fb[i] = b[i];
    fft(fa, false);
    fft(fb, false);
    for (std::size_t i = 0; i < n; ++i) fa[i] *= fb[i];
    fft(fa, true);
    for (std::size_t i = 0; i < need; ++i) {
        std::size_t idx = shift + i;
        if (idx >= limit) break;
        if (idx < first) continue;
        out[idx] += fa[i].real();
    }
}

// online convolution: within [lo, hi) assume u[lo..mid) final; push their
// contribution g * u into u[mid..hi)
void cdq(std::vector<double>& u, const std::vector<double>& g, std::size_t lo, std::size_t hi) {
    if (hi - lo <= 64) {
        for (std::size_t n = std::max<std::size_t>(lo, 1); n < hi; ++n) {
            double acc = u[n];
            std::size_t jmax = n - lo;
            for (std::size_t j = 1; j <= jmax; ++j) acc += g[j] * u[n - j];
            u[n] = acc;
        }
        return;
    }
    std::size_t mid = lo + (hi - lo) / 2;
    cdq(u, g, lo, mid);
    // contribution of u[lo..mid) through g[1..hi-lo) into [mid, hi)
    std::size_t glen = std::min(g.size() - 1, hi - lo - 1);
    if (glen >= 1)
        conv_add(u.data() + lo, mid - lo, g.data() + 1, glen, u, lo + 1, mid, hi);
    cdq(u, g, mid, hi);
}

}  // namespace

std::vector<double> renewal_sequence_fft(const std::vector<double>& g, std::size_t N) {
    std::vector<double> gg = g;
    gg.resize(N + 1, 0.0);
    std::vector<double> u(N + 1, 0.0);
    u[0] = 1.0;
    cdq(u, gg, 0, N + 1);
    return u;
}

}  // namespace semistable
