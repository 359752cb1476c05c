#include "semistable/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "semistable/gauss.hpp"
#include "semistable/semistable_law.hpp"

namespace semistable {

double LogPeriodicP::eval(double z) const {
    if (phase.empty()) throw std::runtime_error("empty profile");
    double th = std::log(z) / std::log(r);
    th -= std::floor(th);
    // locate bracketing phases (wraparound)
    auto it = std::upper_bound(phase.begin(), phase.end(), th);
    std::size_t hi = it - phase.begin();
    std::size_t lo = (hi == 0 ? phase.size() : hi) - 1;
    double th_lo = phase[lo], th_hi;
    double v_lo = value[lo], v_hi;
    if (hi == phase.size()) {
        th_hi = phase[0] + 1.0;
        v_hi = value[0];
    } else {
        th_hi = phase[hi];
        v_hi = value[hi];
    }
    if (hi == 0) th_lo -= 1.0;  // th below first phase
    double w = (th_hi > th_lo) ? (th - th_lo) / (th_hi - th_lo) : 0.0;
    return v_lo + w * (v_hi - v_lo);
}

bool LogPeriodicP::monotone_check(int grid) const {
    double prev = eval(1.0) ;
    for (int i = 1; i <= grid; ++i) {
        double z = std::pow(r, static_cast<double>(i) / grid);
        double zprev = std::pow(r, static_cast<double>(i - 1) / grid);
        double cur = eval(z);
        if (std::pow(z, rho) * cur < std::pow(zprev, rho) * prev * (1.0 - 1e-9)) return false;
        prev = cur;
    }
    return true;
}

PeriodicFn periodic_from_amplitude(const LogPeriodicM& m) {
    PeriodicFn p;
    p.r = m.period();
    p.f = m.eval;
    p.jumps = m.jump_hints;
    return p;
}

PeriodicFn periodic_from_profile(const LogPeriodicP& prof) {
    PeriodicFn p;
    p.r = prof.r;
    p.f = [prof](double z) { return prof.eval(z); };
    return p;
}

namespace {

// Int_a^b y^{rho-1} p(y) dy with panels split at the jump abscissae of p
double integrate_power_segment(const PeriodicFn& p, double rho, double a, double b) {
    std::set<double> cuts{a, b};
    for (double j0 : p.jumps) {
        // translates j0 * r^k inside (a, b)
        long klo = floor_log(a / j0, p.r) - 1, khi = floor_log(b / j0, p.r) + 1;
        for (long k = klo; k <= khi; ++k) {
            double pos = j0 * std::pow(p.r, static_cast<double>(k));
            if (pos > a && pos < b) cuts.insert(pos);
        }
    }
    double acc = 0.0;
    auto it = cuts.begin();
    double prev = *it;
    for (++it; it != cuts.end(); ++it) {
        double cur = *it;
        // subdivide long spans in log scale
        int nsub = std::max(1, static_cast<int>(std::ceil(std::log(cur / prev) / 0.4)));
        for (int s = 0; s < nsub; ++s) {
            double u = prev * std::pow(cur / prev, static_cast<double>(s) / nsub);
            double v = prev * std::pow(cur / prev, static_cast<double>(s + 1) / nsub);
            acc += gl_panel([&](double y) { return std::pow(y, rho - 1.0) * p.f(y); }, u, v, 16);
        }
        prev = cur;
    }
    return acc;
}

}  // namespace

double op_B(const PeriodicFn& p, double rho, double x) {
    if (!(rho > 0.0)) throw std::domain_error("op_B: rho must be positive");
    if (!(x > 0.0)) throw std::domain_error("op_B: x must be positive");
    // Int_0^x = Int_{x/r}^x / (1 - r^{-rho}) by periodicity of p
    double head = integrate_power_segment(p, rho, x / p.r, x);
    return std::pow(x, -rho) * head / (1.0 - std::pow(p.r, -rho));
}

double op_A(const PeriodicFn& p, double rho, double s) {
    if (!(rho > 0.0)) throw std::domain_error("op_A: rho must be positive");
    if (!(s > 0.0)) throw std::domain_error("op_A: s must be positive");
    // substitute v = s x:  Int_0^inf e^{-v} p(v/s) v^rho dv
    const double v_hi = 60.0 + 8.0 * rho;
    std::set<double> cuts{v_hi};
    double v_lo = 1e-12;
    for (double v = v_hi; v > v_lo; v *= 0.5) cuts.insert(v);
    cuts.insert(v_lo);
    for (double j0 : p.jumps) {
        long klo = floor_log(v_lo / (s * j0), p.r) - 1;
        long khi = floor_log(v_hi / (s * j0), p.r) + 1;
        for (long k = klo; k <= khi; ++k) {
            double pos = s * j0 * std::pow(p.r, static_cast<double>(k));
            if (pos > v_lo && pos < v_hi) cuts.insert(pos);
        }
    }
    double acc = 0.0;
    auto it = cuts.begin();
    double prev = *it;
    for (++it; it != cuts.end(); ++it) {
        double cur = *it;
        int nsub = std::max(1, static_cast<int>(std::ceil((cur - prev) / 4.0)));
        nsub = std::max(nsub, static_cast<int>(std::ceil(std::log(cur / prev) / (0.3 * std::log(p.r)))));
        for (int sub = 0; sub < nsub; ++sub) {
            double u = prev + (cur - prev) * sub / nsub;
            double v = prev + (cur - prev) * (sub + 1) / nsub;
            acc += gl_panel([&](double vv) { return std::exp(-vv) * p.f(vv / s) * std::pow(vv, rho); },
                            u, v, 16);
        }
        prev = cur;
    }
    return acc;
}

LogPeriodicP q0_of_amplitude(const LogPeriodicM& m, int grid) {
    PeriodicFn pm = periodic_from_amplitude(m);
    const double rho = 1.0 - m.alpha;
    // B_{1-alpha} M on one period (continuous), then A_{1-alpha} of it
    LogPeriodicP btab;
    btab.r = m.period();
    btab.rho = rho;
    for (int i = 0; i < grid; ++i) {
        double th = (i + 0.5) / grid;
        btab.phase.push_back(th);
        btab.value.push_back(op_B(pm, rho, std::pow(btab.r, th)));
    }
    PeriodicFn pb = periodic_from_profile(btab);
    LogPeriodicP q0;
    q0.r = btab.r;
    q0.rho = m.alpha;
    const int sgrid = std::max(64, grid / 4);
    for (int i = 0; i < sgrid; ++i) {
        double th = (i + 0.5) / sgrid;
        q0.phase.push_back(th);
        q0.value.push_back(op_A(pb, rho, std::pow(q0.r, th)));
    }
    return q0;
}

LaplaceValue laplace_F(const TailSpec& spec, double s) {
    if (!(s > 0.0)) throw std::domain_error("laplace_F: s must be positive");
    LaplaceValue out;
    const double Jd = 45.0 / s;
    if (Jd <= 6.0e7) {
        // (1 - e^{-s}) sum_j e^{-sj} P(tau > j), exact on the lattice
        const std::size_t J = static_cast<std::size_t>(Jd) + 1;
        const double q = std::exp(-s);
        double pw = 1.0, acc = 0.0;
        for (std::size_t j = 0; j <= J; ++j) {
            acc += pw * spec.tail_bar(static_cast<double>(j));
            pw *= q;
        }
        out.value = -std::expm1(-s) * acc;
        out.cutoff_error = std::exp(-45.0) * spec.tail_bar(Jd);
        out.exact_sum = true;
        return out;
    }
    // s Int_0^inf e^{-sy} P(tau > y) dy = Int_0^inf e^{-v} T(v/s) dv; the
    // integrand steps on the fine lattice sv but follows the smooth tail
    double acc = 0.0;
    double prev = 1e-9;
    for (double cur = 2e-9; prev < 55.0; cur *= 1.35) {
        double b = std::min(cur, 55.0);
        acc += gl_panel([&](double v) { return std::exp(-v) * spec.tail_bar(v / s); }, prev, b, 16);
        prev = b;
        if (b >= 55.0) break;
    }
    acc += 1e-9;  // head: T = 1 below the support start
    out.value = acc;
    out.cutoff_error = std::exp(-55.0) + 2.0 * s;  // lattice-step smoothing error
    out.exact_sum = false;
    return out;
}

ScalingReport renewal_scaling_p(const RenewalSequence& useq, double alpha, double c,
                                const std::vector<double>& z_grid,
                                const std::vector<long>& n_list) {
    ScalingReport rep;
    rep.z_grid = z_grid;
    rep.n_list = n_list;
    const double r = std::pow(c, 1.0 / alpha);
    for (std::size_t ni = 0; ni < n_list.size(); ++ni) {
        long n = n_list[ni];
        std::vector<double> row, drow;
        for (double z : z_grid) {
            double arg = std::pow(c, static_cast<double>(n) / alpha) * z;
            if (arg > static_cast<double>(useq.horizon()))
                throw std::out_of_range("renewal_scaling_p: horizon exceeded at n=" +
                                        std::to_string(n));
            double val = useq.partial_sum(arg) /
                         (std::pow(c, static_cast<double>(n)) * std::pow(z, alpha));
            row.push_back(val);
            drow.push_back(ni == 0 ? 0.0 : std::abs(val - rep.p_hat[ni - 1][row.size() - 1]));
        }
        rep.p_hat.push_back(row);
        rep.delta_prev.push_back(drow);
    }
    // store the profile at the largest index
    rep.limit.r = r;
    rep.limit.rho = alpha;
    std::vector<std::pair<double, double>> ph;
    for (std::size_t i = 0; i < z_grid.size(); ++i) {
        double th = std::log(z_grid[i]) / std::log(r);
        th -= std::floor(th);
        ph.emplace_back(th, rep.p_hat.back()[i]);
    }
    std::sort(ph.begin(), ph.end());
    for (auto& [t, v] : ph) {
        rep.limit.phase.push_back(t);
        rep.limit.value.push_back(v);
    }
    return rep;
}

double verify_A_alpha_p(const LogPeriodicP& p_hat, const LogPeriodicP& q0,
                        const std::vector<double>& s_grid) {
    PeriodicFn pf = periodic_from_profile(p_hat);
    double gap = 0.0;
    for (double s : s_grid) {
        double prod = op_A(pf, p_hat.rho, s) * q0.eval(s);
        gap = std::max(gap, std::abs(prod - 1.0));
    }
    return gap;
}

std::vector<double> z_grid_avoiding_jumps(const TailSpec& spec, double lo, double hi, int count,
                                          double guard) {
    const double r = spec.m.period();
    std::vector<double> out;
    int tries = 0;
    for (int i = 0; i < count; ++i) {
        double z = lo * std::pow(hi / lo, count == 1 ? 0.5 : static_cast<double>(i) / (count - 1));
        auto phase_ok = [&](double zz) {
            for (double j0 : spec.m.jump_hints) {
                double th = std::log(zz / j0) / std::log(r);
                double d = std::abs(th - std::round(th));
                if (d < guard) return false;
            }
            return true;
        };
        while (!phase_ok(z) && ++tries < 1000) z *= 1.0 + 4.0 * guard;
        out.push_back(z);
    }
    return out;
}

}  // namespace semistable
