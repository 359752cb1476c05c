#include "semistable/figures.hpp"

#include <cmath>
#include <filesystem>
#include <stdexcept>

#include "semistable/csv.hpp"
#include "semistable/h_distribution.hpp"

namespace semistable {

namespace {

// lambda = 1/c is the circular twin of lambda = 1: the laws coincide by
// periodicity, so figure grids may include the endpoint.
double wrap_lambda(double lam, double c) {
    if (lam <= 1.0 / c * (1.0 + 1e-12)) return lam * c;
    return lam;
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v;
    for (int i = 0; i < n; ++i) v.push_back(a + (b - a) * i / (n - 1));
    return v;
}

}  // namespace

std::vector<std::string> write_figure(int id, const std::string& out_dir,
                                      const QuadratureConfig& q) {
    std::filesystem::create_directories(out_dir);
    std::vector<std::string> files;
    auto g_curves = [&](const LogPeriodicM& m, const std::vector<double>& lambdas,
                        const std::vector<double>& xs, const std::string& path) {
        CsvWriter csv(path, {"x", "lambda", "value"});
        for (double lam : lambdas) {
            SemistableLaw law(m, wrap_lambda(lam, m.c));
            for (double x : xs) csv.row({x, lam, law.cdf(x, q).value});
        }
        files.push_back(path);
    };
    auto h_curves = [&](const LogPeriodicM& m, const std::vector<double>& lambdas,
                        const std::vector<double>& xs, const std::string& path) {
        CsvWriter csv(path, {"x", "lambda", "value"});
        for (double lam : lambdas) {
            double le = wrap_lambda(lam, m.c);
            for (double x : xs) csv.row({x, lam, H_lambda_cdf(m, le, x, q).value});
        }
        files.push_back(path);
    };

    switch (id) {
        case 1: {
            auto m = st_petersburg_amplitude(0.5);
            g_curves(m, {0.5, 0.75, 1.0}, linspace(0.05, 12.0, 180),
                     out_dir + "/fig1_g_stpetersburg.csv");
            break;
        }
        case 2: {
            auto m = st_petersburg_amplitude(0.5);
            h_curves(m, {0.5, 0.75, 1.0}, linspace(0.08, 3.5, 120),
                     out_dir + "/fig2_h_stpetersburg.csv");
            break;
        }
        case 3: {
            auto m = wang_amplitude(0.5, 2.0, 0.04);
            g_curves(m, {0.5, 0.75}, linspace(0.05, 12.0, 240),
                     out_dir + "/fig3_g_wang.csv");
            break;
        }
        case 4: {
            auto m = wang_amplitude(0.5, 2.0, 0.04);
            h_curves(m, {1.0}, linspace(0.02, 3.5, 150), out_dir + "/fig4_h_wang.csv");
            break;
        }
        default:
            throw std::invalid_argument("figure id must be 1..4");
    }
    return files;
}

}  // namespace semistable
