#pragma once

#include <string>
#include <vector>

#include "semistable/semistable_law.hpp"

namespace semistable {

// Figure datasets as CSV files (columns x, lambda, value):
//   1  G_lambda curves, St. Petersburg family (alpha = 0.5)
//   2  H_lambda curves, St. Petersburg family
//   3  G_0.5 and G_0.75, perturbed piecewise-linear family (eps = 0.04, c = 2)
//   4  H_1, perturbed piecewise-linear family
// Returns the paths written.
std::vector<std::string> write_figure(int id, const std::string& out_dir,
                                      const QuadratureConfig& q = {});

}  // namespace semistable
