#pragma once

#include <initializer_list>
#include <vector>

#include "framelab/frame.hpp"

namespace framelab::testing {

/// Real frame with counting measure from a list of column vectors.
inline Frame real_frame(std::initializer_list<std::initializer_list<double>> columns,
                        std::vector<double> weights = {}) {
  const auto n = static_cast<Eigen::Index>(columns.size());
  const auto d = static_cast<Eigen::Index>(columns.begin()->size());
  Eigen::MatrixXd m(d, n);
  Eigen::Index j = 0;
  for (const auto& col : columns) {
    Eigen::Index i = 0;
    for (double x : col) m(i++, j) = x;
    ++j;
  }
  if (weights.empty()) weights.assign(static_cast<std::size_t>(n), 1.0);
  return Frame(MeasureSpace(std::move(weights)), m);
}

inline Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

}  // namespace framelab::testing
