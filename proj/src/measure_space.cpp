#include "framelab/measure_space.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

#include "framelab/error.hpp"

namespace framelab {

namespace {

std::string shortest_decimal(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, end);
}

}  // namespace

MeasureSpace::MeasureSpace(std::vector<double> weights,
                           std::vector<std::optional<std::string>> labels) {
  if (weights.empty()) throw InvalidArgument("measure space needs at least one atom");
  if (!labels.empty() && labels.size() != weights.size()) {
    throw InvalidArgument("label count does not match atom count");
  }
  auto data = std::make_shared<Data>();
  data->atoms.reserve(weights.size());
  data->weights.resize(static_cast<Eigen::Index>(weights.size()));
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double w = weights[i];
    if (!std::isfinite(w) || w <= 0.0) {
      throw InvalidArgument("atom " + std::to_string(i) + " has non-positive weight " +
                            shortest_decimal(w));
    }
    data->atoms.push_back({i, w, labels.empty() ? std::nullopt : std::move(labels[i])});
    data->weights(static_cast<Eigen::Index>(i)) = w;
  }
  data->total_mass = data->weights.sum();
  data_ = std::move(data);
}

MeasureSpace MeasureSpace::scaled(double factor) const {
  std::vector<double> w(size());
  std::vector<std::optional<std::string>> labels(size());
  for (std::size_t i = 0; i < size(); ++i) {
    w[i] = atom(i).weight * factor;
    labels[i] = atom(i).label;
  }
  return MeasureSpace(std::move(w), std::move(labels));
}

bool operator==(const MeasureSpace& a, const MeasureSpace& b) {
  if (a.data_ == b.data_) return true;
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.atom(i).weight != b.atom(i).weight || a.atom(i).label != b.atom(i).label) return false;
  }
  return true;
}

MeasureSpace make_atomic(std::span<const double> weights) {
  return MeasureSpace(std::vector<double>(weights.begin(), weights.end()));
}

double eta(const MeasureSpace& space) { return space.weights().minCoeff(); }

MeasureSpace quadrature_discretize(double a, double b, int cells,
                                   const std::function<double(double)>& density) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) {
    throw InvalidArgument("quadrature interval must satisfy a < b");
  }
  if (cells < 1) throw InvalidArgument("quadrature needs at least one cell");
  const double h = (b - a) / cells;
  std::vector<double> weights;
  std::vector<std::optional<std::string>> labels;
  for (int k = 0; k < cells; ++k) {
    const double mid = a + (k + 0.5) * h;
    const double rho = density(mid);
    if (!std::isfinite(rho) || rho < 0.0) {
      throw InvalidArgument("density must be finite and nonnegative, got " +
                            shortest_decimal(rho) + " at " + shortest_decimal(mid));
    }
    const double w = rho * h;
    if (w > 0.0) {
      weights.push_back(w);
      labels.emplace_back(shortest_decimal(mid));
    }
  }
  if (weights.empty()) throw InvalidArgument("density vanishes at every quadrature midpoint");
  return MeasureSpace(std::move(weights), std::move(labels));
}

MeasureSpace product_space(const MeasureSpace& left, const MeasureSpace& right) {
  std::vector<double> w;
  std::vector<std::optional<std::string>> labels;
  w.reserve(left.size() * right.size());
  labels.reserve(left.size() * right.size());
  for (const Atom& x : left.atoms()) {
    for (const Atom& y : right.atoms()) {
      w.push_back(x.weight * y.weight);
      labels.emplace_back(std::to_string(x.id) + "," + std::to_string(y.id));
    }
  }
  return MeasureSpace(std::move(w), std::move(labels));
}

}  // namespace framelab
