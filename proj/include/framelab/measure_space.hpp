#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace framelab {

struct Atom {
  std::size_t id = 0;
  double weight = 0.0;
  std::optional<std::string> label;
};

/// A finite atomic measure space. Every atom carries strictly positive mass;
/// ids are contiguous from zero. Non-atomic measures enter only through
/// quadrature_discretize, so eta() is always the eta of the discretization.
///
/// Immutable; copies share the underlying storage.
class MeasureSpace {
 public:
  /// Builds a space from weights (and optional per-atom labels).
  /// Throws InvalidArgument on an empty list or any weight that is not a
  /// finite positive number.
  explicit MeasureSpace(std::vector<double> weights,
                        std::vector<std::optional<std::string>> labels = {});

  std::size_t size() const { return data_->atoms.size(); }
  std::span<const Atom> atoms() const { return data_->atoms; }
  const Atom& atom(std::size_t i) const { return data_->atoms.at(i); }
  const Eigen::VectorXd& weights() const { return data_->weights; }
  double total_mass() const { return data_->total_mass; }

  /// Same atoms with every weight multiplied by factor (> 0).
  MeasureSpace scaled(double factor) const;

  friend bool operator==(const MeasureSpace& a, const MeasureSpace& b);

 private:
  struct Data {
    std::vector<Atom> atoms;
    Eigen::VectorXd weights;
    double total_mass = 0.0;
  };
  std::shared_ptr<const Data> data_;
};

MeasureSpace make_atomic(std::span<const double> weights);

/// Infimum of the positive finite measures of measurable sets. On a finite
/// atomic space this is the smallest atom weight.
double eta(const MeasureSpace& space);

/// Midpoint-rule discretization of density(x) dx on [a, b]. Cells whose
/// weight is zero are dropped; atom labels hold the cell midpoints.
/// Throws InvalidArgument if a >= b, cells < 1, the density returns a
/// negative or non-finite value, or every cell has zero weight.
MeasureSpace quadrature_discretize(double a, double b, int cells,
                                   const std::function<double(double)>& density);

/// Product measure: atom (i, j) has weight w_i * v_j, row-major order.
MeasureSpace product_space(const MeasureSpace& left, const MeasureSpace& right);

}  // namespace framelab
