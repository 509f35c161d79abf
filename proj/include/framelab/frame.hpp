#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "framelab/linalg.hpp"
#include "framelab/measure_space.hpp"

namespace framelab {

enum class Field { real, complex };

const char* to_string(Field field);
Field field_from_string(std::string_view name);

/// Numerical cutoffs shared by the certifiers.
struct Tolerances {
  /// Singular values at or below rank * sigma_max(frame) count as zero.
  double rank = 1e-10;
  /// Two unit null-space vectors are treated as orthogonal below this.
  double orthogonality = 1e-8;
  /// Slack for inequality and identity checks.
  double check = 1e-9;
  /// Largest atom count accepted by exhaustive subset enumeration.
  std::size_t enumeration_cap = 24;
};

/// A frame F : X -> H over a finite atomic measure space, H = R^d or C^d.
/// Column i of vectors() is F(x_i). Real frames keep a real copy of the
/// vectors so real-only algorithms never see complex rounding.
class Frame {
 public:
  /// Throws InvalidArgument if the column count differs from the atom
  /// count, dim is zero, an entry is not finite, or a real frame is given
  /// an entry with a nonzero imaginary part.
  Frame(MeasureSpace space, Matrix vectors, Field field);
  Frame(MeasureSpace space, const Eigen::MatrixXd& vectors);

  const MeasureSpace& space() const { return space_; }
  Field field() const { return field_; }
  bool is_real() const { return field_ == Field::real; }
  Eigen::Index dim() const { return vectors_.rows(); }
  std::size_t size() const { return space_.size(); }
  const Eigen::VectorXd& weights() const { return space_.weights(); }

  const Matrix& vectors() const { return vectors_; }
  /// Only meaningful for real frames; empty otherwise.
  const Eigen::MatrixXd& real_vectors() const { return real_vectors_; }
  Vector vector(std::size_t i) const { return vectors_.col(static_cast<Eigen::Index>(i)); }

  /// Same measure space, new vectors (field inferred: stays real only if
  /// this frame is real and the new vectors have no imaginary part).
  Frame with_vectors(Matrix vectors) const;
  Frame with_space(MeasureSpace space) const;

  /// Absolute rank cutoff: tol * largest singular value of the vectors.
  double rank_threshold(double tol) const;

  /// Calls fn with real_vectors() for real frames and vectors() otherwise,
  /// so algorithms can be written once for both scalar fields.
  template <typename Fn>
  decltype(auto) visit(Fn&& fn) const {
    if (is_real()) return fn(real_vectors_);
    return fn(vectors_);
  }

 private:
  MeasureSpace space_;
  Matrix vectors_;
  Eigen::MatrixXd real_vectors_;
  Field field_;
};

struct FrameBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// A function on the atoms, an element of L^2(X, mu).
struct CoefficientVector {
  Vector values;
  Eigen::VectorXd weights;

  double norm() const;
  /// Weighted L^2 inner product.
  Complex inner(const CoefficientVector& other) const;
};

/// Frame predicate threshold: A > kFrameRatio * B.
inline constexpr double kFrameRatio = 1e-10;

bool is_frame(const FrameBounds& bounds);

/// c_i = <f, F(x_i)>.
CoefficientVector analysis(const Frame& frame, const Vector& f);

/// sum_i w_i c_i F(x_i).
Vector synthesis(const Frame& frame, const CoefficientVector& c);

/// S = sum_i w_i F(x_i) F(x_i)^*.
Matrix frame_operator(const Frame& frame);

/// Optimal frame bounds: extreme eigenvalues of S (lower clamped at 0).
FrameBounds frame_bounds(const Frame& frame);

/// True iff the vectors have numerical rank d; no nonzero f is orthogonal
/// to every F(x).
bool is_mu_complete(const Frame& frame, double tol = Tolerances{}.rank);

struct BesselCheck {
  double bound = 0.0;  // sqrt(B / eta)
  double max_norm = 0.0;
  bool holds = false;
};

/// Compares max_x ||F(x)|| with the Bessel bound sqrt(B / eta). Every frame
/// satisfies it; a false result means the inputs are numerically broken.
BesselCheck bessel_norm_bound_check(const Frame& frame);

/// |<f, F(x_i)>| per atom.
CoefficientVector magnitudes(const Frame& frame, const Vector& f);

struct LipschitzCheck {
  double lhs = 0.0;  // || |T f| - |T g| ||_{L^2}
  double rhs = 0.0;  // sqrt(B) * min_{|a|=1} ||f - a g||
  bool holds = false;
};

LipschitzCheck lipschitz_check(const Frame& frame, const Vector& f, const Vector& g);

/// min over unimodular a of ||f - a g|| in the given field.
double phase_distance(const Vector& f, const Vector& g, Field field);

/// Frame with vectors U F(x_i); U must have d columns.
Frame apply_operator(const Frame& frame, const Matrix& op);

/// Canonical Parseval frame S^{-1/2} F. Throws PreconditionError when the
/// input is not a frame.
Frame parsevalize(const Frame& frame);

/// Throws InvalidArgument unless f has length frame.dim().
void require_dim(const Frame& frame, const Vector& f, const char* what);

}  // namespace framelab
