#include "framelab/frame.hpp"

#include <algorithm>
#include <cmath>

#include "framelab/error.hpp"

namespace framelab {

const char* to_string(Field field) { return field == Field::real ? "real" : "complex"; }

Field field_from_string(std::string_view name) {
  if (name == "real") return Field::real;
  if (name == "complex") return Field::complex;
  throw InvalidArgument("unknown field '" + std::string(name) + "'");
}

std::vector<std::size_t> complement_ids(std::span<const std::size_t> ids, std::size_t n) {
  std::vector<std::size_t> out;
  out.reserve(n - std::min(n, ids.size()));
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (k < ids.size() && ids[k] == i) {
      ++k;
    } else {
      out.push_back(i);
    }
  }
  return out;
}

Frame::Frame(MeasureSpace space, Matrix vectors, Field field)
    : space_(std::move(space)), vectors_(std::move(vectors)), field_(field) {
  if (vectors_.rows() == 0) throw InvalidArgument("frame dimension must be positive");
  if (static_cast<std::size_t>(vectors_.cols()) != space_.size()) {
    throw InvalidArgument("frame has " + std::to_string(vectors_.cols()) + " vectors for " +
                          std::to_string(space_.size()) + " atoms");
  }
  if (!vectors_.allFinite()) throw InvalidArgument("frame vectors must be finite");
  if (field_ == Field::real) {
    if (!vectors_.imag().isZero(0.0)) {
      throw InvalidArgument("real frame has entries with nonzero imaginary part");
    }
    real_vectors_ = vectors_.real();
  }
}

Frame::Frame(MeasureSpace space, const Eigen::MatrixXd& vectors)
    : Frame(std::move(space), vectors.cast<Complex>(), Field::real) {}

Frame Frame::with_vectors(Matrix vectors) const {
  const Field field = (is_real() && vectors.imag().isZero(0.0)) ? Field::real : Field::complex;
  return Frame(space_, std::move(vectors), field);
}

Frame Frame::with_space(MeasureSpace space) const { return Frame(std::move(space), vectors_, field_); }

double Frame::rank_threshold(double tol) const {
  return tol * visit([](const auto& m) { return largest_singular_value(m); });
}

double CoefficientVector::norm() const {
  return std::sqrt((weights.array() * values.array().abs2()).sum());
}

Complex CoefficientVector::inner(const CoefficientVector& other) const {
  if (other.values.size() != values.size()) {
    throw InvalidArgument("coefficient vectors live on different spaces");
  }
  return (weights.cast<Complex>().array() * values.array() * other.values.array().conjugate())
      .sum();
}

bool is_frame(const FrameBounds& bounds) {
  return bounds.upper > 0.0 && bounds.lower > kFrameRatio * bounds.upper;
}

void require_dim(const Frame& frame, const Vector& f, const char* what) {
  if (f.size() != frame.dim()) {
    throw InvalidArgument(std::string(what) + " has length " + std::to_string(f.size()) +
                          ", frame dimension is " + std::to_string(frame.dim()));
  }
  if (!f.allFinite()) throw InvalidArgument(std::string(what) + " must be finite");
}

CoefficientVector analysis(const Frame& frame, const Vector& f) {
  require_dim(frame, f, "analysis input");
  return {frame.vectors().adjoint() * f, frame.weights()};
}

Vector synthesis(const Frame& frame, const CoefficientVector& c) {
  if (static_cast<std::size_t>(c.values.size()) != frame.size()) {
    throw InvalidArgument("coefficient vector has " + std::to_string(c.values.size()) +
                          " entries for " + std::to_string(frame.size()) + " atoms");
  }
  return frame.vectors() * (frame.weights().cast<Complex>().array() * c.values.array()).matrix();
}

Matrix frame_operator(const Frame& frame) {
  const Matrix& v = frame.vectors();
  Matrix s = v * frame.weights().cast<Complex>().asDiagonal() * v.adjoint();
  // exact hermitian symmetry
  return (s + s.adjoint()) / 2.0;
}

FrameBounds frame_bounds(const Frame& frame) {
  const Eigen::VectorXd ev = frame.visit([&](const auto& m) -> Eigen::VectorXd {
    using M = std::decay_t<decltype(m)>;
    M s = m * frame.weights().asDiagonal() * m.adjoint();
    s = (s + s.adjoint()).eval() / 2.0;
    Eigen::SelfAdjointEigenSolver<M> es(s, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
  });
  return {std::max(ev(0), 0.0), std::max(ev(ev.size() - 1), 0.0)};
}

bool is_mu_complete(const Frame& frame, double tol) {
  return frame.visit([&](const auto& m) {
    const Eigen::VectorXd s = singular_values(m);
    if (s.size() < frame.dim() || s(0) == 0.0) return false;
    return s(frame.dim() - 1) > tol * s(0);
  });
}

BesselCheck bessel_norm_bound_check(const Frame& frame) {
  const FrameBounds b = frame_bounds(frame);
  BesselCheck out;
  out.bound = std::sqrt(b.upper / eta(frame.space()));
  out.max_norm = frame.vectors().colwise().norm().maxCoeff();
  out.holds = out.max_norm <= out.bound + Tolerances{}.check * std::max(1.0, out.bound);
  return out;
}

CoefficientVector magnitudes(const Frame& frame, const Vector& f) {
  CoefficientVector c = analysis(frame, f);
  c.values = c.values.cwiseAbs().cast<Complex>();
  return c;
}

double phase_distance(const Vector& f, const Vector& g, Field field) {
  if (field == Field::real) return std::min((f - g).norm(), (f + g).norm());
  const double d2 = f.squaredNorm() + g.squaredNorm() - 2.0 * std::abs(g.dot(f));
  return std::sqrt(std::max(d2, 0.0));
}

LipschitzCheck lipschitz_check(const Frame& frame, const Vector& f, const Vector& g) {
  require_dim(frame, f, "f");
  require_dim(frame, g, "g");
  const Eigen::VectorXd mf = (frame.vectors().adjoint() * f).cwiseAbs();
  const Eigen::VectorXd mg = (frame.vectors().adjoint() * g).cwiseAbs();
  LipschitzCheck out;
  out.lhs = std::sqrt((frame.weights().array() * (mf - mg).array().square()).sum());
  out.rhs = std::sqrt(frame_bounds(frame).upper) * phase_distance(f, g, frame.field());
  out.holds = out.lhs <= out.rhs + Tolerances{}.check * (1.0 + out.rhs);
  return out;
}

Frame apply_operator(const Frame& frame, const Matrix& op) {
  if (op.cols() != frame.dim()) {
    throw InvalidArgument("operator has " + std::to_string(op.cols()) +
                          " columns, frame dimension is " + std::to_string(frame.dim()));
  }
  if (op.rows() == 0) throw InvalidArgument("operator must have at least one row");
  if (!op.allFinite()) throw InvalidArgument("operator must be finite");
  return frame.with_vectors(op * frame.vectors());
}

Frame parsevalize(const Frame& frame) {
  const FrameBounds b = frame_bounds(frame);
  if (!is_frame(b)) throw PreconditionError("parsevalize: input is not a frame (lower bound ~ 0)");
  Eigen::SelfAdjointEigenSolver<Matrix> es(frame_operator(frame));
  const Eigen::VectorXd inv_sqrt = es.eigenvalues().cwiseSqrt().cwiseInverse();
  const Matrix s_inv_half =
      es.eigenvectors() * inv_sqrt.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
  Matrix v = s_inv_half * frame.vectors();
  if (frame.is_real()) v = v.real().cast<Complex>();
  return frame.with_vectors(std::move(v));
}

}  // namespace framelab
