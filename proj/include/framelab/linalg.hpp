#pragma once

#include <complex>
#include <cmath>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace framelab {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

template <typename Scalar>
using MatrixT = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorT = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// <u, v> = sum_k u_k conj(v_k); linear in the first slot.
template <typename Scalar>
Scalar inner(const VectorT<Scalar>& u, const VectorT<Scalar>& v) {
  return v.dot(u);  // Eigen conjugates the left operand
}

inline double abs2(double x) { return x * x; }
inline double abs2(const Complex& z) { return std::norm(z); }

/// Singular values of a d x k column matrix; empty when k == 0.
template <typename Scalar>
Eigen::VectorXd singular_values(const MatrixT<Scalar>& columns) {
  if (columns.cols() == 0 || columns.rows() == 0) return Eigen::VectorXd();
  Eigen::JacobiSVD<MatrixT<Scalar>> svd(columns);
  return svd.singularValues();
}

template <typename Scalar>
double largest_singular_value(const MatrixT<Scalar>& columns) {
  const Eigen::VectorXd s = singular_values(columns);
  return s.size() == 0 ? 0.0 : s(0);
}

/// Number of singular values strictly above an absolute threshold.
template <typename Scalar>
Eigen::Index numerical_rank(const MatrixT<Scalar>& columns, double threshold) {
  const Eigen::VectorXd s = singular_values(columns);
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > threshold) ++r;
  }
  return r;
}

/// Fixes the phase of v so that its largest-magnitude entry (first one on
/// ties) is real and positive. Makes basis choices reproducible.
template <typename Scalar>
void normalize_phase(Eigen::Ref<VectorT<Scalar>> v) {
  Eigen::Index best = 0;
  double best_mag = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double m = std::abs(v(i));
    if (m > best_mag * (1.0 + 1e-12) + 1e-300) {
      best = i;
      best_mag = m;
    }
  }
  if (best_mag <= 0.0) return;
  const Scalar phase = v(best) / best_mag;
  v /= phase;
  if constexpr (!std::is_same_v<Scalar, double>) v(best) = Scalar(std::abs(v(best)), 0.0);
}

/// Orthonormal basis (as columns) of {f : <f, c_j> = 0 for every column c_j},
/// computed from the full left singular vectors. With zero columns the
/// result is the identity of size dim.
template <typename Scalar>
MatrixT<Scalar> orthogonal_complement(const MatrixT<Scalar>& columns, Eigen::Index dim,
                                      double threshold) {
  if (columns.cols() == 0) return MatrixT<Scalar>::Identity(dim, dim);
  Eigen::JacobiSVD<MatrixT<Scalar>> svd(columns, Eigen::ComputeFullU);
  const Eigen::VectorXd& s = svd.singularValues();
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > threshold) ++r;
  }
  MatrixT<Scalar> basis = svd.matrixU().rightCols(dim - r);
  for (Eigen::Index j = 0; j < basis.cols(); ++j) {
    normalize_phase<Scalar>(basis.col(j));
  }
  return basis;
}

/// Columns of m selected by ids, in the given order.
template <typename Scalar>
MatrixT<Scalar> select_columns(const MatrixT<Scalar>& m, std::span<const std::size_t> ids) {
  MatrixT<Scalar> out(m.rows(), static_cast<Eigen::Index>(ids.size()));
  for (std::size_t j = 0; j < ids.size(); ++j) {
    out.col(static_cast<Eigen::Index>(j)) = m.col(static_cast<Eigen::Index>(ids[j]));
  }
  return out;
}

/// Sorted complement of a sorted id list within {0, ..., n-1}.
std::vector<std::size_t> complement_ids(std::span<const std::size_t> ids, std::size_t n);

/// Kronecker product of two vectors, left index outer.
template <typename Scalar>
VectorT<Scalar> kron(const VectorT<Scalar>& a, const VectorT<Scalar>& b) {
  VectorT<Scalar> out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

}  // namespace framelab
