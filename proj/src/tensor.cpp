#include "framelab/tensor.hpp"

#include <cmath>

#include "framelab/error.hpp"

namespace framelab {

TensorFrame tensor_product(const Frame& left, const Frame& right) {
  if (left.field() != right.field()) {
    throw InvalidArgument("tensor product needs both factors over the same field");
  }
  const Eigen::Index n1 = static_cast<Eigen::Index>(left.size());
  const Eigen::Index n2 = static_cast<Eigen::Index>(right.size());
  Matrix v(left.dim() * right.dim(), n1 * n2);
  for (Eigen::Index i = 0; i < n1; ++i) {
    for (Eigen::Index j = 0; j < n2; ++j) {
      v.col(i * n2 + j) = kron<Complex>(left.vectors().col(i), right.vectors().col(j));
    }
  }
  return {left, right, Frame(product_space(left.space(), right.space()), std::move(v), left.field())};
}

bool is_parseval(const Frame& frame, double tol) {
  const FrameBounds b = frame_bounds(frame);
  return std::abs(b.lower - 1.0) <= tol && std::abs(b.upper - 1.0) <= tol;
}

TensorPrCheck tensor_pr_check(const Frame& left, const Frame& right, const Tolerances& tol) {
  if (!left.is_real() || !right.is_real()) {
    throw PreconditionError("tensor phase retrieval check is decided over the reals only");
  }
  const TensorFrame t = tensor_product(left, right);
  if (t.product.size() > tol.enumeration_cap) {
    throw CapExceeded("product frame has " + std::to_string(t.product.size()) +
                      " atoms, above the enumeration cap");
  }
  TensorPrCheck out;
  out.left = phase_retrieval_certify(left, tol);
  out.right = phase_retrieval_certify(right, tol);
  out.product = phase_retrieval_certify(t.product, tol);
  const bool factors = out.left.verdict == Verdict::holds && out.right.verdict == Verdict::holds;
  out.theorem_consistent = (out.product.verdict == Verdict::holds) == factors;
  return out;
}

TensorNrCheck tensor_nr_check(const Frame& left, const Frame& right, const Tolerances& tol) {
  if (!left.is_real() || !right.is_real()) {
    throw PreconditionError("tensor norm retrieval check is decided over the reals only");
  }
  if (!is_parseval(left)) throw PreconditionError("left factor must be a Parseval frame");
  const TensorFrame t = tensor_product(left, right);
  if (t.product.size() > tol.enumeration_cap) {
    throw CapExceeded("product frame has " + std::to_string(t.product.size()) +
                      " atoms, above the enumeration cap");
  }
  TensorNrCheck out;
  out.right = norm_retrieval_certify(right, tol);
  if (out.right.verdict != Verdict::holds) {
    throw PreconditionError("right factor must be norm retrieval");
  }
  out.left = norm_retrieval_certify(left, tol);
  out.product = norm_retrieval_certify(t.product, tol);
  // Product NR is predicted; product NR in turn forces both factors NR.
  out.consistent = out.product.verdict == Verdict::holds && out.left.verdict == Verdict::holds &&
                   out.right.verdict == Verdict::holds;
  return out;
}

}  // namespace framelab
