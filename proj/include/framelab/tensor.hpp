#pragma once

#include "framelab/frame.hpp"
#include "framelab/retrieval.hpp"

namespace framelab {

/// Product frame F1 (x) F2 over the product measure. Elements of H1 (x) H2
/// are flat vectors of length d1 * d2: entry i * d2 + j is the (i, j) entry
/// of the d1 x d2 matrix identified with the antilinear map T(b) = M conj(b).
/// Atom (i, j) is at index i * n2 + j.
struct TensorFrame {
  Frame left;
  Frame right;
  Frame product;
};

/// Throws InvalidArgument when the two factors have different fields.
TensorFrame tensor_product(const Frame& left, const Frame& right);

struct TensorPrCheck {
  Certificate left;
  Certificate right;
  Certificate product;
  /// product holds == (left holds && right holds)
  bool theorem_consistent = false;
};

/// Certifies phase retrieval of both factors and of the product (real).
TensorPrCheck tensor_pr_check(const Frame& left, const Frame& right, const Tolerances& tol = {});

struct TensorNrCheck {
  Certificate left;
  Certificate right;
  Certificate product;
  /// Product is norm retrieval, and so are both factors.
  bool consistent = false;
};

/// Parseval left factor and norm-retrieval right factor give a
/// norm-retrieval product. Throws PreconditionError if the left factor is
/// not Parseval (bounds within 1e-8 of 1) or the right is not certified NR.
TensorNrCheck tensor_nr_check(const Frame& left, const Frame& right, const Tolerances& tol = {});

bool is_parseval(const Frame& frame, double tol = 1e-8);

}  // namespace framelab
