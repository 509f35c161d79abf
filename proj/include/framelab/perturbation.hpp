#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "framelab/frame.hpp"
#include "framelab/retrieval.hpp"

namespace framelab {

/// A perturbed frame together with a pair of vectors whose measurements
/// agree in magnitude on it but which the lost property would separate.
struct PerturbationResult {
  Frame perturbed;
  Vector witness_f;
  Vector witness_g;
  /// sum_i w_i ||F(x_i) - G(x_i)||^2
  double l2_distance = 0.0;
  FrameBounds new_bounds;
};

/// Removes the e1 component from every tail vector, where e1 = F(x1)/||F(x1)||
/// for the first head atom with a nonzero vector. With e2 a unit vector
/// orthogonal to the head, f = e1 + 2 e2 and g = e1 - 2 e2 have equal
/// magnitudes on the result.
///
/// Throws PreconditionError when every head vector is zero, the head spans
/// H, or the tail energy sum_tail w |<e1, F>|^2 is not below epsilon.
PerturbationResult break_phase_retrieval(const Frame& frame, std::span<const std::size_t> head,
                                         double epsilon, const Tolerances& tol = {});

struct NormBreakResult {
  /// witness_f / witness_g are w2 + w1 and w2 - w1: equal magnitudes on
  /// the perturbed frame, different norms.
  PerturbationResult result;
  /// Unit f in null(S) and unit g in null(S^c) used by the construction.
  Vector f;
  Vector g;
  /// w1 = 2 sqrt(B) ||g|| f/||f|| + eps g annihilates F' on S; w2 = g
  /// annihilates F' off S.
  Vector w1;
  Vector w2;
  /// <w1, w2>, equal to eps ||g||^2.
  double w_inner = 0.0;
  /// <w1 / (2 sqrt(B) ||g||), w2 / ||g||> = eps / (2 sqrt(B)).
  double scaled_inner = 0.0;
  double max_delta_norm = 0.0;
  /// Largest eigenvalue of sum_S w eps^2 delta delta^*; at most eps^2 / 4.
  double perturbation_energy = 0.0;
  /// norm_retrieval_certify on the perturbed frame (when within the cap).
  std::optional<Certificate> certificate;
  /// Whether S itself violates null-space orthogonality on the result.
  bool subset_violates = false;
};

/// Perturbs F on S by F'(x) = F(x) - eps <F(x), g> f / (2 sqrt(B) ||f|| ||g||)
/// so that the perturbed frame is no longer norm retrieval. Real field only.
/// Throws PreconditionError if a null space is trivial, the chosen f and g
/// are not orthogonal (the input is not norm retrieval on S), or
/// eps >= 2 sqrt(A).
NormBreakResult break_norm_retrieval(const Frame& frame, std::span<const std::size_t> subset,
                                     double epsilon, const Tolerances& tol = {});

struct SweepRow {
  double lambda = 0.0;
  bool all_preserved = true;
  int failures = 0;
};

/// Empirical stability of phase retrieval: for each lambda, perturbs every
/// atom by a vector drawn uniformly from the ball of radius lambda and
/// re-certifies. Trial t of lambda k is seeded from (seed, k, t).
/// Throws PreconditionError unless the input is real and certified PR.
std::vector<SweepRow> stability_sweep(const Frame& frame, std::span<const double> lambdas,
                                      int trials, std::uint64_t seed, const Tolerances& tol = {});

}  // namespace framelab
