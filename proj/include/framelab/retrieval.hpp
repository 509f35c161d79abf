#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "framelab/frame.hpp"

namespace framelab {

using AtomSet = std::vector<std::size_t>;

enum class Verdict { holds, fails, inconclusive };
const char* to_string(Verdict verdict);

struct VectorPair {
  Vector f;
  Vector g;
};

/// Outcome of a retrieval check. A failing certificate always carries a
/// witness that can be re-verified by hand: the violating atom subset and,
/// where the certifier can build one, a vector pair with equal measurement
/// magnitudes that the property would forbid.
struct Certificate {
  Verdict verdict = Verdict::inconclusive;
  std::optional<AtomSet> witness_subset;
  std::optional<VectorPair> witness_pair;
  std::optional<double> alpha_estimate;
  /// Size of the violation (e.g. largest null-space inner product).
  std::optional<double> violation;
  std::string method;
  Field field = Field::real;
};

/// Complement property: for every subset S, the vectors on S or the
/// vectors on its complement span H. Subsets are visited in lexicographic
/// order restricted to those containing atom 0 (one per {S, S^c} pair);
/// a subtree is pruned as soon as its root spans, since supersets of a
/// spanning set span. The witness is the lexicographically smallest
/// violating subset. Throws CapExceeded when size() > enumeration_cap.
Certificate complement_property(const Frame& frame, const Tolerances& tol = {});

struct AlphaOptions {
  int restarts = 16;
  int iters = 500;
  double tol = 1e-13;
  std::uint64_t seed = 0;
};

/// Phase retrieval. Over R this is decided exactly by the complement
/// property. Over C a failing complement property still proves failure;
/// otherwise the verdict is inconclusive with an alpha estimate attached.
Certificate phase_retrieval_certify(const Frame& frame, const Tolerances& tol = {},
                                    const AlphaOptions& alpha = {});

/// R(f) = sum_i w_i |<f, F_i>|^2 F_i F_i^*.
struct RQuadraticForm {
  Vector f;
  Matrix matrix;
};

RQuadraticForm r_operator(const Frame& frame, const Vector& f);

/// q(f, g) = sum_i w_i |<f, F_i>|^2 |<g, F_i>|^2 = <R(f) g, g>.
double biquadratic(const Frame& frame, const Vector& f, const Vector& g);

struct AlphaResult {
  double alpha = 0.0;
  Vector argmin_f;
  Vector argmin_g;
  /// Objective after every half step, one trace per restart.
  std::vector<std::vector<double>> traces;
};

/// Estimates alpha = min over unit f, g of q(f, g) by alternating
/// minimization: g <- bottom eigenvector of R(f), f <- bottom eigenvector
/// of R(g). The objective never increases along a trace. The result is an
/// upper estimate of the true minimum, so alpha > 0 is evidence (not proof)
/// of phase retrieval.
AlphaResult alpha_certify(const Frame& frame, const AlphaOptions& options = {});

/// Norm retrieval over R via null-space orthogonality: for every subset
/// Omega, null(Omega) must be orthogonal to null(Omega^c). Subsets where
/// either null space is trivial are vacuous. Throws PreconditionError for
/// complex frames and CapExceeded beyond the cap.
Certificate norm_retrieval_certify(const Frame& frame, const Tolerances& tol = {});

/// Largest |<u, v>| over orthonormal bases u of null(Omega) and v of
/// null(Omega^c); zero when either null space is trivial. Real field only.
double null_space_overlap(const Frame& frame, std::span<const std::size_t> omega,
                          const Tolerances& tol = {});

/// Independent brute force for norm retrieval: null bases from pivoted QR,
/// every subset visited without pruning, and every basis pair (u, v) turned
/// into f = (v + u)/2, g = (v - u)/2 whose magnitudes agree on all atoms.
/// Fails iff some pair has | ||f|| - ||g|| | > orthogonality tolerance.
Certificate norm_retrieval_oracle(const Frame& frame, const Tolerances& tol = {});

/// Lexicographically first set X1 of n - d atoms whose removal leaves a
/// basis of H, or nothing when no d vectors are independent.
std::optional<AtomSet> near_riesz_detect(const Frame& frame, const Tolerances& tol = {});

/// Checks that the pair has equal magnitudes on every atom (relative to the
/// larger magnitude scale) and is not related by a unimodular factor.
bool pair_defeats_phase_retrieval(const Frame& frame, const VectorPair& pair, double tol);

}  // namespace framelab
