#include "framelab/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "framelab/error.hpp"

namespace framelab {

namespace {

AtomSet checked_ids(const Frame& frame, std::span<const std::size_t> ids, const char* what) {
  AtomSet out(ids.begin(), ids.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.empty()) throw InvalidArgument(std::string(what) + " must name at least one atom");
  if (out.back() >= frame.size()) {
    throw InvalidArgument(std::string(what) + " names atom " + std::to_string(out.back()) +
                          " but the frame has " + std::to_string(frame.size()) + " atoms");
  }
  return out;
}

// First orthonormal basis vector of {f : <f, F(x)> = 0 for x in ids}, or an
// empty vector when the subfamily spans H.
Vector first_null_vector(const Frame& frame, std::span<const std::size_t> ids, double thr) {
  return frame.visit([&](const auto& m) -> Vector {
    using Scalar = typename std::decay_t<decltype(m)>::Scalar;
    const MatrixT<Scalar> basis = orthogonal_complement<Scalar>(select_columns(m, ids), frame.dim(), thr);
    if (basis.cols() == 0) return Vector();
    return basis.col(0).template cast<Complex>();
  });
}

double weighted_distance(const Frame& a, const Matrix& b) {
  return (a.weights().array() * (a.vectors() - b).colwise().squaredNorm().transpose().array()).sum();
}

}  // namespace

PerturbationResult break_phase_retrieval(const Frame& frame, std::span<const std::size_t> head,
                                         double epsilon, const Tolerances& tol) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw InvalidArgument("epsilon must be a positive number");
  }
  const AtomSet head_ids = checked_ids(frame, head, "head");
  const AtomSet tail_ids = complement_ids(head_ids, frame.size());

  const auto anchor = std::find_if(head_ids.begin(), head_ids.end(),
                                   [&](std::size_t i) { return frame.vector(i).norm() > 0.0; });
  if (anchor == head_ids.end()) throw PreconditionError("every head vector is zero");
  const Vector e1 = frame.vector(*anchor).normalized();

  const Vector e2 = first_null_vector(frame, head_ids, frame.rank_threshold(tol.rank));
  if (e2.size() == 0) {
    throw PreconditionError("head vectors span the whole space; no orthogonal direction exists");
  }

  const Eigen::VectorXd& w = frame.weights();
  double tail_energy = 0.0;
  for (std::size_t i : tail_ids) {
    tail_energy += w(static_cast<Eigen::Index>(i)) * std::norm(inner<Complex>(e1, frame.vector(i)));
  }
  if (tail_energy >= epsilon) {
    throw PreconditionError("tail energy " + std::to_string(tail_energy) +
                            " is not below epsilon " + std::to_string(epsilon));
  }

  // G(x) = F(x) - conj(<e1, F(x)>) e1 on the tail, F(x) on the head.
  Matrix g = frame.vectors();
  for (std::size_t i : tail_ids) {
    const auto col = static_cast<Eigen::Index>(i);
    const Complex coeff = std::conj(inner<Complex>(e1, frame.vector(i)));
    g.col(col) -= coeff * e1;
  }
  if (frame.is_real()) g = g.real().cast<Complex>();

  const FrameBounds original = frame_bounds(frame);
  PerturbationResult out{frame.with_vectors(g), e1 + 2.0 * e2, e1 - 2.0 * e2,
                         weighted_distance(frame, g), {}};
  out.new_bounds = frame_bounds(out.perturbed);

  if (epsilon < original.lower && !is_frame(out.new_bounds)) {
    throw Error("break_phase_retrieval: perturbed family lost the frame property");
  }
  if (!pair_defeats_phase_retrieval(out.perturbed, {out.witness_f, out.witness_g}, tol.check)) {
    throw Error("break_phase_retrieval: witness pair does not verify");
  }
  return out;
}

NormBreakResult break_norm_retrieval(const Frame& frame, std::span<const std::size_t> subset,
                                     double epsilon, const Tolerances& tol) {
  if (!frame.is_real()) throw PreconditionError("norm retrieval breaking needs a real frame");
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw InvalidArgument("epsilon must be a nonnegative number");
  }
  const AtomSet s_ids = checked_ids(frame, subset, "subset");
  const AtomSet c_ids = complement_ids(s_ids, frame.size());
  const FrameBounds bounds = frame_bounds(frame);
  if (!is_frame(bounds)) throw PreconditionError("input is not a frame");
  if (epsilon >= 2.0 * std::sqrt(bounds.lower)) {
    throw PreconditionError("epsilon must be below 2 sqrt(A) = " +
                            std::to_string(2.0 * std::sqrt(bounds.lower)));
  }

  const double thr = frame.rank_threshold(tol.rank);
  const Vector f = first_null_vector(frame, s_ids, thr);
  const Vector g = first_null_vector(frame, c_ids, thr);
  if (f.size() == 0 || g.size() == 0) {
    throw PreconditionError(
        "both the subset and its complement must leave a nontrivial orthogonal complement "
        "(the frame must fail phase retrieval on this subset)");
  }
  if (std::abs(inner<Complex>(f, g)) > tol.orthogonality) {
    throw PreconditionError("null spaces of the subset and its complement are not orthogonal; "
                            "the input is not norm retrieval");
  }

  const double sqrt_b = std::sqrt(bounds.upper);
  const Eigen::VectorXd& w = frame.weights();
  Matrix perturbed = frame.vectors();
  Matrix energy = Matrix::Zero(frame.dim(), frame.dim());
  double max_delta = 0.0;
  for (std::size_t i : s_ids) {
    const auto col = static_cast<Eigen::Index>(i);
    // delta(x) = <F(x), g> f / (2 sqrt(B) ||f|| ||g||)
    const Vector delta =
        inner<Complex>(frame.vector(i), g) * f / (2.0 * sqrt_b * f.norm() * g.norm());
    max_delta = std::max(max_delta, delta.norm());
    perturbed.col(col) -= epsilon * delta;
    energy += w(col) * epsilon * epsilon * delta * delta.adjoint();
  }
  perturbed = perturbed.real().cast<Complex>();

  NormBreakResult out{PerturbationResult{frame.with_vectors(perturbed), {}, {}, 0.0, {}},
                      f, g, {}, {}, 0.0, 0.0, max_delta, 0.0, std::nullopt, false};
  PerturbationResult& res = out.result;
  res.l2_distance = weighted_distance(frame, perturbed);
  res.new_bounds = frame_bounds(res.perturbed);

  out.w1 = 2.0 * sqrt_b * g.norm() * f / f.norm() + epsilon * g;
  out.w2 = g;
  out.w_inner = inner<Complex>(out.w1, out.w2).real();
  out.scaled_inner =
      inner<Complex>(Vector(out.w1 / (2.0 * sqrt_b * g.norm())), Vector(out.w2 / g.norm())).real();
  out.perturbation_energy =
      Eigen::SelfAdjointEigenSolver<Matrix>(energy, Eigen::EigenvaluesOnly).eigenvalues().maxCoeff();

  res.witness_f = out.w2 + out.w1;
  res.witness_g = out.w2 - out.w1;

  out.subset_violates = null_space_overlap(res.perturbed, s_ids, tol) > tol.orthogonality;
  if (res.perturbed.size() <= tol.enumeration_cap) {
    out.certificate = norm_retrieval_certify(res.perturbed, tol);
  }
  if (!is_frame(res.new_bounds)) {
    throw Error("break_norm_retrieval: perturbed family lost the frame property");
  }
  return out;
}

std::vector<SweepRow> stability_sweep(const Frame& frame, std::span<const double> lambdas,
                                      int trials, std::uint64_t seed, const Tolerances& tol) {
  if (!frame.is_real()) throw PreconditionError("stability sweep is defined for real frames");
  if (trials < 0) throw InvalidArgument("trials must be nonnegative");
  for (std::size_t k = 0; k < lambdas.size(); ++k) {
    if (!(lambdas[k] >= 0.0) || !std::isfinite(lambdas[k])) {
      throw InvalidArgument("lambdas must be nonnegative numbers");
    }
    if (k > 0 && lambdas[k] < lambdas[k - 1]) throw InvalidArgument("lambdas must be ascending");
  }
  if (phase_retrieval_certify(frame, tol).verdict != Verdict::holds) {
    throw PreconditionError("stability sweep needs a frame certified as phase retrieval");
  }

  const Eigen::Index d = frame.dim();
  const auto n = static_cast<Eigen::Index>(frame.size());
  std::vector<SweepRow> rows;
  for (std::size_t k = 0; k < lambdas.size(); ++k) {
    SweepRow row{lambdas[k], true, 0};
    for (int t = 0; t < trials; ++t) {
      std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                        static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(t)};
      std::mt19937_64 rng(seq);
      std::normal_distribution<double> normal(0.0, 1.0);
      std::uniform_real_distribution<double> uniform(0.0, 1.0);
      Eigen::MatrixXd shifted = frame.real_vectors();
      for (Eigen::Index i = 0; i < n; ++i) {
        Eigen::VectorXd dir(d);
        for (Eigen::Index j = 0; j < d; ++j) dir(j) = normal(rng);
        const double radius = lambdas[k] * std::pow(uniform(rng), 1.0 / static_cast<double>(d));
        if (dir.norm() > 0.0) shifted.col(i) += radius * dir.normalized();
      }
      const Frame trial(frame.space(), shifted);
      if (phase_retrieval_certify(trial, tol).verdict != Verdict::holds) {
        ++row.failures;
        row.all_preserved = false;
      }
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace framelab
