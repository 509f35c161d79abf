#include <gtest/gtest.h>

#include <cmath>

#include "framelab/error.hpp"
#include "framelab/generators.hpp"
#include "framelab/retrieval.hpp"
#include "support/corpus.hpp"
#include "support/helpers.hpp"
#include "support/oracles.hpp"

namespace framelab {
namespace {

using testing::subset_rank;
using testing::random_vector;
using testing::real_corpus;
using testing::real_frame;
using testing::vec;

bool violates(const Frame& frame, const AtomSet& s) {
  AtomSet c;
  for (std::size_t i = 0; i < frame.size(); ++i) {
    if (std::find(s.begin(), s.end(), i) == s.end()) c.push_back(i);
  }
  const int d = static_cast<int>(frame.dim());
  return subset_rank(frame, s) < d && subset_rank(frame, c) < d;
}

TEST(ComplementProperty, OnbFailsOnFirstAtom) {
  for (int d = 2; d <= 5; ++d) {
    const Certificate c = complement_property(gen_onb(d));
    EXPECT_EQ(c.verdict, Verdict::fails);
    ASSERT_TRUE(c.witness_subset);
    EXPECT_EQ(*c.witness_subset, AtomSet{0});
  }
}

TEST(ComplementProperty, MercedesHolds) {
  const Certificate c = complement_property(gen_mercedes());
  EXPECT_EQ(c.verdict, Verdict::holds);
  EXPECT_FALSE(c.witness_subset);
}

TEST(ComplementProperty, RepeatedVectorWitness) {
  const Frame f = real_frame({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 0, 0}});
  const Certificate c = complement_property(f);
  EXPECT_EQ(c.verdict, Verdict::fails);
  ASSERT_TRUE(c.witness_subset);
  EXPECT_EQ(*c.witness_subset, (AtomSet{0, 1}));
  EXPECT_EQ(c.witness_subset, testing::brute_force_complement_witness(f));
  // the pair of copies on one side is a violating subset too
  EXPECT_TRUE(violates(f, AtomSet{0, 3}));
}

TEST(ComplementProperty, OneDimension) {
  EXPECT_EQ(complement_property(real_frame({{2}, {-1}})).verdict, Verdict::holds);
  // a single nonzero vector spans R^1
  EXPECT_EQ(complement_property(real_frame({{2}})).verdict, Verdict::holds);
  EXPECT_EQ(complement_property(real_frame({{2}, {0}})).verdict, Verdict::holds);
  EXPECT_EQ(complement_property(real_frame({{0}, {0}})).verdict, Verdict::fails);
}

TEST(ComplementProperty, CapExceeded) {
  EXPECT_THROW(complement_property(gen_random(2, 25, 1)), CapExceeded);
  Tolerances tight;
  tight.enumeration_cap = 4;
  EXPECT_THROW(complement_property(gen_random(2, 5, 1), tight), CapExceeded);
  EXPECT_NO_THROW(complement_property(gen_random(2, 4, 1), tight));
}

TEST(ComplementProperty, PrunedSearchMatchesBruteForce) {
  int failing = 0;
  for (const Frame& frame : real_corpus(17, 150, 10, 4)) {
    const Certificate c = complement_property(frame);
    const auto oracle = testing::brute_force_complement_witness(frame);
    EXPECT_EQ(c.verdict == Verdict::fails, oracle.has_value());
    EXPECT_EQ(c.witness_subset, oracle);
    if (oracle) ++failing;
  }
  EXPECT_GT(failing, 20);
  EXPECT_LT(failing, 140);
}

TEST(ComplementProperty, AddingVectorsPreservesHolding) {
  for (const Frame& frame : real_corpus(23, 60, 8, 3)) {
    if (complement_property(frame).verdict != Verdict::holds) continue;
    Eigen::MatrixXd more(frame.dim(), frame.size() + 1);
    more << frame.real_vectors(), random_vector(frame.dim(), Field::real, 4).real();
    const Frame bigger(MeasureSpace(std::vector<double>(frame.size() + 1, 1.0)), more);
    EXPECT_EQ(complement_property(bigger).verdict, Verdict::holds);
  }
}

TEST(PhaseRetrieval, RealMatchesSignPatternOracle) {
  for (const Frame& frame : real_corpus(5, 120, 9, 3)) {
    const Certificate c = phase_retrieval_certify(frame);
    EXPECT_EQ(c.verdict == Verdict::holds, testing::sign_pattern_pr(frame));
    EXPECT_EQ(c.field, Field::real);
    if (c.verdict == Verdict::fails) {
      ASSERT_TRUE(c.witness_pair);
      EXPECT_TRUE(pair_defeats_phase_retrieval(frame, *c.witness_pair, 1e-9));
    }
  }
}

TEST(PhaseRetrieval, OnbWitnessPair) {
  const Certificate c = phase_retrieval_certify(gen_onb(2));
  EXPECT_EQ(c.verdict, Verdict::fails);
  ASSERT_TRUE(c.witness_pair);
  const Vector& f = c.witness_pair->f;
  const Vector& g = c.witness_pair->g;
  // (e1 + e2, e1 - e2) up to signs and swaps
  for (Eigen::Index i = 0; i < 2; ++i) {
    EXPECT_NEAR(std::abs(f(i)), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(g(i)), 1.0, 1e-12);
  }
  EXPECT_GT(phase_distance(f, g, Field::real), 1.0);
}

TEST(PhaseRetrieval, IncompleteFrameWitness) {
  const Frame f = real_frame({{1, 0}, {2, 0}});
  const Certificate c = phase_retrieval_certify(f);
  EXPECT_EQ(c.verdict, Verdict::fails);
  ASSERT_TRUE(c.witness_pair);
  EXPECT_TRUE(pair_defeats_phase_retrieval(f, *c.witness_pair, 1e-9));
}

TEST(PhaseRetrieval, ComplexFrames) {
  const Frame conb = gen_onb(2).with_vectors(Complex(0, 1) * Matrix::Identity(2, 2));
  const Certificate onb = phase_retrieval_certify(conb);
  EXPECT_EQ(onb.field, Field::complex);
  EXPECT_EQ(onb.verdict, Verdict::fails);
  ASSERT_TRUE(onb.witness_pair);
  EXPECT_TRUE(pair_defeats_phase_retrieval(conb, *onb.witness_pair, 1e-9));

  const Certificate generic = phase_retrieval_certify(gen_random(2, 4, 3, Field::complex));
  EXPECT_EQ(generic.verdict, Verdict::inconclusive);
  ASSERT_TRUE(generic.alpha_estimate);
  EXPECT_GT(*generic.alpha_estimate, 0.0);
}

TEST(PhaseRetrieval, PairCheckerRejectsPhaseMultiples) {
  const Frame merc = gen_mercedes();
  EXPECT_FALSE(pair_defeats_phase_retrieval(merc, {vec({1, 2}), vec({-1, -2})}, 1e-9));
  EXPECT_FALSE(pair_defeats_phase_retrieval(merc, {vec({1, 2}), vec({1, 3})}, 1e-9));
}

TEST(ROperator, Examples) {
  const Frame onb = gen_onb(2);
  EXPECT_EQ(r_operator(onb, vec({0, 0})).matrix, Matrix::Zero(2, 2));
  const Matrix r = r_operator(onb, vec({1, 0})).matrix;
  EXPECT_NEAR((r - vec({1, 0}).asDiagonal().toDenseMatrix()).norm(), 0.0, 1e-15);

  const Frame merc = gen_mercedes();
  const Vector f = vec({1, 0});
  Matrix expected = Matrix::Zero(2, 2);
  for (std::size_t i = 0; i < 3; ++i) {
    const Vector v = merc.vector(i);
    expected += std::norm(v.dot(f)) * v * v.adjoint();
  }
  EXPECT_NEAR((r_operator(merc, f).matrix - expected).norm(), 0.0, 1e-15);
}

TEST(ROperator, QuadraticFormIsBiquadratic) {
  for (Field field : {Field::real, Field::complex}) {
    std::uint64_t seed = 3;
    for (const Frame& frame : testing::random_frames(44, 15, 8, 4, field)) {
      const Vector f = random_vector(frame.dim(), field, seed++);
      const Vector g = random_vector(frame.dim(), field, seed++);
      const Matrix r = r_operator(frame, f).matrix;
      double direct = 0.0;
      for (std::size_t i = 0; i < frame.size(); ++i) {
        const Vector v = frame.vector(i);
        direct += frame.weights()(static_cast<Eigen::Index>(i)) * std::norm(v.dot(f)) * std::norm(v.dot(g));
      }
      EXPECT_NEAR(g.dot(r * g).real(), direct, 1e-9 * (1 + direct));
      EXPECT_NEAR(biquadratic(frame, f, g), direct, 1e-9 * (1 + direct));
      EXPECT_NEAR(biquadratic(frame, f, g), biquadratic(frame, g, f), 1e-9 * (1 + direct));
    }
  }
}

TEST(Alpha, Onb) {
  const AlphaResult a = alpha_certify(gen_onb(3));
  EXPECT_LT(a.alpha, 1e-10);
  EXPECT_NEAR(a.argmin_f.norm(), 1.0, 1e-12);
  EXPECT_NEAR(a.argmin_g.norm(), 1.0, 1e-12);
}

TEST(Alpha, MercedesMatchesGrid) {
  const AlphaResult a = alpha_certify(gen_mercedes());
  const double grid = testing::alpha_angle_grid(gen_mercedes(), 720);
  EXPECT_NEAR(a.alpha, grid, 1e-4);
  EXPECT_NEAR(a.alpha, 0.375, 1e-9);
}

TEST(Alpha, UpperBoundsRandomPairsAndTracesDecrease) {
  for (Field field : {Field::real, Field::complex}) {
    std::uint64_t seed = 600;
    for (const Frame& frame : testing::random_frames(61, 12, 8, 3, field)) {
      const AlphaResult a = alpha_certify(frame);
      EXPECT_NEAR(biquadratic(frame, a.argmin_f, a.argmin_g), a.alpha, 1e-9 * (1 + a.alpha));
      for (int t = 0; t < 50; ++t) {
        const Vector f = random_vector(frame.dim(), field, seed++).normalized();
        const Vector g = random_vector(frame.dim(), field, seed++).normalized();
        EXPECT_LE(a.alpha, biquadratic(frame, f, g) + 1e-12);
      }
      ASSERT_FALSE(a.traces.empty());
      for (const auto& trace : a.traces) {
        for (std::size_t k = 1; k < trace.size(); ++k) {
          EXPECT_LE(trace[k], trace[k - 1] + 1e-12 * (1 + trace[k - 1]));
        }
      }
    }
  }
}

TEST(Alpha, SeparatesRealVerdicts) {
  for (const Frame& frame : real_corpus(8, 60, 7, 3)) {
    const bool pr = phase_retrieval_certify(frame).verdict == Verdict::holds;
    const AlphaResult a = alpha_certify(frame);
    const double scale = std::pow(frame_bounds(frame).upper, 2);
    if (pr) {
      EXPECT_GT(a.alpha, 1e-9 * scale);
    } else {
      EXPECT_LT(a.alpha, 1e-9 * scale);
    }
  }
}

TEST(Alpha, DeterministicForSeed) {
  const Frame f = gen_random(3, 6, 2, Field::complex);
  AlphaOptions o;
  o.seed = 9;
  EXPECT_EQ(alpha_certify(f, o).alpha, alpha_certify(f, o).alpha);
}

TEST(NormRetrieval, Examples) {
  EXPECT_EQ(norm_retrieval_certify(gen_onb(3)).verdict, Verdict::holds);
  EXPECT_EQ(norm_retrieval_certify(gen_mercedes()).verdict, Verdict::holds);

  const Frame skew = real_frame({{1, 0}, {1, 1}});
  const Certificate c = norm_retrieval_certify(skew);
  EXPECT_EQ(c.verdict, Verdict::fails);
  ASSERT_TRUE(c.witness_subset);
  EXPECT_EQ(*c.witness_subset, AtomSet{0});
  // null({e1}) = span e2, null({e1 + e2}) = span (e1 - e2)
  ASSERT_TRUE(c.violation);
  EXPECT_NEAR(*c.violation, 1.0 / std::sqrt(2.0), 1e-12);
  ASSERT_TRUE(c.witness_pair);
  const Vector& f = c.witness_pair->f;
  const Vector& g = c.witness_pair->g;
  EXPECT_LT((magnitudes(skew, f).values - magnitudes(skew, g).values).norm(), 1e-12);
  EXPECT_GT(std::abs(f.norm() - g.norm()), 1e-3);
  EXPECT_EQ(norm_retrieval_oracle(skew).verdict, Verdict::fails);
}

TEST(NormRetrieval, NullSpaceOverlap) {
  const Frame skew = real_frame({{1, 0}, {1, 1}});
  EXPECT_NEAR(null_space_overlap(skew, AtomSet{0}), 1.0 / std::sqrt(2.0), 1e-12);
  EXPECT_EQ(null_space_overlap(gen_onb(2), AtomSet{0}), 0.0);
  EXPECT_EQ(null_space_overlap(gen_mercedes(), AtomSet{0, 1}), 0.0);
}

TEST(NormRetrieval, ComplexRejected) {
  EXPECT_THROW(norm_retrieval_certify(gen_random(2, 3, 1, Field::complex)), PreconditionError);
}

TEST(NormRetrieval, AgreesWithOracleAndIsImpliedByPr) {
  int nr_only = 0;
  int failing = 0;
  for (const Frame& frame : real_corpus(29, 150, 10, 4)) {
    const Certificate nr = norm_retrieval_certify(frame);
    const Certificate oracle = norm_retrieval_oracle(frame);
    EXPECT_EQ(nr.verdict, oracle.verdict);
    const bool pr = phase_retrieval_certify(frame).verdict == Verdict::holds;
    if (pr) {
      EXPECT_EQ(nr.verdict, Verdict::holds);
    }
    if (!pr && nr.verdict == Verdict::holds) ++nr_only;
    if (nr.verdict == Verdict::fails) {
      ++failing;
      ASSERT_TRUE(nr.witness_pair);
      const Vector& f = nr.witness_pair->f;
      const Vector& g = nr.witness_pair->g;
      EXPECT_LT((magnitudes(frame, f).values - magnitudes(frame, g).values).norm(), 1e-9);
      EXPECT_GT(std::abs(f.norm() - g.norm()), 1e-9);
    }
  }
  EXPECT_GT(nr_only, 0);
  EXPECT_GT(failing, 0);
}

TEST(NearRiesz, Examples) {
  ASSERT_TRUE(near_riesz_detect(gen_onb(3)));
  EXPECT_TRUE(near_riesz_detect(gen_onb(3))->empty());
  ASSERT_TRUE(near_riesz_detect(gen_mercedes()));
  EXPECT_EQ(*near_riesz_detect(gen_mercedes()), AtomSet{0});
  EXPECT_FALSE(near_riesz_detect(real_frame({{1, 0}, {1, 0}, {-1, 0}})));
  // the first two vectors are parallel, so removing atom 0 is the first fit
  EXPECT_EQ(*near_riesz_detect(real_frame({{1, 0}, {2, 0}, {0, 1}})), AtomSet{0});
  EXPECT_EQ(*near_riesz_detect(real_frame({{1, 0}, {0, 1}, {2, 0}})), AtomSet{0});
  EXPECT_EQ(*near_riesz_detect(real_frame({{0, 0}, {1, 0}, {0, 1}})), AtomSet{0});
}

TEST(NearRiesz, RemainderIsBasisAndInvariantUnderInvertibleMaps) {
  Eigen::MatrixXd u(3, 3);
  u << 2, 1, 0, 0, 1, 1, 1, 0, 3;
  for (const Frame& frame : real_corpus(33, 60, 7, 3)) {
    const auto x1 = near_riesz_detect(frame);
    EXPECT_EQ(x1.has_value(), is_mu_complete(frame));
    if (!x1) continue;
    EXPECT_EQ(x1->size(), frame.size() - static_cast<std::size_t>(frame.dim()));
    AtomSet rest;
    for (std::size_t i = 0; i < frame.size(); ++i) {
      if (std::find(x1->begin(), x1->end(), i) == x1->end()) rest.push_back(i);
    }
    EXPECT_EQ(subset_rank(frame, rest), frame.dim());
    if (frame.dim() == 3) {
      EXPECT_EQ(near_riesz_detect(apply_operator(frame, u.cast<Complex>())), x1);
    }
  }
}

}  // namespace
}  // namespace framelab
