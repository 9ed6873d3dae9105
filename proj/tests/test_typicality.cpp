#include "cohlab/error.hpp"
#include "cohlab/typicality.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace cohlab;

namespace {

const std::vector<double> kSkewed{0.9, 0.1};

DensityMatrix skewed_state() { return diagonal_state(kSkewed); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::kIoError;
}

}  // namespace

TEST(ClassicalDistribution, Validation) {
  EXPECT_NO_THROW(ClassicalDistribution({0.5, 0.5}));
  EXPECT_EQ(code_of([] { ClassicalDistribution({0.5, 0.6}); }), ErrorCode::kParamOutOfRange);
  EXPECT_EQ(code_of([] { ClassicalDistribution({1.2, -0.2}); }), ErrorCode::kParamOutOfRange);
  const ClassicalDistribution p = ClassicalDistribution::from_spectrum(skewed_state());
  EXPECT_DOUBLE_EQ(p.probs()[0], 0.9);
  EXPECT_NEAR(p.entropy(), oracle::shannon(kSkewed), 1e-15);
}

TEST(SampleEntropy, Examples) {
  const ClassicalDistribution u({0.25, 0.25, 0.25, 0.25});
  const std::vector<std::size_t> any{3, 1, 2, 2, 0};
  EXPECT_DOUBLE_EQ(sample_entropy(any, u), 2.0);

  const ClassicalDistribution p(kSkewed);
  const std::vector<std::size_t> zeros{0, 0, 0};
  EXPECT_NEAR(sample_entropy(zeros, p), 0.152003, 1e-6);
  const std::vector<std::size_t> one{0, 0, 1};
  EXPECT_NEAR(sample_entropy(one, p), 1.208645, 1e-6);

  const ClassicalDistribution z({1.0, 0.0});
  const std::vector<std::size_t> bad{0, 1};
  EXPECT_EQ(code_of([&] { sample_entropy(bad, z); }), ErrorCode::kZeroProbabilitySymbol);
}

TEST(DecodeSequence, BigEndian) {
  EXPECT_EQ(decode_sequence(5, 2, 3), (std::vector<std::size_t>{1, 0, 1}));
  EXPECT_EQ(decode_sequence(7, 3, 2), (std::vector<std::size_t>{2, 1}));
}

TEST(TypicalSet, Examples) {
  const TypicalSet all = typical_set(ClassicalDistribution({0.5, 0.5}), 5, 0.01);
  EXPECT_EQ(all.members.size(), 32u);
  EXPECT_NEAR(all.mass, 1.0, 1e-12);

  const TypicalSet one = typical_set(ClassicalDistribution(kSkewed), 3, 0.35);
  EXPECT_EQ(one.members, (std::vector<std::uint64_t>{0}));
  EXPECT_NEAR(one.mass, 0.729, 1e-12);

  const TypicalSet none = typical_set(ClassicalDistribution(kSkewed), 3, 0.3);
  EXPECT_TRUE(none.members.empty());
  EXPECT_EQ(none.mass, 0.0);
}

TEST(TypicalSet, MatchesBruteForce) {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const std::size_t d = 2 + seed % 3;
    const DensityMatrix rho = random_state(d, d, seed);
    const ClassicalDistribution p = ClassicalDistribution::from_spectrum(rho);
    const std::size_t n = d == 2 ? 10 : (d == 3 ? 6 : 5);
    const double delta = 0.1 + 0.05 * static_cast<double>(seed % 4);
    const TypicalSet set = typical_set(p, n, delta, 1 + seed % 4);
    const oracle::BruteTypical ref = oracle::brute_typical(p.probs(), n, delta);
    std::vector<std::uint64_t> want = ref.members;
    std::sort(want.begin(), want.end());
    EXPECT_EQ(set.members, want) << "seed " << seed;
    EXPECT_NEAR(set.mass, ref.mass, 1e-12);
  }
}

TEST(TypicalSet, ThreadCountInvariant) {
  const ClassicalDistribution p({0.7, 0.2, 0.1});
  const TypicalSet a = typical_set(p, 9, 0.2, 1);
  const TypicalSet b = typical_set(p, 9, 0.2, 4);
  EXPECT_EQ(a.members, b.members);
  EXPECT_EQ(a.mass, b.mass);
}

TEST(TypicalSet, ZeroSymbolsNeverTypical) {
  const TypicalSet s = typical_set(ClassicalDistribution({0.5, 0.5, 0.0}), 4, 0.5);
  EXPECT_EQ(s.members.size(), 16u);
  for (std::uint64_t m : s.members) {
    for (std::size_t x : decode_sequence(m, 3, 4)) EXPECT_NE(x, 2u);
  }
}

TEST(TypicalSubspace, Examples) {
  const TypicalSubspace pure = typical_subspace(maximally_coherent(2).projector(), 4, 0.2);
  EXPECT_EQ(pure.dim_typ(), 1u);
  ComplexVector v = ComplexVector::Constant(16, Complex(0.25, 0.0));
  EXPECT_LT((pure.projector() - v * v.adjoint()).cwiseAbs().maxCoeff(), 1e-12);

  const TypicalSubspace diag = typical_subspace(skewed_state(), 3, 0.35);
  ComplexMatrix p000 = ComplexMatrix::Zero(8, 8);
  p000(0, 0) = 1.0;
  EXPECT_LT((diag.projector() - p000).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_NEAR(diag.mass(), 0.729, 1e-12);
  EXPECT_NEAR((diag.projector() * tensor_power(skewed_state(), 3).matrix()).trace().real(), 0.729, 1e-12);
}

TEST(TypicalSubspace, MassMatchesProjectorTrace) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const DensityMatrix rho = random_state(2, 2, seed);
    const TypicalSubspace ts = typical_subspace(rho, 6, 0.2);
    const double direct = (ts.projector() * tensor_power(rho, 6).matrix()).trace().real();
    EXPECT_NEAR(ts.mass(), direct, 1e-10);
    if (ts.dim_typ() == 0) continue;
    const ComplexMatrix b = ts.basis();
    EXPECT_LT((b.adjoint() * b - ComplexMatrix::Identity(b.cols(), b.cols())).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(TypicalSubspace, TooLarge) {
  EXPECT_EQ(code_of([] { typical_subspace(maximally_mixed(2), 13, 0.1); }), ErrorCode::kTooLarge);
}

TEST(TypicalSubspace, AverageMassGrows) {
  std::vector<double> mean(4, 0.0);
  const std::vector<std::size_t> ladder{4, 6, 8, 10};
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const DensityMatrix rho = random_state(2, 2, seed);
    for (std::size_t i = 0; i < ladder.size(); ++i) mean[i] += typical_subspace(rho, ladder[i], 0.2).mass() / 50.0;
  }
  for (std::size_t i = 1; i < mean.size(); ++i) EXPECT_GE(mean[i], mean[i - 1]);
}

TEST(TypicalityProperties, Examples) {
  const TypicalityReport u = typicality_properties(typical_subspace(maximally_mixed(3), 4, 0.1), maximally_mixed(3));
  EXPECT_NEAR(u.mass, 1.0, 1e-12);
  EXPECT_TRUE(u.dim_bounds_ok);
  EXPECT_TRUE(u.sandwich_ok);

  const TypicalityReport s = typicality_properties(typical_subspace(skewed_state(), 8, 0.25), skewed_state());
  EXPECT_TRUE(s.dim_bounds_ok);
  EXPECT_TRUE(s.sandwich_ok);
  EXPECT_GT(s.mass, 0.0);
  const oracle::BruteTypical ref = oracle::brute_typical(kSkewed, 8, 0.25);
  EXPECT_NEAR(s.mass, ref.mass, 1e-12);
  EXPECT_EQ(s.dim_typ, ref.members.size());
}

TEST(TypicalityProperties, SandwichAgainstExplicitBlock) {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const DensityMatrix rho = random_state(2, 2, seed);
    const TypicalSubspace ts = typical_subspace(rho, 6, 0.2);
    if (ts.dim_typ() == 0) continue;
    const TypicalityReport r = typicality_properties(ts, rho);
    EXPECT_TRUE(r.sandwich_ok);
    EXPECT_TRUE(r.dim_bounds_ok);
    const ComplexMatrix b = ts.basis();
    const ComplexMatrix block = b.adjoint() * tensor_power(rho, 6).matrix() * b;
    const auto ev = oracle::eigenvalues(block);
    EXPECT_GE(ev.back(), r.sandwich_lower * (1.0 - 1e-10));
    EXPECT_LE(ev.front(), r.sandwich_upper * (1.0 + 1e-10));
    EXPECT_LE(r.eig_min, ev.back() + 1e-12);
    EXPECT_GE(r.eig_max, ev.front() - 1e-12);
  }
}

TEST(FannesAudenaert, Examples) {
  const DensityMatrix rho = random_state(3, 3, 1);
  const FannesAudenaert same = fannes_audenaert_check(rho, rho);
  EXPECT_NEAR(same.delta_h, 0.0, 1e-15);
  EXPECT_NEAR(same.trace_distance, 0.0, 1e-12);
  EXPECT_TRUE(same.holds);

  const FannesAudenaert eq = fannes_audenaert_check(maximally_coherent(2).projector(), maximally_mixed(2));
  EXPECT_NEAR(eq.delta_h, 1.0, 1e-9);
  EXPECT_NEAR(eq.trace_distance, 0.5, 1e-12);
  EXPECT_NEAR(eq.bound, 1.0, 1e-9);
  EXPECT_TRUE(eq.holds);

  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const std::size_t d = 2 + seed % 5;
    EXPECT_TRUE(fannes_audenaert_check(random_state(d, 1 + seed % d, seed), random_state(d, d, seed + 500)).holds);
  }
}

TEST(GentleOperator, Examples) {
  const DensityMatrix rho = random_state(3, 3, 2);
  const GentleOperator id = gentle_operator_check(ComplexMatrix::Identity(3, 3), rho);
  EXPECT_NEAR(id.eps, 0.0, 1e-12);
  EXPECT_NEAR(id.disturbance, 0.0, 1e-12);
  EXPECT_TRUE(id.holds);

  const TypicalSubspace ts = typical_subspace(skewed_state(), 3, 0.35);
  const GentleOperator g = gentle_operator_check(ts.projector(), tensor_power(skewed_state(), 3));
  EXPECT_NEAR(g.eps, 0.271, 1e-12);
  EXPECT_LE(g.disturbance, 2.0 * std::sqrt(0.271));
  EXPECT_TRUE(g.holds);

  EXPECT_EQ(code_of([&] { gentle_operator_check(2.0 * ComplexMatrix::Identity(3, 3), rho); }),
            ErrorCode::kNotAMeasurementOperator);
}
