#include "cohlab/error.hpp"
#include "cohlab/numkernel.hpp"
#include "cohlab/random.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace cohlab;

namespace {

ComplexMatrix random_hermitian(std::size_t d, std::uint64_t seed) {
  Rng rng(seed);
  const ComplexMatrix g = complex_gaussian(d, d, rng);
  return 0.5 * (g + g.adjoint());
}

ComplexMatrix psi2_projector() { return ComplexMatrix::Constant(2, 2, Complex(0.5, 0.0)); }

class CapGuard {
 public:
  CapGuard() : saved_(dimension_cap()) {}
  ~CapGuard() { set_dimension_cap(saved_); }

 private:
  std::size_t saved_;
};

}  // namespace

TEST(HermitianEig, IdentityAndDiagonal) {
  const Spectrum s = hermitian_eig(ComplexMatrix::Identity(2, 2));
  EXPECT_DOUBLE_EQ(s.eigenvalues(0), 1.0);
  EXPECT_DOUBLE_EQ(s.eigenvalues(1), 1.0);

  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 0.25;
  d(1, 1) = 0.75;
  const Spectrum t = hermitian_eig(d);
  EXPECT_NEAR(t.eigenvalues(0), 0.75, 1e-15);
  EXPECT_NEAR(t.eigenvalues(1), 0.25, 1e-15);
}

TEST(HermitianEig, Psi2Projector) {
  const Spectrum s = hermitian_eig(psi2_projector());
  EXPECT_NEAR(s.eigenvalues(0), 1.0, 1e-14);
  EXPECT_NEAR(s.eigenvalues(1), 0.0, 1e-14);
  // Top eigenvector is (1, 1)/sqrt 2 with the positive phase convention.
  EXPECT_NEAR(s.eigenvectors(0, 0).real(), 1.0 / std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(s.eigenvectors(1, 0).real(), 1.0 / std::sqrt(2.0), 1e-14);
}

TEST(HermitianEig, ReconstructionAndOrthonormality) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const std::size_t d = 2 + seed % 7;
    const ComplexMatrix m = random_hermitian(d, seed);
    const Spectrum s = hermitian_eig(m);
    const ComplexMatrix& v = s.eigenvectors;
    const ComplexMatrix back = v * s.eigenvalues.cast<Complex>().asDiagonal() * v.adjoint();
    EXPECT_LT((back - m).cwiseAbs().maxCoeff(), 1e-8) << "seed " << seed;
    EXPECT_LT((v.adjoint() * v - ComplexMatrix::Identity(v.cols(), v.cols())).cwiseAbs().maxCoeff(), 1e-9);
    for (Eigen::Index i = 1; i < s.eigenvalues.size(); ++i) EXPECT_GE(s.eigenvalues(i - 1), s.eigenvalues(i));
    const auto ref = oracle::eigenvalues(m);
    for (std::size_t i = 0; i < d; ++i) EXPECT_NEAR(s.eigenvalues(static_cast<Eigen::Index>(i)), ref[i], 1e-9);
  }
}

TEST(HermitianEig, DeterministicPhases) {
  const ComplexMatrix m = random_hermitian(5, 42);
  const Spectrum a = hermitian_eig(m);
  const Spectrum b = hermitian_eig(m);
  EXPECT_EQ(a.eigenvectors, b.eigenvectors);
}

TEST(HermitianEig, Rejections) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  try {
    hermitian_eig(m);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotHermitian);
  }
  ComplexMatrix nan = ComplexMatrix::Identity(2, 2);
  nan(0, 0) = std::numeric_limits<double>::quiet_NaN();
  try {
    hermitian_eig(nan);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNumericalFailure);
  }
}

TEST(Tensor, Examples) {
  EXPECT_EQ(tensor(ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(2, 2)), ComplexMatrix::Identity(4, 4));
  ComplexMatrix p0 = ComplexMatrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  ComplexMatrix p1 = ComplexMatrix::Zero(2, 2);
  p1(1, 1) = 1.0;
  ComplexMatrix want = ComplexMatrix::Zero(4, 4);
  want(1, 1) = 1.0;
  EXPECT_EQ(tensor(p0, p1), want);

  const auto ev = oracle::eigenvalues(tensor(psi2_projector(), psi2_projector()));
  EXPECT_NEAR(ev[0], 1.0, 1e-12);
  for (std::size_t i = 1; i < 4; ++i) EXPECT_NEAR(ev[i], 0.0, 1e-12);
}

TEST(Tensor, MatchesLoopOracle) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    const ComplexMatrix a = complex_gaussian(2 + seed % 3, 1 + seed % 4, rng);
    const ComplexMatrix b = complex_gaussian(1 + seed % 2, 3, rng);
    EXPECT_LT((tensor(a, b) - oracle::kron(a, b)).cwiseAbs().maxCoeff(), 1e-14);
  }
  const ComplexMatrix a = random_hermitian(2, 3);
  EXPECT_LT((tensor_power(a, 3) - oracle::kron(oracle::kron(a, a), a)).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(Tensor, DimensionCap) {
  CapGuard guard;
  set_dimension_cap(8);
  EXPECT_NO_THROW(tensor_power(ComplexMatrix::Identity(2, 2), 3));
  try {
    tensor_power(ComplexMatrix::Identity(2, 2), 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionOverflow);
  }
}

TEST(PartialTrace, ProductAndEntangled) {
  const ComplexMatrix rho = random_hermitian(3, 1);
  const ComplexMatrix sigma = random_hermitian(2, 2);
  const ComplexMatrix prod = tensor(rho, sigma);
  EXPECT_LT((partial_trace(prod, {3, 2}, Keep::kFirst) - rho * sigma.trace()).cwiseAbs().maxCoeff(), 1e-13);
  EXPECT_LT((partial_trace(prod, {3, 2}, Keep::kSecond) - sigma * rho.trace()).cwiseAbs().maxCoeff(), 1e-13);

  ComplexVector phi = ComplexVector::Zero(4);
  phi(0) = phi(3) = 1.0 / std::sqrt(2.0);
  const ComplexMatrix bell = phi * phi.adjoint();
  const ComplexMatrix half = 0.5 * ComplexMatrix::Identity(2, 2);
  EXPECT_LT((partial_trace(bell, {2, 2}, Keep::kFirst) - half).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((partial_trace(bell, {2, 2}, Keep::kSecond) - half).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(PartialTrace, MatchesLoopOracle) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t da = 1 + seed % 4;
    const std::size_t db = 1 + (seed / 4) % 3;
    const ComplexMatrix m = random_hermitian(da * db, seed);
    const auto a = static_cast<Eigen::Index>(da);
    const auto b = static_cast<Eigen::Index>(db);
    EXPECT_LT((partial_trace(m, {da, db}, Keep::kFirst) - oracle::trace_second(m, a, b)).cwiseAbs().maxCoeff(), 1e-13);
    EXPECT_LT((partial_trace(m, {da, db}, Keep::kSecond) - oracle::trace_first(m, a, b)).cwiseAbs().maxCoeff(), 1e-13);
  }
  try {
    partial_trace(ComplexMatrix::Identity(5, 5), {2, 2}, Keep::kFirst);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }
}

TEST(TraceNorm, Examples) {
  EXPECT_EQ(trace_norm(ComplexMatrix::Zero(3, 3)), 0.0);
  ComplexMatrix z = ComplexMatrix::Zero(2, 2);
  z(0, 0) = 1.0;
  z(1, 1) = -1.0;
  EXPECT_NEAR(trace_norm(z), 2.0, 1e-15);
  EXPECT_NEAR(trace_norm(psi2_projector() - 0.5 * ComplexMatrix::Identity(2, 2)), 1.0, 1e-14);
}

TEST(TraceNorm, HermitianAndGeneralAgree) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const ComplexMatrix m = random_hermitian(2 + seed % 5, seed);
    EXPECT_NEAR(trace_norm(m), oracle::trace_norm(m), 1e-10);
    Rng rng(seed);
    const ComplexMatrix g = complex_gaussian(3, 3, rng);
    Eigen::JacobiSVD<ComplexMatrix> svd(g);
    EXPECT_NEAR(trace_norm(g), svd.singularValues().sum(), 1e-10);
  }
}

TEST(PsdSqrt, SquaresBack) {
  Rng rng(5);
  const ComplexMatrix g = complex_gaussian(4, 4, rng);
  const ComplexMatrix psd = g * g.adjoint();
  const ComplexMatrix r = psd_sqrt(psd);
  EXPECT_LT((r * r - psd).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Shannon, Values) {
  const std::vector<double> p{0.75, 0.25};
  EXPECT_NEAR(shannon_entropy_bits(p), 0.811278, 1e-6);
  const std::vector<double> u{0.25, 0.25, 0.25, 0.25};
  EXPECT_NEAR(shannon_entropy_bits(u), 2.0, 1e-15);
  const std::vector<double> z{1.0, 0.0};
  EXPECT_EQ(shannon_entropy_bits(z), 0.0);
}

TEST(Random, DeriveSeedIsStableAndSpreads) {
  EXPECT_EQ(derive_seed(7, {1, 2}), derive_seed(7, {1, 2}));
  EXPECT_NE(derive_seed(7, {1, 2}), derive_seed(7, {2, 1}));
  EXPECT_NE(derive_seed(7, {1}), derive_seed(8, {1}));
}
