#include "cohlab/states.hpp"

#include "cohlab/error.hpp"
#include "cohlab/random.hpp"

#include <cmath>
#include <string>

namespace cohlab {

DensityMatrix::DensityMatrix(ComplexMatrix m) : matrix_(std::move(m)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0) {
    throw Error(ErrorCode::kInvalidState, "density matrix must be nonempty and square");
  }
  if (!all_finite(matrix_)) throw Error(ErrorCode::kInvalidState, "non-finite entry");
  const double herr = hermiticity_error(matrix_);
  if (herr > kHermitianTol) {
    throw Error(ErrorCode::kNotHermitian, "density matrix hermiticity error " + std::to_string(herr));
  }
  const double trace = matrix_.trace().real();
  if (std::abs(trace - 1.0) > 1e-10) {
    throw Error(ErrorCode::kInvalidState, "trace " + std::to_string(trace) + " differs from 1");
  }
  spectrum_ = hermitian_eig(matrix_);
  for (Eigen::Index i = 0; i < spectrum_.eigenvalues.size(); ++i) {
    double& v = spectrum_.eigenvalues(i);
    if (v < -kEigenClampTol) {
      throw Error(ErrorCode::kInvalidState, "negative eigenvalue " + std::to_string(v));
    }
    if (v < 0.0) v = 0.0;
  }
}

PureState::PureState(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0) throw Error(ErrorCode::kInvalidState, "empty state vector");
  if (!all_finite(amplitudes_)) throw Error(ErrorCode::kInvalidState, "non-finite amplitude");
  const double norm = amplitudes_.norm();
  if (std::abs(norm - 1.0) > 1e-10) {
    throw Error(ErrorCode::kInvalidState, "state vector norm " + std::to_string(norm));
  }
}

DensityMatrix PureState::projector() const {
  return make_state(amplitudes_ * amplitudes_.adjoint());
}

DensityMatrix make_state(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::kInvalidState, "state matrix must be square");
  return DensityMatrix(0.5 * (m + m.adjoint()));
}

ComplexVector purify(const DensityMatrix& rho) {
  const auto d = static_cast<Eigen::Index>(rho.dim());
  check_dimension(rho.dim() * rho.dim(), "purify");
  const Spectrum& s = rho.spectrum();
  ComplexVector psi = ComplexVector::Zero(d * d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const double w = std::sqrt(s.eigenvalues(i));
    if (w == 0.0) continue;
    for (Eigen::Index a = 0; a < d; ++a) psi(a * d + i) = w * s.eigenvectors(a, i);
  }
  return psi;
}

PureState maximally_coherent(std::size_t d) {
  if (d < 1) throw Error(ErrorCode::kParamOutOfRange, "maximally_coherent: d must be >= 1");
  const auto n = static_cast<Eigen::Index>(d);
  return PureState(ComplexVector::Constant(n, Complex(1.0 / std::sqrt(static_cast<double>(d)), 0.0)));
}

DensityMatrix max_coherent_mixed(std::size_t d, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::kParamOutOfRange, "max_coherent_mixed: p must lie in [0, 1]");
  }
  if (d < 1) throw Error(ErrorCode::kParamOutOfRange, "max_coherent_mixed: d must be >= 1");
  const auto n = static_cast<Eigen::Index>(d);
  const ComplexMatrix psi = maximally_coherent(d).projector().matrix();
  return make_state((1.0 - p) / static_cast<double>(d) * ComplexMatrix::Identity(n, n) + p * psi);
}

DensityMatrix maximally_mixed(std::size_t d) {
  if (d < 1) throw Error(ErrorCode::kParamOutOfRange, "maximally_mixed: d must be >= 1");
  const auto n = static_cast<Eigen::Index>(d);
  return DensityMatrix(ComplexMatrix::Identity(n, n) / static_cast<double>(d));
}

DensityMatrix diagonal_state(std::span<const double> probs) {
  const auto n = static_cast<Eigen::Index>(probs.size());
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = probs[static_cast<std::size_t>(i)];
  return DensityMatrix(std::move(m));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return make_state(tensor(a.matrix(), b.matrix()));
}

DensityMatrix tensor_power(const DensityMatrix& rho, std::size_t n) {
  return make_state(tensor_power(rho.matrix(), n));
}

DensityMatrix partial_trace(const DensityMatrix& rho_ab, BipartiteDims dims, Keep keep) {
  return make_state(partial_trace(rho_ab.matrix(), dims, keep));
}

double von_neumann_entropy(const DensityMatrix& rho) {
  const RealVector& ev = rho.spectrum().eigenvalues;
  return shannon_entropy_bits(std::span<const double>(ev.data(), static_cast<std::size_t>(ev.size())));
}

namespace {

struct MarginalEntropies {
  double a;
  double b;
  double ab;
};

MarginalEntropies marginal_entropies(const DensityMatrix& rho_ab, BipartiteDims dims) {
  if (dims.first * dims.second != rho_ab.dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "bipartite dims " + std::to_string(dims.first) + "x" + std::to_string(dims.second) +
                    " do not match state dimension " + std::to_string(rho_ab.dim()));
  }
  return {von_neumann_entropy(partial_trace(rho_ab, dims, Keep::kFirst)),
          von_neumann_entropy(partial_trace(rho_ab, dims, Keep::kSecond)),
          von_neumann_entropy(rho_ab)};
}

}  // namespace

double mutual_information(const DensityMatrix& rho_ab, BipartiteDims dims) {
  const MarginalEntropies h = marginal_entropies(rho_ab, dims);
  return h.a + h.b - h.ab;
}

ArakiLieb araki_lieb_check(const DensityMatrix& rho_ab, BipartiteDims dims) {
  const MarginalEntropies h = marginal_entropies(rho_ab, dims);
  ArakiLieb out;
  out.lhs = std::abs(h.a - h.b);
  out.rhs = h.ab;
  out.holds = out.rhs >= out.lhs - 1e-9;
  return out;
}

DensityMatrix random_state(std::size_t d, std::size_t rank, std::uint64_t seed) {
  if (d < 1 || rank < 1 || rank > d) {
    throw Error(ErrorCode::kParamOutOfRange,
                "random_state: need 1 <= rank <= d, got d=" + std::to_string(d) +
                    " rank=" + std::to_string(rank));
  }
  Rng rng(seed);
  const ComplexMatrix g = complex_gaussian(d, rank, rng);
  const ComplexMatrix w = g * g.adjoint();
  return make_state(w / w.trace().real());
}

PureState random_pure_state(std::size_t d, std::uint64_t seed) {
  if (d < 1) throw Error(ErrorCode::kParamOutOfRange, "random_pure_state: d must be >= 1");
  Rng rng(seed);
  ComplexVector v = complex_gaussian(d, 1, rng).col(0);
  return PureState(v / v.norm());
}

}  // namespace cohlab
