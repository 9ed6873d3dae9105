#include "cohlab/channels.hpp"

#include "cohlab/error.hpp"
#include "cohlab/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace cohlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_phase(double phi) {
  double w = std::fmod(phi, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (w >= kTwoPi) w -= kTwoPi;
  return w;
}

}  // namespace

IncoherentUnitary::IncoherentUnitary(std::vector<std::size_t> permutation, std::vector<double> phases)
    : permutation_(std::move(permutation)), phases_(std::move(phases)) {
  const std::size_t d = permutation_.size();
  if (d == 0 || phases_.size() != d) {
    throw Error(ErrorCode::kParamOutOfRange, "incoherent unitary: permutation and phases must have equal nonzero length");
  }
  std::vector<bool> seen(d, false);
  for (std::size_t target : permutation_) {
    if (target >= d || seen[target]) {
      throw Error(ErrorCode::kParamOutOfRange, "incoherent unitary: permutation is not a bijection");
    }
    seen[target] = true;
  }
  for (double& phi : phases_) {
    if (!std::isfinite(phi)) throw Error(ErrorCode::kParamOutOfRange, "incoherent unitary: non-finite phase");
    phi = wrap_phase(phi);
  }
}

IncoherentUnitary IncoherentUnitary::identity(std::size_t d) {
  std::vector<std::size_t> perm(d);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  return IncoherentUnitary(std::move(perm), std::vector<double>(d, 0.0));
}

ComplexMatrix IncoherentUnitary::to_matrix() const {
  const auto d = static_cast<Eigen::Index>(dim());
  ComplexMatrix u = ComplexMatrix::Zero(d, d);
  for (std::size_t j = 0; j < dim(); ++j) {
    const std::size_t row = permutation_[j];
    u(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(j)) = std::polar(1.0, phases_[row]);
  }
  return u;
}

IncoherentUnitary IncoherentUnitary::compose(const IncoherentUnitary& rhs) const {
  if (rhs.dim() != dim()) throw Error(ErrorCode::kDimensionMismatch, "compose: dimension mismatch");
  const std::size_t d = dim();
  std::vector<std::size_t> inv(d);
  for (std::size_t j = 0; j < d; ++j) inv[permutation_[j]] = j;

  std::vector<std::size_t> perm(d);
  std::vector<double> phases(d);
  for (std::size_t j = 0; j < d; ++j) perm[j] = permutation_[rhs.permutation_[j]];
  for (std::size_t k = 0; k < d; ++k) phases[k] = phases_[k] + rhs.phases_[inv[k]];
  return IncoherentUnitary(std::move(perm), std::move(phases));
}

IncoherentUnitary IncoherentUnitary::inverse() const {
  const std::size_t d = dim();
  std::vector<std::size_t> perm(d);
  std::vector<double> phases(d);
  for (std::size_t j = 0; j < d; ++j) perm[permutation_[j]] = j;
  for (std::size_t m = 0; m < d; ++m) phases[m] = -phases_[permutation_[m]];
  return IncoherentUnitary(std::move(perm), std::move(phases));
}

IncoherentUnitary random_incoherent(std::size_t d, std::uint64_t seed) {
  if (d < 1) throw Error(ErrorCode::kParamOutOfRange, "random_incoherent: d must be >= 1");
  Rng rng(seed);
  std::vector<std::size_t> perm(d);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  std::vector<double> phases(d);
  for (double& phi : phases) phi = angle(rng);
  return IncoherentUnitary(std::move(perm), std::move(phases));
}

std::optional<IncoherentUnitary> factor_incoherent(const ComplexMatrix& u) {
  if (u.rows() != u.cols() || u.rows() == 0) return std::nullopt;
  const auto d = static_cast<std::size_t>(u.rows());
  std::vector<std::size_t> perm(d);
  std::vector<double> phases(d, 0.0);
  std::vector<bool> used(d, false);
  for (Eigen::Index j = 0; j < u.cols(); ++j) {
    Eigen::Index row = -1;
    for (Eigen::Index i = 0; i < u.rows(); ++i) {
      if (std::abs(u(i, j)) > 1e-9) {
        if (row >= 0) return std::nullopt;
        row = i;
      }
    }
    if (row < 0 || std::abs(std::abs(u(row, j)) - 1.0) > 1e-9) return std::nullopt;
    const auto r = static_cast<std::size_t>(row);
    if (used[r]) return std::nullopt;
    used[r] = true;
    perm[static_cast<std::size_t>(j)] = r;
    phases[r] = std::arg(u(row, j));
  }
  return IncoherentUnitary(std::move(perm), std::move(phases));
}

IncoherentUnitary weyl_operator(std::size_t d, std::size_t shift, std::size_t clock) {
  if (d < 1) throw Error(ErrorCode::kParamOutOfRange, "weyl_operator: d must be >= 1");
  // X^k Z^j |a> = exp(2 pi i j a / d) |a + k>.
  std::vector<std::size_t> perm(d);
  std::vector<double> phases(d);
  for (std::size_t a = 0; a < d; ++a) {
    const std::size_t b = (a + shift) % d;
    perm[a] = b;
    phases[b] = kTwoPi * static_cast<double>((clock * a) % d) / static_cast<double>(d);
  }
  return IncoherentUnitary(std::move(perm), std::move(phases));
}

UnitaryEnsemble::UnitaryEnsemble(std::size_t dim, std::vector<EnsembleMember> members)
    : dim_(dim), members_(std::move(members)), all_incoherent_(true) {
  if (dim_ == 0 || members_.empty()) {
    throw Error(ErrorCode::kInvalidEnsemble, "ensemble needs a positive dimension and at least one member");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < members_.size(); ++i) {
    const EnsembleMember& m = members_[i];
    if (static_cast<std::size_t>(m.unitary.rows()) != dim_ ||
        static_cast<std::size_t>(m.unitary.cols()) != dim_) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "ensemble member " + std::to_string(i) + " is not " + std::to_string(dim_) + "x" +
                      std::to_string(dim_));
    }
    if (!std::isfinite(m.p) || m.p < 0.0) {
      throw Error(ErrorCode::kInvalidEnsemble, "ensemble member " + std::to_string(i) + " has invalid weight");
    }
    if (!all_finite(m.unitary) || unitarity_error(m.unitary) > 1e-9) {
      throw Error(ErrorCode::kInvalidEnsemble, "ensemble member " + std::to_string(i) + " is not unitary");
    }
    total += m.p;
    if (all_incoherent_ && !factor_incoherent(m.unitary)) all_incoherent_ = false;
  }
  if (std::abs(total - 1.0) > 1e-10) {
    throw Error(ErrorCode::kInvalidEnsemble, "ensemble weights sum to " + std::to_string(total));
  }
}

std::vector<double> UnitaryEnsemble::probabilities() const {
  std::vector<double> p;
  p.reserve(members_.size());
  for (const auto& m : members_) p.push_back(m.p);
  return p;
}

UnitaryEnsemble uniform_ensemble(std::size_t dim, std::vector<ComplexMatrix> unitaries) {
  std::vector<EnsembleMember> members;
  members.reserve(unitaries.size());
  const double w = unitaries.empty() ? 0.0 : 1.0 / static_cast<double>(unitaries.size());
  for (auto& u : unitaries) members.push_back({w, std::move(u)});
  return UnitaryEnsemble(dim, std::move(members));
}

UnitaryEnsemble tensor_power(const UnitaryEnsemble& e, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::kParamOutOfRange, "tensor_power: n must be >= 1");
  std::vector<EnsembleMember> current = e.members();
  std::size_t dim = e.dim();
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<EnsembleMember> next;
    next.reserve(current.size() * e.size());
    for (const auto& a : current) {
      for (const auto& b : e.members()) next.push_back({a.p * b.p, tensor(a.unitary, b.unitary)});
    }
    current = std::move(next);
    dim *= e.dim();
  }
  return UnitaryEnsemble(dim, std::move(current));
}

namespace {

void require_same_dim(const UnitaryEnsemble& e, const DensityMatrix& rho, const char* what) {
  if (e.dim() != rho.dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string(what) + ": ensemble dimension " + std::to_string(e.dim()) +
                    " vs state dimension " + std::to_string(rho.dim()));
  }
}

}  // namespace

DensityMatrix apply_ensemble(const UnitaryEnsemble& e, const DensityMatrix& rho) {
  require_same_dim(e, rho, "apply_ensemble");
  const auto d = static_cast<Eigen::Index>(e.dim());
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (const auto& m : e.members()) {
    if (m.p == 0.0) continue;
    out.noalias() += m.p * (m.unitary * rho.matrix() * m.unitary.adjoint());
  }
  return make_state(out);
}

UnitaryEnsemble weyl_ensemble(std::size_t d) {
  if (d < 2) throw Error(ErrorCode::kParamOutOfRange, "weyl_ensemble: d must be >= 2");
  std::vector<ComplexMatrix> ops;
  ops.reserve(d * d);
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t j = 0; j < d; ++j) ops.push_back(weyl_operator(d, k, j).to_matrix());
  }
  return uniform_ensemble(d, std::move(ops));
}

UnitaryEnsemble z_dephasing_ensemble(std::size_t d) {
  if (d < 2) throw Error(ErrorCode::kParamOutOfRange, "z_dephasing_ensemble: d must be >= 2");
  std::vector<ComplexMatrix> ops;
  ops.reserve(d);
  for (std::size_t j = 0; j < d; ++j) ops.push_back(weyl_operator(d, 0, j).to_matrix());
  return uniform_ensemble(d, std::move(ops));
}

UnitaryEnsemble pauli_pair_ensemble() {
  ComplexMatrix z = ComplexMatrix::Identity(2, 2);
  z(1, 1) = -1.0;
  return uniform_ensemble(2, {ComplexMatrix::Identity(2, 2), z});
}

DensityMatrix environment_state(const UnitaryEnsemble& e, const DensityMatrix& rho) {
  require_same_dim(e, rho, "entropy_exchange");
  const auto d2 = static_cast<Eigen::Index>(e.dim() * e.dim());
  const auto n = static_cast<Eigen::Index>(e.size());
  // Columns: vec(sqrt(p_i) U_i rho) and vec(sqrt(p_i) U_i); W = (B^dagger A)^T.
  ComplexMatrix a(d2, n);
  ComplexMatrix b(d2, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& m = e.members()[static_cast<std::size_t>(i)];
    const double w = std::sqrt(m.p);
    const ComplexMatrix ur = w * (m.unitary * rho.matrix());
    a.col(i) = ur.reshaped();
    b.col(i) = (w * m.unitary).reshaped();
  }
  const ComplexMatrix gram = (b.adjoint() * a).transpose();
  return make_state(gram);
}

double entropy_exchange(const UnitaryEnsemble& e, const DensityMatrix& rho) {
  return von_neumann_entropy(environment_state(e, rho));
}

double entropy_exchange_via_purification(const UnitaryEnsemble& e, const DensityMatrix& rho) {
  require_same_dim(e, rho, "entropy_exchange_via_purification");
  const auto d = static_cast<Eigen::Index>(rho.dim());
  check_dimension(rho.dim() * rho.dim(), "entropy_exchange_via_purification");
  const ComplexVector psi = purify(rho);
  // psi(a * d + z) viewed as the d x d matrix Psi(a, z); (U (x) I) psi = U Psi.
  ComplexMatrix psi_mat(d, d);
  for (Eigen::Index a = 0; a < d; ++a) {
    for (Eigen::Index z = 0; z < d; ++z) psi_mat(a, z) = psi(a * d + z);
  }
  ComplexMatrix joint = ComplexMatrix::Zero(d * d, d * d);
  ComplexVector phi(d * d);
  for (const auto& m : e.members()) {
    if (m.p == 0.0) continue;
    const ComplexMatrix out = m.unitary * psi_mat;
    for (Eigen::Index a = 0; a < d; ++a) {
      for (Eigen::Index z = 0; z < d; ++z) phi(a * d + z) = out(a, z);
    }
    joint.noalias() += m.p * (phi * phi.adjoint());
  }
  return von_neumann_entropy(make_state(joint));
}

EnsembleEntropyBounds ensemble_entropy_bounds(const UnitaryEnsemble& e, const DensityMatrix& rho) {
  EnsembleEntropyBounds out;
  out.exchange = entropy_exchange(e, rho);
  const std::vector<double> p = e.probabilities();
  out.mixing = shannon_entropy_bits(p);
  out.log_size = std::log2(static_cast<double>(e.size()));
  out.holds = out.exchange <= out.mixing + 1e-9 && out.mixing <= out.log_size + 1e-9;
  return out;
}

}  // namespace cohlab
