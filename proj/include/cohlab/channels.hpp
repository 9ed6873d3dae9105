#pragma once

#include "cohlab/states.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace cohlab {

// U = V * Pi: Pi|j> = |perm[j]>, then V = diag(exp(i * phases[k])).
// The matrix has entry exp(i * phases[perm[j]]) at (perm[j], j).
class IncoherentUnitary {
 public:
  IncoherentUnitary(std::vector<std::size_t> permutation, std::vector<double> phases);

  static IncoherentUnitary identity(std::size_t d);

  std::size_t dim() const { return permutation_.size(); }
  const std::vector<std::size_t>& permutation() const { return permutation_; }
  const std::vector<double>& phases() const { return phases_; }

  ComplexMatrix to_matrix() const;

  // (*this) * rhs as operators.
  IncoherentUnitary compose(const IncoherentUnitary& rhs) const;
  IncoherentUnitary inverse() const;

 private:
  std::vector<std::size_t> permutation_;
  std::vector<double> phases_;  // each in [0, 2pi)
};

IncoherentUnitary random_incoherent(std::size_t d, std::uint64_t seed);

// Recovers the factorization when every column holds exactly one entry of
// unit modulus (tolerance 1e-9) and the rows are distinct.
std::optional<IncoherentUnitary> factor_incoherent(const ComplexMatrix& u);

// X^shift Z^clock on C^d.
IncoherentUnitary weyl_operator(std::size_t d, std::size_t shift, std::size_t clock);

struct EnsembleMember {
  double p;
  ComplexMatrix unitary;
};

class UnitaryEnsemble {
 public:
  // Validates probabilities (nonnegative, sum 1 within 1e-10) and unitarity
  // of each member (1e-9).
  UnitaryEnsemble(std::size_t dim, std::vector<EnsembleMember> members);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return members_.size(); }
  const std::vector<EnsembleMember>& members() const { return members_; }
  std::vector<double> probabilities() const;

  // True when every member passes factor_incoherent.
  bool all_incoherent() const { return all_incoherent_; }

 private:
  std::size_t dim_;
  std::vector<EnsembleMember> members_;
  bool all_incoherent_;
};

UnitaryEnsemble uniform_ensemble(std::size_t dim, std::vector<ComplexMatrix> unitaries);

// Member-wise tensor power: members are all n-fold products, weights multiply.
UnitaryEnsemble tensor_power(const UnitaryEnsemble& e, std::size_t n);

DensityMatrix apply_ensemble(const UnitaryEnsemble& e, const DensityMatrix& rho);

// The d^2 operators X^k Z^j, each with weight 1/d^2.
UnitaryEnsemble weyl_ensemble(std::size_t d);

// {1/d, Z^j}: realizes dephasing through phases alone.
UnitaryEnsemble z_dephasing_ensemble(std::size_t d);

// The ensemble {(1/2, I), (1/2, sigma_z)}.
UnitaryEnsemble pauli_pair_ensemble();

// Environment state W_ij = sqrt(p_i p_j) Tr(U_i rho U_j^dagger).
DensityMatrix environment_state(const UnitaryEnsemble& e, const DensityMatrix& rho);

// Entropy of environment_state, bits.
double entropy_exchange(const UnitaryEnsemble& e, const DensityMatrix& rho);

// Entropy of (R (x) id)[|psi><psi|] for a purification psi of rho.
// Requires dim^2 within the dimension cap.
double entropy_exchange_via_purification(const UnitaryEnsemble& e, const DensityMatrix& rho);

struct EnsembleEntropyBounds {
  double exchange = 0.0;      // H_e
  double mixing = 0.0;        // H(p)
  double log_size = 0.0;      // log2 N
  bool holds = false;         // H_e <= H(p) <= log2 N within 1e-9
};

EnsembleEntropyBounds ensemble_entropy_bounds(const UnitaryEnsemble& e, const DensityMatrix& rho);

}  // namespace cohlab
