#pragma once

#include "cohlab/numkernel.hpp"

#include <cstdint>

namespace cohlab {

// A validated density matrix: Hermitian and unit trace within 1e-10, no
// eigenvalue below -1e-10. Immutable once constructed.
class DensityMatrix {
 public:
  // Validates; throws kInvalidState / kNotHermitian.
  explicit DensityMatrix(ComplexMatrix m);

  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }
  const ComplexMatrix& matrix() const { return matrix_; }

  // Cached descending spectrum with eigenvalues clamped at zero.
  const Spectrum& spectrum() const { return spectrum_; }

 private:
  ComplexMatrix matrix_;
  Spectrum spectrum_;
};

class PureState {
 public:
  // Validates unit norm within 1e-10.
  explicit PureState(ComplexVector amplitudes);

  std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }
  const ComplexVector& amplitudes() const { return amplitudes_; }
  DensityMatrix projector() const;

 private:
  ComplexVector amplitudes_;
};

// Hermitian-symmetrizes m before validation; used for channel outputs whose
// anti-Hermitian part is pure rounding noise.
DensityMatrix make_state(const ComplexMatrix& m);

// |psi> = sum_i sqrt(lambda_i) |i>_S |i>_Z over the spectrum of rho.
ComplexVector purify(const DensityMatrix& rho);

PureState maximally_coherent(std::size_t d);

// (1 - p) I/d + p |psi_d><psi_d|.
DensityMatrix max_coherent_mixed(std::size_t d, double p);

DensityMatrix maximally_mixed(std::size_t d);
DensityMatrix diagonal_state(std::span<const double> probs);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);
DensityMatrix tensor_power(const DensityMatrix& rho, std::size_t n);
DensityMatrix partial_trace(const DensityMatrix& rho_ab, BipartiteDims dims, Keep keep);

// Bits.
double von_neumann_entropy(const DensityMatrix& rho);

// H(A) + H(B) - H(AB), bits.
double mutual_information(const DensityMatrix& rho_ab, BipartiteDims dims);

struct ArakiLieb {
  double lhs = 0.0;  // |H(A) - H(B)|
  double rhs = 0.0;  // H(AB)
  bool holds = false;
};

ArakiLieb araki_lieb_check(const DensityMatrix& rho_ab, BipartiteDims dims);

// G G^dagger / Tr(G G^dagger) with G a d x rank complex Gaussian matrix.
DensityMatrix random_state(std::size_t d, std::size_t rank, std::uint64_t seed);

PureState random_pure_state(std::size_t d, std::uint64_t seed);

}  // namespace cohlab
