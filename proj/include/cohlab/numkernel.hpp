#pragma once

// Dense complex linear algebra shared by every other module.
//
// Tensor products are big-endian: in A ⊗ B the first factor is the most
// significant index, so basis element (i_a, i_b) sits at i_a * dim_b + i_b.
// Every module relies on this convention.

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <span>

namespace cohlab {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kEigenClampTol = 1e-10;
inline constexpr std::size_t kDefaultDimensionCap = 4096;

// Largest Hilbert-space dimension any operation may build. Process-wide and
// thread-safe; the CLI sets it from --dim-cap or COHLAB_DIM_CAP.
std::size_t dimension_cap();
void set_dimension_cap(std::size_t cap);

// Throws kDimensionOverflow when dim exceeds the current cap.
void check_dimension(std::size_t dim, const char* what);

struct Spectrum {
  RealVector eigenvalues;     // descending
  ComplexMatrix eigenvectors; // columns, orthonormal
};

struct BipartiteDims {
  std::size_t first = 1;
  std::size_t second = 1;
};

enum class Keep { kFirst, kSecond };

bool all_finite(const ComplexMatrix& m);
double max_abs_entry(const ComplexMatrix& m);
double hermiticity_error(const ComplexMatrix& m);
double unitarity_error(const ComplexMatrix& m);

// Descending eigenvalues. Eigenvectors are phase-fixed so the first entry of
// largest modulus is real and positive; equal eigenvalues are ordered by a
// lexicographic comparison of the eigenvector moduli.
Spectrum hermitian_eig(const ComplexMatrix& m);

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix tensor_power(const ComplexMatrix& a, std::size_t n);

ComplexMatrix partial_trace(const ComplexMatrix& m, BipartiteDims dims, Keep keep);

// Sum of singular values; uses the Hermitian spectrum when m is Hermitian.
double trace_norm(const ComplexMatrix& m);

// Spectral square root of a positive semidefinite matrix.
ComplexMatrix psd_sqrt(const ComplexMatrix& m);

// Shannon entropy in bits. Entries in [-1e-10, 0) count as 0; anything more
// negative is a numerical failure.
double shannon_entropy_bits(std::span<const double> probs);

}  // namespace cohlab
