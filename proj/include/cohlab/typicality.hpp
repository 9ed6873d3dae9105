#pragma once

// Weak (entropy-window) typicality for n copies of a spectrum, plus the
// Fannes-Audenaert and gentle-operator inequality checkers.
//
// A sequence x^n over an alphabet of size d is addressed by its big-endian
// linear index sum_k x_k d^(n-1-k), matching the tensor convention.

#include "cohlab/states.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace cohlab {

class ClassicalDistribution {
 public:
  // Nonnegative, sums to 1 within 1e-12.
  explicit ClassicalDistribution(std::vector<double> probs);

  // Clamped, renormalized eigenvalues of rho (descending).
  static ClassicalDistribution from_spectrum(const DensityMatrix& rho);

  std::size_t size() const { return probs_.size(); }
  const std::vector<double>& probs() const { return probs_; }
  double entropy() const { return entropy_; }

 private:
  std::vector<double> probs_;
  double entropy_;
};

inline constexpr std::uint64_t kMaxEnumeratedSequences = std::uint64_t{1} << 24;

std::vector<std::size_t> decode_sequence(std::uint64_t index, std::size_t alphabet, std::size_t n);

// -(1/n) sum log2 p(x_i); throws kZeroProbabilitySymbol.
double sample_entropy(std::span<const std::size_t> seq, const ClassicalDistribution& p);

struct TypicalSet {
  std::size_t n = 0;
  double delta = 0.0;
  double entropy = 0.0;
  std::vector<std::uint64_t> members;  // ascending linear indices
  double mass = 0.0;
};

// Exhaustive enumeration of {x^n : |H̄(x^n) - H| <= delta}. Sequences using
// a zero-probability symbol have infinite sample entropy and are never typical.
// Blocks of sequences sharing a high-order prefix are enumerated on up to
// `threads` workers and merged in index order.
TypicalSet typical_set(const ClassicalDistribution& p, std::size_t n, double delta,
                       std::size_t threads = 1);

class TypicalSubspace {
 public:
  TypicalSubspace(std::size_t n, double delta, ClassicalDistribution base,
                  ComplexMatrix eigenvectors, TypicalSet set, double dephased_entropy);

  std::size_t n() const { return n_; }
  double delta() const { return delta_; }
  const ClassicalDistribution& base() const { return base_; }
  const ComplexMatrix& eigenvectors() const { return eigenvectors_; }
  const std::vector<std::uint64_t>& members() const { return set_.members; }
  std::size_t dim_typ() const { return set_.members.size(); }
  std::size_t single_dim() const { return base_.size(); }
  std::size_t full_dim() const;

  // Tr(Pi rho^{(x)n}) from the classical enumeration.
  double mass() const { return set_.mass; }

  // 2^{n(H(rho) - delta)}.
  double d_lower() const;
  // 2^{n(H(rho^d) + delta)}.
  double d_dephased() const;

  // full_dim x dim_typ matrix whose columns are the product eigenvectors of
  // the typical sequences, in member order.
  ComplexMatrix basis() const;
  ComplexMatrix projector() const;

 private:
  std::size_t n_;
  double delta_;
  ClassicalDistribution base_;
  ComplexMatrix eigenvectors_;
  TypicalSet set_;
  double dephased_entropy_;
};

TypicalSubspace typical_subspace(const DensityMatrix& rho, std::size_t n, double delta);

struct TypicalityReport {
  double mass = 0.0;                 // property (a), reported only
  double epsilon = 0.0;              // 1 - mass
  std::size_t dim_typ = 0;
  double dim_lower = 0.0;            // (1 - epsilon) 2^{n(H - delta)}
  double dim_upper = 0.0;            // 2^{n(H + delta)}
  bool dim_bounds_ok = false;        // property (b)
  double sandwich_lower = 0.0;       // 2^{-n(H + delta)}
  double sandwich_upper = 0.0;       // 2^{-n(H - delta)}
  double eig_min = 0.0;              // enclosure of the pinched block spectrum
  double eig_max = 0.0;
  double sandwich_slack = 0.0;       // min distance of the enclosure to the window
  bool sandwich_ok = false;          // property (c)
};

// Evaluates the three typical-subspace properties. The pinched operator
// Pi rho^{(x)n} Pi is formed on the typical block from single-copy matrix
// elements, and its spectrum is enclosed with Gershgorin discs.
TypicalityReport typicality_properties(const TypicalSubspace& ts, const DensityMatrix& rho);

struct FannesAudenaert {
  double delta_h = 0.0;
  double trace_distance = 0.0;  // T = ||rho - sigma||_1 / 2
  double bound = 0.0;           // T log2(d - 1) + H2(T)
  bool holds = false;
};

FannesAudenaert fannes_audenaert_check(const DensityMatrix& rho, const DensityMatrix& sigma);

struct GentleOperator {
  double eps = 0.0;
  double disturbance = 0.0;
  bool holds = false;
};

// Requires 0 <= lambda <= I within 1e-9, else kNotAMeasurementOperator.
GentleOperator gentle_operator_check(const ComplexMatrix& lambda, const DensityMatrix& rho);

}  // namespace cohlab
