#pragma once

// Erasure experiments: the entropy-exchange lower bound for incoherent
// random-unitary maps on n copies, the sampled subspace-twirl eraser, the
// operator Chernoff experiment and finite-n rate curves.

#include "cohlab/channels.hpp"
#include "cohlab/typicality.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace cohlab {

// H(rho_I) - H(rho). rho_I must be diagonal within 1e-9, otherwise
// kNotIncoherentOutput. May be negative for mixed rho.
double single_copy_bound(const DensityMatrix& rho, const DensityMatrix& rho_incoherent);

// n (C_r(rho) - eps log2 d - H2(eps)). Returned unclamped, so a vacuous bound
// stays visible as a negative number. For eps >= 1 the bracket is already
// nonpositive and the H2 term is taken as 0.
double lemma1_bound(const DensityMatrix& rho, std::size_t n, double eps);

struct Lemma1Report {
  std::size_t n = 0;
  double eps = 0.0;               // dephasing-witness distance of R[rho^{(x)n}]
  double exchange = 0.0;          // H_e(R, rho^{(x)n})
  double bound = 0.0;             // lemma1_bound at eps
  bool holds = false;             // exchange >= bound - 1e-9

  // Intermediate quantities of the proof chain.
  double output_entropy = 0.0;    // H(R[rho^{(x)n}])
  double dephased_entropy = 0.0;  // H(R_D)
  double copies_dephased = 0.0;   // n H(rho^d)
  double copies_entropy = 0.0;    // n H(rho)
  double dephasing_gap = 0.0;     // ||R - R_D||_1
  bool gap_ok = false;            // dephasing_gap <= 2 eps
  bool dephased_ok = false;       // H(R_D) >= n H(rho^d)
  bool continuity_ok = false;     // H(R) >= H(R_D) - n eps log2 d - H2(eps)
  bool araki_lieb_ok = false;     // H_e >= H(R) - n H(rho)
};

// e acts on the n-copy space and must consist of incoherent unitaries
// (kNotIncoherentEnsemble otherwise).
Lemma1Report verify_lemma1(const UnitaryEnsemble& e, const DensityMatrix& rho, std::size_t n);

// Gaussian matrix, QR, then columns rescaled so R has a positive diagonal.
ComplexMatrix haar_unitary(std::size_t dim, std::uint64_t seed);

// Weyl operator X^shift Z^clock of dimension dim_typ acting inside the
// typical subspace through `basis`, identity on the complement.
ComplexMatrix embedded_weyl(const ComplexMatrix& basis, std::size_t shift, std::size_t clock);

// All dim_typ^2 embedded Weyl operators with weight 1/dim_typ^2.
UnitaryEnsemble subspace_twirl_ensemble(const TypicalSubspace& ts);

// ceil(2^{n(c_r + 3 eps)}); a 1e-9 slack keeps exact powers of two from
// rounding up.
std::uint64_t erasure_size(double c_r, std::size_t n, double eps);

struct SampledEraser {
  DensityMatrix rho;
  std::size_t n;
  double eps;
  std::uint64_t size;  // N
  std::uint64_t seed;
  UnitaryEnsemble ensemble;  // uniform weights 1/N
  TypicalSubspace subspace;
  DensityMatrix tau;         // Pi / dim_typ
};

// N = erasure_size(C_r(rho), n, eps) members drawn uniformly with
// replacement from the subspace twirl group, delta = eps.
SampledEraser sample_eraser(const DensityMatrix& rho, std::size_t n, double eps,
                            std::uint64_t seed);

// Same, with an explicit ensemble size and a precomputed subspace.
SampledEraser sample_eraser(const DensityMatrix& rho, const TypicalSubspace& ts, double eps,
                            std::uint64_t size, std::uint64_t seed);

struct ErasureReport {
  std::size_t n = 0;
  double eps = 0.0;
  std::uint64_t size = 0;  // N
  std::uint64_t seed = 0;
  double achieved_eps_witness = 0.0;
  double achieved_eps_tau = 0.0;
  double entropy_exchange = 0.0;
  double lemma1_bound = 0.0;  // at achieved_eps_witness
  double rate = 0.0;          // log2(N) / n
  double c_r = 0.0;
};

ErasureReport verify_eraser(const SampledEraser& se, const DensityMatrix& rho);

// epsilon + 2 sqrt(epsilon): the trace-distance guarantee for the sampled eraser.
double eraser_target(double eps);

// 1 - 2 dim exp(-N eps^2 a / (4 ln 2)).
double chernoff_bound(std::size_t dim, double a, double eps, std::uint64_t samples);

struct ChernoffConfig {
  std::size_t dim = 2;
  double a = 0.5;
  double eps = 0.25;
  std::uint64_t samples = 16;  // N
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  // Mixing weight between a seeded random seed operator (1) and the
  // constant a I (0).
  double spread = 1.0;
  std::size_t threads = 1;
};

struct ChernoffResult {
  double empirical_success = 0.0;
  double standard_error = 0.0;
  double bound = 0.0;
  double a = 0.0;
  std::size_t dim = 0;
  std::size_t successes = 0;
  std::size_t trials = 0;
};

// Random operators X = W L W^dagger with W uniform over the dim^2 Weyl
// operators and 0 <= L <= I a seeded operator of trace a * dim, so
// E X = a I exactly. Each trial averages N draws and tests
// (1 - eps) E X <= X̄ <= (1 + eps) E X through eigenvalues.
ChernoffResult chernoff_experiment(const ChernoffConfig& config);

// Same test for X = D U rho~ U^dagger restricted to the typical block of an
// eraser instance; a = D Tr(rho~) / dim_typ.
ChernoffResult chernoff_experiment(const SampledEraser& se, double eps, std::uint64_t samples,
                                   std::size_t trials, std::uint64_t seed,
                                   std::size_t threads = 1);

struct RateCurveConfig {
  double eps = 0.1;
  std::size_t n_min = 1;
  std::size_t n_max = 6;
  std::size_t seeds = 5;
  std::uint64_t master_seed = 0;
  std::size_t threads = 1;
};

struct RatePoint {
  std::size_t n = 0;
  std::uint64_t formula_size = 0;
  double formula_rate = 0.0;
  std::size_t formula_successes = 0;
  // Smallest tested N reaching eraser_target in a majority of seeds
  // ("best found", not a certified minimum). Empty when even the formula
  // size misses the target.
  std::optional<std::uint64_t> best_size;
  double best_rate = 0.0;
  double median_exchange_per_copy = 0.0;  // over seeds at the formula size
  std::vector<std::uint64_t> tested_sizes;
};

struct RateCurve {
  std::vector<ErasureReport> reports;  // sorted by n, seed, then N descending
  std::vector<RatePoint> points;
};

RateCurve rate_curve(const DensityMatrix& rho, const RateCurveConfig& config);

}  // namespace cohlab
