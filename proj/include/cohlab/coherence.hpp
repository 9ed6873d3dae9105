#pragma once

// Coherence is always measured in the computational basis. Callers that want
// a different reference basis conjugate their states first.

#include "cohlab/states.hpp"

#include <cstdint>

namespace cohlab {

DensityMatrix dephase(const DensityMatrix& rho);

// H(dephase(rho)) - H(rho), bits.
double relative_entropy_coherence(const DensityMatrix& rho);

double l1_coherence(const DensityMatrix& rho);

// -x log2 x - (1-x) log2(1-x); throws kParamOutOfRange outside [0, 1].
double binary_entropy(double x);

struct IncoherentWitness {
  double epsilon_up;
  DensityMatrix tau;
};

// tau = dephase(sigma) is a feasible incoherent state, so ||sigma - tau||_1
// bounds the trace distance to the incoherent set from above.
IncoherentWitness incoherent_distance_witness(const DensityMatrix& sigma);

inline constexpr std::size_t kMaxOptimizerDim = 16;

// Pattern search over probability vectors q minimizing ||sigma - diag(q)||_1,
// started at the diagonal of sigma. Never exceeds the witness value.
double incoherent_distance_opt(const DensityMatrix& sigma, std::size_t iters,
                               std::uint64_t seed = 0);

}  // namespace cohlab
