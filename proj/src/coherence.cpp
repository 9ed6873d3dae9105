#include "cohlab/coherence.hpp"

#include "cohlab/error.hpp"
#include "cohlab/random.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace cohlab {

DensityMatrix dephase(const DensityMatrix& rho) {
  const ComplexMatrix diag = rho.matrix().diagonal().real().cast<Complex>().asDiagonal();
  return DensityMatrix(diag);
}

double relative_entropy_coherence(const DensityMatrix& rho) {
  return std::max(0.0, von_neumann_entropy(dephase(rho)) - von_neumann_entropy(rho));
}

double l1_coherence(const DensityMatrix& rho) {
  const ComplexMatrix& m = rho.matrix();
  double total = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (i != j) total += std::abs(m(i, j));
    }
  }
  return total;
}

double binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw Error(ErrorCode::kParamOutOfRange, "binary_entropy: x must lie in [0, 1]");
  }
  double h = 0.0;
  if (x > 0.0) h -= x * std::log2(x);
  if (x < 1.0) h -= (1.0 - x) * std::log2(1.0 - x);
  return h;
}

IncoherentWitness incoherent_distance_witness(const DensityMatrix& sigma) {
  DensityMatrix tau = dephase(sigma);
  const double eps = trace_norm(sigma.matrix() - tau.matrix());
  return {eps, std::move(tau)};
}

double incoherent_distance_opt(const DensityMatrix& sigma, std::size_t iters, std::uint64_t seed) {
  const std::size_t d = sigma.dim();
  if (d > kMaxOptimizerDim) {
    throw Error(ErrorCode::kParamOutOfRange,
                "incoherent_distance_opt: dimension " + std::to_string(d) + " above " +
                    std::to_string(kMaxOptimizerDim));
  }
  if (iters == 0) throw Error(ErrorCode::kParamOutOfRange, "incoherent_distance_opt: iters must be > 0");

  const ComplexMatrix& s = sigma.matrix();
  auto objective = [&](const std::vector<double>& q) {
    ComplexMatrix diff = s;
    for (std::size_t i = 0; i < d; ++i) diff(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) -= q[i];
    return trace_norm(diff);
  };

  std::vector<double> q(d);
  for (std::size_t i = 0; i < d; ++i) q[i] = std::max(0.0, s(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real());
  double best = objective(q);

  std::vector<std::pair<std::size_t, std::size_t>> moves;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      if (i != j) moves.emplace_back(i, j);
    }
  }

  // Mass moves between coordinate pairs keep q on the simplex; the step
  // halves whenever a full sweep finds no improvement.
  Rng rng(seed);
  double step = 0.25;
  for (std::size_t it = 0; it < iters && step > 1e-13 && !moves.empty(); ++it) {
    std::shuffle(moves.begin(), moves.end(), rng);
    bool improved = false;
    for (const auto& [to, from] : moves) {
      const double t = std::min(step, q[from]);
      if (t <= 0.0) continue;
      std::vector<double> trial = q;
      trial[to] += t;
      trial[from] -= t;
      const double value = objective(trial);
      if (value < best - 1e-15) {
        best = value;
        q = std::move(trial);
        improved = true;
      }
    }
    if (!improved) step *= 0.5;
  }
  return best;
}

}  // namespace cohlab
