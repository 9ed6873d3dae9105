#include "cohlab/erasure.hpp"

#include "cohlab/coherence.hpp"
#include "cohlab/error.hpp"
#include "cohlab/parallel.hpp"
#include "cohlab/random.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <string>

namespace cohlab {

namespace {

void require_eps_window(double eps, const char* what) {
  if (!(eps > 0.0 && eps < 0.5)) {
    throw Error(ErrorCode::kParamOutOfRange,
                std::string(what) + ": eps must lie in (0, 1/2), got " + std::to_string(eps));
  }
}

std::size_t copies_dim(std::size_t d, std::size_t n, const char* what) {
  std::size_t total = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (total > dimension_cap() / std::max<std::size_t>(d, 1)) {
      throw Error(ErrorCode::kDimensionOverflow,
                  std::string(what) + ": " + std::to_string(d) + "^" + std::to_string(n) +
                      " exceeds the dimension cap " + std::to_string(dimension_cap()));
    }
    total *= d;
  }
  check_dimension(total, what);
  return total;
}

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

// W M W^dagger for W = X^shift Z^clock: entry (a, b) moves to
// (a + shift, b + shift) with phase omega^{clock (a - b)}.
ComplexMatrix weyl_conjugate(const ComplexMatrix& m, std::size_t shift, std::size_t clock) {
  const auto d = static_cast<std::size_t>(m.rows());
  ComplexMatrix out(m.rows(), m.cols());
  const double unit = 2.0 * std::numbers::pi / static_cast<double>(d);
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) {
      const std::size_t turns = (clock * ((a + d - b) % d)) % d;
      out(static_cast<Eigen::Index>((a + shift) % d), static_cast<Eigen::Index>((b + shift) % d)) =
          std::polar(1.0, unit * static_cast<double>(turns)) *
          m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
    }
  }
  return out;
}

// Shared trial loop of the Chernoff experiments. Outcomes are the m^2 Weyl
// conjugates of `seed_op`, drawn uniformly; `mean` is their exact average.
ChernoffResult run_chernoff(const ComplexMatrix& seed_op, const ComplexMatrix& mean, double a,
                            double eps, std::uint64_t samples, std::size_t trials,
                            std::uint64_t seed, std::size_t threads) {
  const auto m = static_cast<std::size_t>(seed_op.rows());
  const ComplexMatrix upper = (1.0 + eps) * mean;
  const ComplexMatrix lower = (1.0 - eps) * mean;

  std::vector<unsigned char> success(trials, 0);
  parallel_for(trials, threads, [&](std::size_t t) {
    Rng rng(derive_seed(seed, {1, t}));
    std::uniform_int_distribution<std::size_t> pick(0, m * m - 1);
    ComplexMatrix sum = ComplexMatrix::Zero(seed_op.rows(), seed_op.cols());
    for (std::uint64_t i = 0; i < samples; ++i) {
      const std::size_t idx = pick(rng);
      sum += weyl_conjugate(seed_op, idx / m, idx % m);
    }
    const ComplexMatrix avg = sum / static_cast<double>(samples);
    const double below = hermitian_eig(0.5 * (upper - avg + (upper - avg).adjoint())).eigenvalues.minCoeff();
    const double above = hermitian_eig(0.5 * (avg - lower + (avg - lower).adjoint())).eigenvalues.minCoeff();
    success[t] = (below >= -1e-12 && above >= -1e-12) ? 1 : 0;
  });

  ChernoffResult r;
  r.trials = trials;
  r.dim = m;
  r.a = a;
  for (unsigned char s : success) r.successes += s;
  r.empirical_success = static_cast<double>(r.successes) / static_cast<double>(trials);
  r.standard_error = std::sqrt(r.empirical_success * (1.0 - r.empirical_success) / static_cast<double>(trials));
  r.bound = chernoff_bound(m, a, eps, samples);
  return r;
}

ErasureReport verify_eraser_on(const SampledEraser& se, const DensityMatrix& rho_n, double c_r) {
  const DensityMatrix out = apply_ensemble(se.ensemble, rho_n);
  const IncoherentWitness witness = incoherent_distance_witness(out);

  ErasureReport r;
  r.n = se.n;
  r.eps = se.eps;
  r.size = se.size;
  r.seed = se.seed;
  r.achieved_eps_tau = trace_norm(out.matrix() - se.tau.matrix());
  r.achieved_eps_witness = witness.epsilon_up;
  r.entropy_exchange = entropy_exchange(se.ensemble, rho_n);
  r.c_r = c_r;
  r.lemma1_bound = lemma1_bound(se.rho, se.n, witness.epsilon_up);
  r.rate = std::log2(static_cast<double>(se.size)) / static_cast<double>(se.n);
  return r;
}

}  // namespace

double single_copy_bound(const DensityMatrix& rho, const DensityMatrix& rho_incoherent) {
  const ComplexMatrix& m = rho_incoherent.matrix();
  const ComplexMatrix off = m - ComplexMatrix(m.diagonal().asDiagonal());
  if (max_abs_entry(off) > 1e-9) {
    throw Error(ErrorCode::kNotIncoherentOutput, "single_copy_bound: output state is not diagonal");
  }
  return von_neumann_entropy(rho_incoherent) - von_neumann_entropy(rho);
}

double lemma1_bound(const DensityMatrix& rho, std::size_t n, double eps) {
  if (n == 0) throw Error(ErrorCode::kParamOutOfRange, "lemma1_bound: n must be >= 1");
  if (!(eps >= 0.0) || !std::isfinite(eps)) {
    throw Error(ErrorCode::kParamOutOfRange, "lemma1_bound: eps must be finite and >= 0");
  }
  const double c_r = relative_entropy_coherence(rho);
  const double h2 = eps <= 1.0 ? binary_entropy(eps) : 0.0;
  return static_cast<double>(n) * (c_r - eps * std::log2(static_cast<double>(rho.dim())) - h2);
}

Lemma1Report verify_lemma1(const UnitaryEnsemble& e, const DensityMatrix& rho, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::kParamOutOfRange, "verify_lemma1: n must be >= 1");
  const std::size_t full = copies_dim(rho.dim(), n, "verify_lemma1");
  if (e.dim() != full) {
    throw Error(ErrorCode::kDimensionMismatch, "verify_lemma1: ensemble acts on dimension " +
                                                   std::to_string(e.dim()) + ", expected " +
                                                   std::to_string(full));
  }
  if (!e.all_incoherent()) {
    throw Error(ErrorCode::kNotIncoherentEnsemble, "verify_lemma1: ensemble has a coherent member");
  }

  const DensityMatrix rho_n = tensor_power(rho, n);
  const DensityMatrix out = apply_ensemble(e, rho_n);
  const IncoherentWitness witness = incoherent_distance_witness(out);
  const double nd = static_cast<double>(n);
  const double log_d = std::log2(static_cast<double>(rho.dim()));

  Lemma1Report r;
  r.n = n;
  r.eps = witness.epsilon_up;
  r.exchange = entropy_exchange(e, rho_n);
  r.bound = lemma1_bound(rho, n, r.eps);
  r.holds = r.exchange >= r.bound - 1e-9;

  r.output_entropy = von_neumann_entropy(out);
  r.dephased_entropy = von_neumann_entropy(witness.tau);
  r.copies_dephased = nd * von_neumann_entropy(dephase(rho));
  r.copies_entropy = nd * von_neumann_entropy(rho);
  r.dephasing_gap = trace_norm(out.matrix() - witness.tau.matrix());
  r.gap_ok = r.dephasing_gap <= 2.0 * r.eps + 1e-9;
  r.dephased_ok = r.dephased_entropy >= r.copies_dephased - 1e-9;
  const double h2 = r.eps <= 1.0 ? binary_entropy(r.eps) : 0.0;
  r.continuity_ok = r.output_entropy >= r.dephased_entropy - nd * r.eps * log_d - h2 - 1e-9;
  r.araki_lieb_ok = r.exchange >= r.output_entropy - r.copies_entropy - 1e-9;
  return r;
}

ComplexMatrix haar_unitary(std::size_t dim, std::uint64_t seed) {
  if (dim < 1) throw Error(ErrorCode::kParamOutOfRange, "haar_unitary: dim must be >= 1");
  check_dimension(dim, "haar_unitary");
  Rng rng(seed);
  const ComplexMatrix g = complex_gaussian(dim, dim, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix& r = qr.matrixQR();
  for (Eigen::Index i = 0; i < q.cols(); ++i) {
    const Complex diag = r(i, i);
    const double mod = std::abs(diag);
    if (mod > 0.0) q.col(i) *= diag / mod;
  }
  return q;
}

ComplexMatrix embedded_weyl(const ComplexMatrix& basis, std::size_t shift, std::size_t clock) {
  const auto m = static_cast<std::size_t>(basis.cols());
  if (m == 0) throw Error(ErrorCode::kParamOutOfRange, "embedded_weyl: empty subspace");
  const ComplexMatrix w = weyl_operator(m, shift % m, clock % m).to_matrix();
  const auto full = basis.rows();
  // B W B^dagger + (I - B B^dagger) = I + B (W - I) B^dagger.
  ComplexMatrix u = ComplexMatrix::Identity(full, full);
  u.noalias() += basis * (w - ComplexMatrix::Identity(w.rows(), w.cols())) * basis.adjoint();
  return u;
}

UnitaryEnsemble subspace_twirl_ensemble(const TypicalSubspace& ts) {
  const std::size_t m = ts.dim_typ();
  if (m == 0) throw Error(ErrorCode::kParamOutOfRange, "subspace_twirl_ensemble: empty typical subspace");
  const ComplexMatrix b = ts.basis();
  std::vector<ComplexMatrix> ops;
  ops.reserve(m * m);
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t j = 0; j < m; ++j) ops.push_back(embedded_weyl(b, k, j));
  }
  return uniform_ensemble(ts.full_dim(), std::move(ops));
}

std::uint64_t erasure_size(double c_r, std::size_t n, double eps) {
  const double exponent = static_cast<double>(n) * (c_r + 3.0 * eps);
  if (!std::isfinite(exponent) || exponent > 62.0) {
    throw Error(ErrorCode::kDimensionOverflow, "erasure_size: 2^" + std::to_string(exponent) + " members");
  }
  const double value = std::ceil(std::exp2(exponent) - 1e-9);
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(value));
}

SampledEraser sample_eraser(const DensityMatrix& rho, std::size_t n, double eps, std::uint64_t seed) {
  require_eps_window(eps, "sample_eraser");
  if (n == 0) throw Error(ErrorCode::kParamOutOfRange, "sample_eraser: n must be >= 1");
  copies_dim(rho.dim(), n, "sample_eraser");
  const TypicalSubspace ts = typical_subspace(rho, n, eps);
  const std::uint64_t size = erasure_size(relative_entropy_coherence(rho), n, eps);
  return sample_eraser(rho, ts, eps, size, seed);
}

SampledEraser sample_eraser(const DensityMatrix& rho, const TypicalSubspace& ts, double eps,
                            std::uint64_t size, std::uint64_t seed) {
  require_eps_window(eps, "sample_eraser");
  if (ts.single_dim() != rho.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "sample_eraser: subspace built for another dimension");
  }
  if (size == 0) throw Error(ErrorCode::kParamOutOfRange, "sample_eraser: N must be >= 1");
  const std::size_t m = ts.dim_typ();
  if (m == 0) {
    throw Error(ErrorCode::kParamOutOfRange,
                "sample_eraser: typical subspace is empty for n=" + std::to_string(ts.n()) +
                    ", delta=" + std::to_string(ts.delta()));
  }
  const ComplexMatrix basis = ts.basis();

  Rng rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, m * m - 1);
  std::vector<ComplexMatrix> members;
  members.reserve(size);
  for (std::uint64_t i = 0; i < size; ++i) {
    const std::size_t idx = pick(rng);
    members.push_back(embedded_weyl(basis, idx / m, idx % m));
  }

  return SampledEraser{rho,
                       ts.n(),
                       eps,
                       size,
                       seed,
                       uniform_ensemble(ts.full_dim(), std::move(members)),
                       ts,
                       make_state(basis * basis.adjoint() / static_cast<double>(m))};
}

ErasureReport verify_eraser(const SampledEraser& se, const DensityMatrix& rho) {
  if (rho.dim() != se.rho.dim()) throw Error(ErrorCode::kDimensionMismatch, "verify_eraser: state dimension differs");
  return verify_eraser_on(se, tensor_power(rho, se.n), relative_entropy_coherence(rho));
}

double eraser_target(double eps) { return eps + 2.0 * std::sqrt(eps); }

double chernoff_bound(std::size_t dim, double a, double eps, std::uint64_t samples) {
  return 1.0 - 2.0 * static_cast<double>(dim) *
                   std::exp(-static_cast<double>(samples) * eps * eps * a / (4.0 * std::numbers::ln2));
}

ChernoffResult chernoff_experiment(const ChernoffConfig& c) {
  if (c.dim < 1) throw Error(ErrorCode::kParamOutOfRange, "chernoff: dim must be >= 1");
  check_dimension(c.dim, "chernoff");
  if (!(c.a > 0.0 && c.a < 1.0)) throw Error(ErrorCode::kParamOutOfRange, "chernoff: a must lie in (0, 1)");
  require_eps_window(c.eps, "chernoff");
  if ((1.0 + c.eps) * c.a > 1.0) {
    throw Error(ErrorCode::kParamOutOfRange, "chernoff: requires (1 + eps) a <= 1");
  }
  if (c.samples < 1 || c.trials < 1) throw Error(ErrorCode::kParamOutOfRange, "chernoff: N and trials must be >= 1");
  if (!(c.spread >= 0.0 && c.spread <= 1.0)) throw Error(ErrorCode::kParamOutOfRange, "chernoff: spread must lie in [0, 1]");

  // Seed operator with spectrum t * a d q + (1 - t) a, q a random
  // probability vector, t the largest weight <= spread keeping it <= 1.
  const auto d = static_cast<Eigen::Index>(c.dim);
  const DensityMatrix q = random_state(c.dim, c.dim, derive_seed(c.seed, {0, 0}));
  const RealVector full = c.a * static_cast<double>(c.dim) * q.spectrum().eigenvalues;
  const double top = full.maxCoeff();
  double t = c.spread;
  if (top > 1.0) t = std::min(t, (1.0 - c.a) / (top - c.a));
  const RealVector mu = t * full + (1.0 - t) * c.a * RealVector::Ones(d);
  const ComplexMatrix h = haar_unitary(c.dim, derive_seed(c.seed, {0, 1}));
  const ComplexMatrix seed_op = h * mu.cast<Complex>().asDiagonal() * h.adjoint();

  ComplexMatrix mean = ComplexMatrix::Zero(d, d);
  for (std::size_t k = 0; k < c.dim; ++k) {
    for (std::size_t j = 0; j < c.dim; ++j) mean += weyl_conjugate(seed_op, k, j);
  }
  mean /= static_cast<double>(c.dim * c.dim);

  return run_chernoff(seed_op, mean, c.a, c.eps, c.samples, c.trials, c.seed, c.threads);
}

ChernoffResult chernoff_experiment(const SampledEraser& se, double eps, std::uint64_t samples,
                                   std::size_t trials, std::uint64_t seed, std::size_t threads) {
  require_eps_window(eps, "chernoff");
  if (samples < 1 || trials < 1) throw Error(ErrorCode::kParamOutOfRange, "chernoff: N and trials must be >= 1");
  const std::size_t m = se.subspace.dim_typ();
  const ComplexMatrix basis = se.subspace.basis();
  const ComplexMatrix block = basis.adjoint() * tensor_power(se.rho.matrix(), se.n) * basis;
  const double scale = se.subspace.d_lower();
  const ComplexMatrix seed_op = scale * block;
  if (hermitian_eig(0.5 * (seed_op + seed_op.adjoint())).eigenvalues.maxCoeff() > 1.0 + 1e-9) {
    throw Error(ErrorCode::kNumericalFailure, "chernoff: D rho~ exceeds the identity");
  }
  // Exact Weyl twirl of the block.
  const double a = scale * block.trace().real() / static_cast<double>(m);
  if ((1.0 + eps) * a > 1.0) throw Error(ErrorCode::kParamOutOfRange, "chernoff: requires (1 + eps) a <= 1");
  const auto md = static_cast<Eigen::Index>(m);
  const ComplexMatrix mean = a * ComplexMatrix::Identity(md, md);
  return run_chernoff(seed_op, mean, a, eps, samples, trials, seed, threads);
}

RateCurve rate_curve(const DensityMatrix& rho, const RateCurveConfig& config) {
  require_eps_window(config.eps, "rate_curve");
  if (config.n_min < 1 || config.n_max < config.n_min) {
    throw Error(ErrorCode::kParamOutOfRange, "rate_curve: need 1 <= n_min <= n_max");
  }
  if (config.seeds < 1) throw Error(ErrorCode::kParamOutOfRange, "rate_curve: seeds must be >= 1");
  copies_dim(rho.dim(), config.n_max, "rate_curve");

  const double c_r = relative_entropy_coherence(rho);
  const double target = eraser_target(config.eps);
  RateCurve curve;

  for (std::size_t n = config.n_min; n <= config.n_max; ++n) {
    const TypicalSubspace ts = typical_subspace(rho, n, config.eps);
    const DensityMatrix rho_n = tensor_power(rho, n);
    RatePoint point;
    point.n = n;
    point.formula_size = erasure_size(c_r, n, config.eps);
    point.formula_rate = std::log2(static_cast<double>(point.formula_size)) / static_cast<double>(n);

    if (ts.dim_typ() == 0) {
      curve.points.push_back(std::move(point));
      continue;
    }

    std::map<std::uint64_t, std::vector<ErasureReport>, std::greater<>> evaluated;
    auto successes_at = [&](std::uint64_t size) {
      auto [it, fresh] = evaluated.try_emplace(size);
      if (fresh) {
        it->second.resize(config.seeds);
        parallel_for(config.seeds, config.threads, [&](std::size_t s) {
          const SampledEraser se = sample_eraser(rho, ts, config.eps, size, derive_seed(config.master_seed, {n, s}));
          it->second[s] = verify_eraser_on(se, rho_n, c_r);
        });
        point.tested_sizes.push_back(size);
      }
      std::size_t ok = 0;
      for (const auto& r : it->second) ok += r.achieved_eps_tau <= target + 1e-12 ? 1 : 0;
      return ok;
    };
    auto majority = [&](std::size_t ok) { return 2 * ok > config.seeds; };

    point.formula_successes = successes_at(point.formula_size);
    if (majority(point.formula_successes)) {
      // Halve until the target is missed, then bisect between the last miss
      // and the last hit.
      std::uint64_t hit = point.formula_size;
      std::uint64_t miss = 0;
      while (hit > 1) {
        const std::uint64_t trial = hit / 2;
        if (majority(successes_at(trial))) {
          hit = trial;
        } else {
          miss = trial;
          break;
        }
      }
      while (miss != 0 && hit - miss > 1) {
        const std::uint64_t mid = miss + (hit - miss) / 2;
        if (majority(successes_at(mid))) {
          hit = mid;
        } else {
          miss = mid;
        }
      }
      point.best_size = hit;
      point.best_rate = std::log2(static_cast<double>(hit)) / static_cast<double>(n);
    }

    std::vector<double> per_copy;
    for (const auto& r : evaluated.at(point.formula_size)) per_copy.push_back(r.entropy_exchange / static_cast<double>(n));
    point.median_exchange_per_copy = median(std::move(per_copy));

    for (std::size_t s = 0; s < config.seeds; ++s) {
      for (const auto& [size, reports] : evaluated) curve.reports.push_back(reports[s]);
    }
    curve.points.push_back(std::move(point));
  }
  return curve;
}

}  // namespace cohlab
