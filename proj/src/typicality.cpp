#include "cohlab/typicality.hpp"

#include "cohlab/coherence.hpp"
#include "cohlab/error.hpp"
#include "cohlab/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace cohlab {

namespace {

// Slack on the entropy window edge, in bits, absorbing rounding of log sums.
constexpr double kWindowSlack = 1e-12;
constexpr double kSandwichRelTol = 1e-10;

// d^n, or nullopt-like max when it overflows `limit`.
std::uint64_t checked_power(std::size_t d, std::size_t n, std::uint64_t limit) {
  std::uint64_t total = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (total > limit / std::max<std::uint64_t>(d, 1)) return std::numeric_limits<std::uint64_t>::max();
    total *= d;
  }
  return total;
}

// log2 p for every index of `digits` symbols, big-endian.
std::vector<double> log_table(const std::vector<double>& log_p, std::size_t digits) {
  std::vector<double> table{0.0};
  for (std::size_t k = 0; k < digits; ++k) {
    std::vector<double> next;
    next.reserve(table.size() * log_p.size());
    for (double prefix : table) {
      for (double l : log_p) next.push_back(prefix + l);
    }
    table = std::move(next);
  }
  return table;
}

}  // namespace

ClassicalDistribution::ClassicalDistribution(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw Error(ErrorCode::kParamOutOfRange, "distribution must be nonempty");
  double total = 0.0;
  for (double p : probs_) {
    if (!std::isfinite(p) || p < 0.0) {
      throw Error(ErrorCode::kParamOutOfRange, "distribution entries must be finite and nonnegative");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw Error(ErrorCode::kParamOutOfRange, "distribution sums to " + std::to_string(total));
  }
  entropy_ = shannon_entropy_bits(probs_);
}

ClassicalDistribution ClassicalDistribution::from_spectrum(const DensityMatrix& rho) {
  const RealVector& ev = rho.spectrum().eigenvalues;
  std::vector<double> p(ev.data(), ev.data() + ev.size());
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  for (double& x : p) x = std::max(x, 0.0) / total;
  return ClassicalDistribution(std::move(p));
}

std::vector<std::size_t> decode_sequence(std::uint64_t index, std::size_t alphabet, std::size_t n) {
  std::vector<std::size_t> seq(n);
  for (std::size_t k = n; k-- > 0;) {
    seq[k] = static_cast<std::size_t>(index % alphabet);
    index /= alphabet;
  }
  return seq;
}

double sample_entropy(std::span<const std::size_t> seq, const ClassicalDistribution& p) {
  if (seq.empty()) throw Error(ErrorCode::kParamOutOfRange, "sample_entropy: empty sequence");
  double log_sum = 0.0;
  for (std::size_t s : seq) {
    if (s >= p.size()) throw Error(ErrorCode::kParamOutOfRange, "sample_entropy: symbol out of range");
    const double ps = p.probs()[s];
    if (ps <= 0.0) {
      throw Error(ErrorCode::kZeroProbabilitySymbol,
                  "sample_entropy: symbol " + std::to_string(s) + " has probability zero");
    }
    log_sum += std::log2(ps);
  }
  return -log_sum / static_cast<double>(seq.size());
}

TypicalSet typical_set(const ClassicalDistribution& p, std::size_t n, double delta,
                       std::size_t threads) {
  if (n == 0) throw Error(ErrorCode::kParamOutOfRange, "typical_set: n must be >= 1");
  if (!(delta > 0.0)) throw Error(ErrorCode::kParamOutOfRange, "typical_set: delta must be > 0");
  const std::size_t d = p.size();
  const std::uint64_t total = checked_power(d, n, kMaxEnumeratedSequences);
  if (total > kMaxEnumeratedSequences) {
    throw Error(ErrorCode::kTooLarge, "typical_set: " + std::to_string(d) + "^" + std::to_string(n) +
                                          " sequences exceed the enumeration limit");
  }

  std::vector<double> log_p(d);
  for (std::size_t s = 0; s < d; ++s) {
    log_p[s] = p.probs()[s] > 0.0 ? std::log2(p.probs()[s]) : -std::numeric_limits<double>::infinity();
  }
  // index = hi * d^low_digits + lo, log p(x^n) = high[hi] + low[lo].
  const std::size_t low_digits = n / 2;
  const std::vector<double> high = log_table(log_p, n - low_digits);
  const std::vector<double> low = log_table(log_p, low_digits);

  const double h = p.entropy();
  const double nd = static_cast<double>(n);
  std::vector<std::vector<std::uint64_t>> block_members(high.size());
  std::vector<double> block_mass(high.size(), 0.0);
  parallel_for(high.size(), threads, [&](std::size_t hi) {
    for (std::size_t lo = 0; lo < low.size(); ++lo) {
      const double lp = high[hi] + low[lo];
      if (!std::isfinite(lp)) continue;
      if (std::abs(-lp / nd - h) <= delta + kWindowSlack) {
        block_members[hi].push_back(static_cast<std::uint64_t>(hi) * low.size() + lo);
        block_mass[hi] += std::exp2(lp);
      }
    }
  });

  TypicalSet out;
  out.n = n;
  out.delta = delta;
  out.entropy = h;
  for (std::size_t hi = 0; hi < high.size(); ++hi) {
    out.members.insert(out.members.end(), block_members[hi].begin(), block_members[hi].end());
    out.mass += block_mass[hi];
  }
  return out;
}

TypicalSubspace::TypicalSubspace(std::size_t n, double delta, ClassicalDistribution base,
                                 ComplexMatrix eigenvectors, TypicalSet set, double dephased_entropy)
    : n_(n),
      delta_(delta),
      base_(std::move(base)),
      eigenvectors_(std::move(eigenvectors)),
      set_(std::move(set)),
      dephased_entropy_(dephased_entropy) {}

std::size_t TypicalSubspace::full_dim() const {
  std::size_t total = 1;
  for (std::size_t k = 0; k < n_; ++k) total *= base_.size();
  return total;
}

double TypicalSubspace::d_lower() const {
  return std::exp2(static_cast<double>(n_) * (base_.entropy() - delta_));
}

double TypicalSubspace::d_dephased() const {
  return std::exp2(static_cast<double>(n_) * (dephased_entropy_ + delta_));
}

ComplexMatrix TypicalSubspace::basis() const {
  const std::size_t full = full_dim();
  check_dimension(full, "typical subspace basis");
  const std::size_t d = base_.size();
  ComplexMatrix b(static_cast<Eigen::Index>(full), static_cast<Eigen::Index>(dim_typ()));
  for (std::size_t c = 0; c < dim_typ(); ++c) {
    const std::vector<std::size_t> seq = decode_sequence(set_.members[c], d, n_);
    ComplexVector v = eigenvectors_.col(static_cast<Eigen::Index>(seq[0]));
    for (std::size_t k = 1; k < n_; ++k) v = tensor(v, eigenvectors_.col(static_cast<Eigen::Index>(seq[k])));
    b.col(static_cast<Eigen::Index>(c)) = v;
  }
  return b;
}

ComplexMatrix TypicalSubspace::projector() const {
  const ComplexMatrix b = basis();
  return b * b.adjoint();
}

TypicalSubspace typical_subspace(const DensityMatrix& rho, std::size_t n, double delta) {
  if (n == 0) throw Error(ErrorCode::kParamOutOfRange, "typical_subspace: n must be >= 1");
  const std::size_t d = rho.dim();
  if (checked_power(d, n, dimension_cap()) > dimension_cap()) {
    throw Error(ErrorCode::kTooLarge, "typical_subspace: " + std::to_string(d) + "^" +
                                          std::to_string(n) + " exceeds the dimension cap " +
                                          std::to_string(dimension_cap()));
  }
  ClassicalDistribution base = ClassicalDistribution::from_spectrum(rho);
  TypicalSet set = typical_set(base, n, delta);
  const double dephased_entropy = von_neumann_entropy(dephase(rho));
  return TypicalSubspace(n, delta, std::move(base), rho.spectrum().eigenvectors, std::move(set),
                         dephased_entropy);
}

TypicalityReport typicality_properties(const TypicalSubspace& ts, const DensityMatrix& rho) {
  if (rho.dim() != ts.single_dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "typicality_properties: state and subspace dimensions differ");
  }
  const std::size_t d = ts.single_dim();
  const std::size_t n = ts.n();
  const double h = ts.base().entropy();
  const double nd = static_cast<double>(n);

  // Single-copy matrix elements in the stored eigenbasis; the n-copy block
  // entries are products of these.
  const ComplexMatrix g = ts.eigenvectors().adjoint() * rho.matrix() * ts.eigenvectors();
  std::vector<double> row_abs(d, 0.0);
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) row_abs[a] += std::abs(g(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)));
  }

  TypicalityReport r;
  r.dim_typ = ts.dim_typ();
  r.sandwich_lower = std::exp2(-nd * (h + ts.delta()));
  r.sandwich_upper = std::exp2(-nd * (h - ts.delta()));
  r.eig_min = std::numeric_limits<double>::infinity();
  r.eig_max = -std::numeric_limits<double>::infinity();

  double mass = 0.0;
  for (std::uint64_t index : ts.members()) {
    const std::vector<std::size_t> seq = decode_sequence(index, d, n);
    Complex centre = 1.0;
    double full_row = 1.0;
    double centre_abs = 1.0;
    for (std::size_t s : seq) {
      const Complex gs = g(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(s));
      centre *= gs;
      centre_abs *= std::abs(gs);
      full_row *= row_abs[s];
    }
    // Gershgorin radius over all sequences, a superset of the typical block.
    const double radius = std::max(0.0, full_row - centre_abs);
    mass += centre.real();
    r.eig_min = std::min(r.eig_min, centre.real() - radius);
    r.eig_max = std::max(r.eig_max, centre.real() + radius);
  }

  r.mass = mass;
  r.epsilon = std::max(0.0, 1.0 - mass);
  r.dim_lower = (1.0 - r.epsilon) * std::exp2(nd * (h - ts.delta()));
  r.dim_upper = std::exp2(nd * (h + ts.delta()));
  const auto dim = static_cast<double>(r.dim_typ);
  r.dim_bounds_ok = r.dim_lower <= dim * (1.0 + 1e-12) && dim <= r.dim_upper * (1.0 + 1e-12);

  if (r.dim_typ == 0) {
    r.eig_min = r.eig_max = 0.0;
    r.sandwich_slack = 0.0;
    r.sandwich_ok = true;  // Pi = 0: both sides vanish
  } else {
    r.sandwich_slack = std::min(r.eig_min - r.sandwich_lower, r.sandwich_upper - r.eig_max);
    r.sandwich_ok = r.eig_min >= r.sandwich_lower * (1.0 - kSandwichRelTol) &&
                    r.eig_max <= r.sandwich_upper * (1.0 + kSandwichRelTol);
  }
  return r;
}

FannesAudenaert fannes_audenaert_check(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "fannes_audenaert_check: dimensions differ");
  }
  FannesAudenaert out;
  out.delta_h = std::abs(von_neumann_entropy(rho) - von_neumann_entropy(sigma));
  out.trace_distance = std::clamp(0.5 * trace_norm(rho.matrix() - sigma.matrix()), 0.0, 1.0);
  const double d = static_cast<double>(rho.dim());
  const double dim_term = rho.dim() > 1 ? out.trace_distance * std::log2(d - 1.0) : 0.0;
  out.bound = dim_term + binary_entropy(out.trace_distance);
  out.holds = out.bound >= out.delta_h - 1e-9;
  return out;
}

GentleOperator gentle_operator_check(const ComplexMatrix& lambda, const DensityMatrix& rho) {
  if (lambda.rows() != lambda.cols() || static_cast<std::size_t>(lambda.rows()) != rho.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "gentle_operator_check: operator and state dimensions differ");
  }
  if (!all_finite(lambda) || hermiticity_error(lambda) > 1e-9) {
    throw Error(ErrorCode::kNotAMeasurementOperator, "operator is not Hermitian");
  }
  const Spectrum s = hermitian_eig(0.5 * (lambda + lambda.adjoint()));
  const double top = s.eigenvalues.maxCoeff();
  const double bottom = s.eigenvalues.minCoeff();
  if (bottom < -1e-9 || top > 1.0 + 1e-9) {
    throw Error(ErrorCode::kNotAMeasurementOperator,
                "spectrum [" + std::to_string(bottom) + ", " + std::to_string(top) + "] outside [0, 1]");
  }
  RealVector roots(s.eigenvalues.size());
  for (Eigen::Index i = 0; i < roots.size(); ++i) roots(i) = std::sqrt(std::clamp(s.eigenvalues(i), 0.0, 1.0));
  const ComplexMatrix root = s.eigenvectors * roots.asDiagonal() * s.eigenvectors.adjoint();

  GentleOperator out;
  const double tr_rho = rho.matrix().trace().real();
  const double detected = (lambda * rho.matrix()).trace().real();
  out.eps = std::max(0.0, tr_rho - detected);
  out.disturbance = trace_norm(rho.matrix() - root * rho.matrix() * root);
  out.holds = out.disturbance <= 2.0 * std::sqrt(out.eps) + 1e-9;
  return out;
}

}  // namespace cohlab
