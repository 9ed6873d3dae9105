#include "cohlab/numkernel.hpp"

#include "cohlab/error.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

namespace cohlab {

namespace {

std::atomic<std::size_t> g_dimension_cap{kDefaultDimensionCap};

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string(what) + ": expected a nonempty square matrix, got " +
                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

// Rotates a column so its first largest-modulus entry is real and positive.
void fix_phase(Eigen::Ref<ComplexVector> v) {
  Eigen::Index best = 0;
  double best_abs = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v(i));
    if (a > best_abs + 1e-12) {
      best_abs = a;
      best = i;
    }
  }
  if (best_abs > 0.0) v *= std::conj(v(best)) / best_abs;
}

bool abs_lex_less(const ComplexMatrix& vecs, Eigen::Index a, Eigen::Index b) {
  for (Eigen::Index r = 0; r < vecs.rows(); ++r) {
    const double x = std::abs(vecs(r, a));
    const double y = std::abs(vecs(r, b));
    if (x != y) return x < y;
  }
  return false;
}

}  // namespace

std::size_t dimension_cap() { return g_dimension_cap.load(std::memory_order_relaxed); }

void set_dimension_cap(std::size_t cap) {
  if (cap == 0) throw Error(ErrorCode::kParamOutOfRange, "dimension cap must be positive");
  g_dimension_cap.store(cap, std::memory_order_relaxed);
}

void check_dimension(std::size_t dim, const char* what) {
  if (dim > dimension_cap()) {
    throw Error(ErrorCode::kDimensionOverflow,
                std::string(what) + ": dimension " + std::to_string(dim) + " exceeds cap " +
                    std::to_string(dimension_cap()));
  }
}

bool all_finite(const ComplexMatrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    }
  }
  return true;
}

double max_abs_entry(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double hermiticity_error(const ComplexMatrix& m) {
  require_square(m, "hermiticity_error");
  return max_abs_entry(m - m.adjoint());
}

double unitarity_error(const ComplexMatrix& m) {
  require_square(m, "unitarity_error");
  return max_abs_entry(m.adjoint() * m - ComplexMatrix::Identity(m.rows(), m.cols()));
}

Spectrum hermitian_eig(const ComplexMatrix& m) {
  require_square(m, "hermitian_eig");
  if (!all_finite(m)) throw Error(ErrorCode::kNumericalFailure, "hermitian_eig: non-finite entry");
  const double herr = hermiticity_error(m);
  if (herr > kHermitianTol) {
    throw Error(ErrorCode::kNotHermitian,
                "hermitian_eig: max |m - m^dagger| = " + std::to_string(herr));
  }

  const ComplexMatrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::kNumericalFailure, "hermitian_eig: eigensolver did not converge");
  }

  const Eigen::Index d = sym.rows();
  ComplexMatrix vecs = solver.eigenvectors();
  for (Eigen::Index j = 0; j < d; ++j) fix_phase(vecs.col(j));
  const RealVector& vals = solver.eigenvalues();

  std::vector<Eigen::Index> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return vals(a) > vals(b); });

  // Ties: runs of numerically equal eigenvalues, ordered by eigenvector moduli.
  const double tie_tol = 1e-12 * std::max(1.0, vals.cwiseAbs().maxCoeff());
  for (std::size_t start = 0; start < order.size();) {
    std::size_t stop = start + 1;
    while (stop < order.size() && vals(order[start]) - vals(order[stop]) <= tie_tol) ++stop;
    if (stop - start > 1) {
      std::stable_sort(order.begin() + static_cast<std::ptrdiff_t>(start),
                       order.begin() + static_cast<std::ptrdiff_t>(stop),
                       [&](Eigen::Index a, Eigen::Index b) { return abs_lex_less(vecs, b, a); });
    }
    start = stop;
  }

  Spectrum out;
  out.eigenvalues.resize(d);
  out.eigenvectors.resize(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    out.eigenvalues(k) = vals(order[static_cast<std::size_t>(k)]);
    out.eigenvectors.col(k) = vecs.col(order[static_cast<std::size_t>(k)]);
  }
  return out;
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  const auto rows = static_cast<std::size_t>(a.rows()) * static_cast<std::size_t>(b.rows());
  const auto cols = static_cast<std::size_t>(a.cols()) * static_cast<std::size_t>(b.cols());
  check_dimension(rows, "tensor");
  if (cols > 1) check_dimension(cols, "tensor");

  ComplexMatrix out(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix tensor_power(const ComplexMatrix& a, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::kParamOutOfRange, "tensor_power: n must be >= 1");
  ComplexMatrix out = a;
  for (std::size_t k = 1; k < n; ++k) out = tensor(out, a);
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, BipartiteDims dims, Keep keep) {
  require_square(m, "partial_trace");
  const auto da = static_cast<Eigen::Index>(dims.first);
  const auto db = static_cast<Eigen::Index>(dims.second);
  if (da < 1 || db < 1 || m.rows() != da * db) {
    throw Error(ErrorCode::kDimensionMismatch,
                "partial_trace: matrix of dimension " + std::to_string(m.rows()) +
                    " is not " + std::to_string(da) + "x" + std::to_string(db));
  }

  if (keep == Keep::kFirst) {
    ComplexMatrix out = ComplexMatrix::Zero(da, da);
    for (Eigen::Index i = 0; i < da; ++i) {
      for (Eigen::Index j = 0; j < da; ++j) {
        Complex s = 0.0;
        for (Eigen::Index k = 0; k < db; ++k) s += m(i * db + k, j * db + k);
        out(i, j) = s;
      }
    }
    return out;
  }

  ComplexMatrix out = ComplexMatrix::Zero(db, db);
  for (Eigen::Index i = 0; i < da; ++i) out += m.block(i * db, i * db, db, db);
  return out;
}

double trace_norm(const ComplexMatrix& m) {
  require_square(m, "trace_norm");
  if (!all_finite(m)) throw Error(ErrorCode::kNumericalFailure, "trace_norm: non-finite entry");
  if (hermiticity_error(m) <= kHermitianTol) {
    return hermitian_eig(m).eigenvalues.cwiseAbs().sum();
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  if (svd.info() != Eigen::Success) {
    throw Error(ErrorCode::kNumericalFailure, "trace_norm: SVD did not converge");
  }
  return svd.singularValues().sum();
}

ComplexMatrix psd_sqrt(const ComplexMatrix& m) {
  const Spectrum s = hermitian_eig(m);
  RealVector roots(s.eigenvalues.size());
  for (Eigen::Index i = 0; i < roots.size(); ++i) {
    const double v = s.eigenvalues(i);
    if (v < -1e-9) {
      throw Error(ErrorCode::kNumericalFailure,
                  "psd_sqrt: negative eigenvalue " + std::to_string(v));
    }
    roots(i) = std::sqrt(std::max(v, 0.0));
  }
  return s.eigenvectors * roots.asDiagonal() * s.eigenvectors.adjoint();
}

double shannon_entropy_bits(std::span<const double> probs) {
  double h = 0.0;
  for (double p : probs) {
    if (p < -kEigenClampTol || !std::isfinite(p)) {
      throw Error(ErrorCode::kNumericalFailure,
                  "entropy: probability " + std::to_string(p) + " is not a valid weight");
    }
    if (p > 0.0) h -= p * std::log2(p);
  }
  return std::max(h, 0.0);
}

}  // namespace cohlab
