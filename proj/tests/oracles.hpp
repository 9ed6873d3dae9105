#pragma once

// Reference computations for the tests, written directly from definitions
// with loops and a general (non-Hermitian) eigensolver so they share no code
// path with the library.

#include "cohlab/numkernel.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

namespace oracle {

using cohlab::Complex;
using cohlab::ComplexMatrix;

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

// Tr_B of an (da*db) square matrix.
inline ComplexMatrix trace_second(const ComplexMatrix& m, Eigen::Index da, Eigen::Index db) {
  ComplexMatrix out = ComplexMatrix::Zero(da, da);
  for (Eigen::Index i = 0; i < da; ++i)
    for (Eigen::Index j = 0; j < da; ++j)
      for (Eigen::Index k = 0; k < db; ++k) out(i, j) += m(i * db + k, j * db + k);
  return out;
}

inline ComplexMatrix trace_first(const ComplexMatrix& m, Eigen::Index da, Eigen::Index db) {
  ComplexMatrix out = ComplexMatrix::Zero(db, db);
  for (Eigen::Index i = 0; i < db; ++i)
    for (Eigen::Index j = 0; j < db; ++j)
      for (Eigen::Index k = 0; k < da; ++k) out(i, j) += m(k * db + i, k * db + j);
  return out;
}

// Real parts of the eigenvalues from the general complex eigensolver.
inline std::vector<double> eigenvalues(const ComplexMatrix& m) {
  Eigen::ComplexEigenSolver<ComplexMatrix> es(m, false);
  std::vector<double> out;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) out.push_back(es.eigenvalues()(i).real());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

inline double entropy_bits(const ComplexMatrix& rho) {
  double h = 0.0;
  for (double x : eigenvalues(rho))
    if (x > 1e-14) h -= x * std::log2(x);
  return h;
}

inline double trace_norm(const ComplexMatrix& m) {
  double s = 0.0;
  for (double x : eigenvalues(m)) s += std::abs(x);
  return s;
}

inline double shannon(const std::vector<double>& p) {
  double h = 0.0;
  for (double x : p)
    if (x > 0.0) h -= x * std::log2(x);
  return h;
}

inline double h2(double x) { return shannon({x, 1.0 - x}); }

// Every length-n sequence over {0..d-1} with |sample entropy - H| <= delta.
struct BruteTypical {
  std::vector<std::uint64_t> members;
  double mass = 0.0;
};

inline BruteTypical brute_typical(const std::vector<double>& p, std::size_t n, double delta) {
  const double h = shannon(p);
  const std::size_t d = p.size();
  std::uint64_t total = 1;
  for (std::size_t k = 0; k < n; ++k) total *= d;
  BruteTypical out;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t rest = idx;
    double logp = 0.0;
    double prob = 1.0;
    bool zero = false;
    for (std::size_t k = 0; k < n; ++k) {
      const double px = p[rest % d];
      rest /= d;
      if (px == 0.0) zero = true;
      prob *= px;
      logp += zero ? 0.0 : std::log2(px);
    }
    if (zero) continue;
    if (std::abs(-logp / static_cast<double>(n) - h) <= delta + 1e-12) {
      out.members.push_back(idx);
      out.mass += prob;
    }
  }
  return out;
}

// Entropy exchange from the Kraus-overlap definition W_ij = sqrt(p_i p_j) Tr(U_i rho U_j^dagger).
inline double exchange_by_definition(const std::vector<double>& p, const std::vector<ComplexMatrix>& us,
                                     const ComplexMatrix& rho) {
  const auto n = static_cast<Eigen::Index>(us.size());
  ComplexMatrix w(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      w(i, j) = std::sqrt(p[i] * p[j]) * (us[i] * rho * us[j].adjoint()).trace();
  return entropy_bits(w);
}

}  // namespace oracle
