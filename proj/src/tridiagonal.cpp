#include "bkvg/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bkvg/error.hpp"

namespace bkvg {

namespace {

constexpr double kPivotFloor = 1e-300;

std::pair<double, double> gershgorin(const SymTridiagonal& T) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  const std::size_t n = T.size();
  for (std::size_t i = 0; i < n; ++i) {
    double r = (i > 0 ? std::abs(T.off[i - 1]) : 0.0) + (i + 1 < n ? std::abs(T.off[i]) : 0.0);
    lo = std::min(lo, T.diag[i] - r);
    hi = std::max(hi, T.diag[i] + r);
  }
  return {lo, hi};
}

double bisect_index(const SymTridiagonal& T, std::size_t index) {
  if (T.size() == 0) throw Error(ErrorCode::EigenFailure, "empty matrix");
  auto [lo, hi] = gershgorin(T);
  double pad = 1e-12 * std::max({std::abs(lo), std::abs(hi), 1.0});
  lo -= pad;
  hi += pad;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (count_below(T, mid) > index) hi = mid;
    else lo = mid;
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(lo), std::abs(hi))) break;
  }
  double v = 0.5 * (lo + hi);
  if (!std::isfinite(v)) throw Error(ErrorCode::EigenFailure, "non-finite eigenvalue");
  return v;
}

// LDL^T pivots of T - lambda*M (both tridiagonal); returns negative count.
std::size_t ldl_pivots(const SymTridiagonal& K, const SymTridiagonal& M, double lambda, std::vector<double>& d,
                       std::vector<double>& e) {
  const std::size_t n = K.size();
  d.resize(n);
  e.resize(n > 0 ? n - 1 : 0);
  std::size_t neg = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double a = K.diag[i] - lambda * M.diag[i];
    if (i > 0) {
      e[i - 1] = K.off[i - 1] - lambda * M.off[i - 1];
      a -= e[i - 1] * e[i - 1] / d[i - 1];
    }
    if (std::abs(a) < kPivotFloor) a = -kPivotFloor;
    d[i] = a;
    if (a < 0.0) ++neg;
  }
  return neg;
}

// Solves (L D L^T) X = B in place.
void ldl_solve(const std::vector<double>& d, const std::vector<double>& e, Eigen::MatrixXcd& X) {
  const Eigen::Index n = X.rows();
  for (Eigen::Index i = 1; i < n; ++i) X.row(i) -= (e[i - 1] / d[i - 1]) * X.row(i - 1);
  for (Eigen::Index i = 0; i < n; ++i) X.row(i) /= d[i];
  for (Eigen::Index i = n - 2; i >= 0; --i) X.row(i) -= (e[i] / d[i]) * X.row(i + 1);
}

bool has_eigenvalue_below(const BorderedPencil& P, double lambda) {
  std::vector<double> d, e;
  if (ldl_pivots(P.k, P.m, lambda, d, e) > 0) return true;
  const Eigen::Index p = P.k_corner.rows();
  if (p == 0) return false;
  Eigen::MatrixXcd B = P.k_border - lambda * P.m_border;
  Eigen::MatrixXcd X = B;
  ldl_solve(d, e, X);
  Eigen::MatrixXcd S = (P.k_corner - lambda * P.m_corner) - B.adjoint() * X;
  S = 0.5 * (S + S.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(S, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() < 0.0;
}

}  // namespace

SymTridiagonal linear_combination(double a, const SymTridiagonal& A, double b, const SymTridiagonal& B) {
  SymTridiagonal T;
  T.diag.resize(A.size());
  T.off.resize(A.off.size());
  for (std::size_t i = 0; i < A.size(); ++i) T.diag[i] = a * A.diag[i] + b * B.diag[i];
  for (std::size_t i = 0; i < A.off.size(); ++i) T.off[i] = a * A.off[i] + b * B.off[i];
  return T;
}

Eigen::MatrixXd to_dense(const SymTridiagonal& T) {
  const Eigen::Index n = static_cast<Eigen::Index>(T.size());
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) D(i, i) = T.diag[i];
  for (Eigen::Index i = 0; i + 1 < n; ++i) D(i, i + 1) = D(i + 1, i) = T.off[i];
  return D;
}

std::size_t count_below(const SymTridiagonal& T, double x) {
  std::size_t neg = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < T.size(); ++i) {
    double e2 = i > 0 ? T.off[i - 1] * T.off[i - 1] : 0.0;
    q = T.diag[i] - x - (i > 0 ? e2 / q : 0.0);
    if (std::abs(q) < kPivotFloor) q = -kPivotFloor;
    if (q < 0.0) ++neg;
  }
  return neg;
}

double largest_eigenvalue(const SymTridiagonal& T) { return bisect_index(T, T.size() - 1); }

double smallest_eigenvalue(const SymTridiagonal& T) { return bisect_index(T, 0); }

std::vector<cplx> solve_tridiagonal(const std::vector<cplx>& sub, const std::vector<cplx>& diag,
                                    const std::vector<cplx>& sup, const std::vector<cplx>& rhs) {
  const std::size_t n = diag.size();
  std::vector<cplx> c(n), x(n);
  cplx beta = diag[0];
  if (std::abs(beta) == 0.0) throw Error(ErrorCode::SolveFailure, "zero pivot in tridiagonal solve");
  x[0] = rhs[0] / beta;
  for (std::size_t i = 1; i < n; ++i) {
    c[i - 1] = sup[i - 1] / beta;
    beta = diag[i] - sub[i - 1] * c[i - 1];
    if (std::abs(beta) <= 1e-14 * std::abs(diag[i]))
      throw Error(ErrorCode::SolveFailure, "vanishing pivot in tridiagonal solve");
    x[i] = (rhs[i] - sub[i - 1] * x[i - 1]) / beta;
  }
  for (std::size_t i = n - 1; i-- > 0;) x[i] -= c[i] * x[i + 1];
  return x;
}

double smallest_pencil_eigenvalue(const BorderedPencil& P) {
  double lo = -1.0, hi = 1.0;
  for (int it = 0; it < 200 && has_eigenvalue_below(P, lo); ++it) lo *= 2.0;
  for (int it = 0; it < 200 && !has_eigenvalue_below(P, hi); ++it) hi *= 2.0;
  if (has_eigenvalue_below(P, lo) || !has_eigenvalue_below(P, hi))
    throw Error(ErrorCode::EigenFailure, "could not bracket the smallest pencil eigenvalue");
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (has_eigenvalue_below(P, mid)) hi = mid;
    else lo = mid;
    if (hi - lo <= 1e-13 * std::max({std::abs(lo), std::abs(hi), 1e-8})) break;
  }
  return 0.5 * (lo + hi);
}

double smallest_pencil_eigenvalue_dense(const BorderedPencil& P) {
  const Eigen::Index n = static_cast<Eigen::Index>(P.k.size()), p = P.k_corner.rows(), N = n + p;
  Eigen::MatrixXcd K(N, N), M(N, N);
  K.setZero();
  M.setZero();
  K.topLeftCorner(n, n) = to_dense(P.k).cast<cplx>();
  M.topLeftCorner(n, n) = to_dense(P.m).cast<cplx>();
  if (p > 0) {
    K.topRightCorner(n, p) = P.k_border;
    K.bottomLeftCorner(p, n) = P.k_border.adjoint();
    K.bottomRightCorner(p, p) = P.k_corner;
    M.topRightCorner(n, p) = P.m_border;
    M.bottomLeftCorner(p, n) = P.m_border.adjoint();
    M.bottomRightCorner(p, p) = P.m_corner;
  }
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXcd> es(K, M, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::EigenFailure, "dense generalized eigensolver failed");
  return es.eigenvalues().minCoeff();
}

}  // namespace bkvg
