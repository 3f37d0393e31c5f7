#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <vector>

namespace bkvg {

using cplx = std::complex<double>;

struct SymTridiagonal {
  std::vector<double> diag;
  std::vector<double> off;  // off[i] couples i and i+1
  std::size_t size() const { return diag.size(); }
};

SymTridiagonal linear_combination(double a, const SymTridiagonal& A, double b, const SymTridiagonal& B);
Eigen::MatrixXd to_dense(const SymTridiagonal& T);

// Number of eigenvalues strictly below x (Sturm sequence).
std::size_t count_below(const SymTridiagonal& T, double x);
double largest_eigenvalue(const SymTridiagonal& T);
double smallest_eigenvalue(const SymTridiagonal& T);

// Thomas sweep for a general complex tridiagonal system; sub[i] couples i+1 to i,
// sup[i] couples i to i+1.
std::vector<cplx> solve_tridiagonal(const std::vector<cplx>& sub, const std::vector<cplx>& diag,
                                    const std::vector<cplx>& sup, const std::vector<cplx>& rhs);

// Hermitian pencil (K, M) of the block form [[T, B], [B^H, C]] with a real
// symmetric tridiagonal leading block and a small dense border.
struct BorderedPencil {
  SymTridiagonal k, m;
  Eigen::MatrixXcd k_border, m_border;  // n x p
  Eigen::MatrixXcd k_corner, m_corner;  // p x p
};

// Smallest generalized eigenvalue by inertia bisection (M positive definite).
double smallest_pencil_eigenvalue(const BorderedPencil& P);
double smallest_pencil_eigenvalue_dense(const BorderedPencil& P);

}  // namespace bkvg
