#include "bkvg/family.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "bkvg/error.hpp"
#include "bkvg/tridiagonal.hpp"

namespace bkvg {

namespace {

const cplx I(0.0, 1.0);

MonomialSum second_derivative(const MonomialSum& f) { return differentiate(differentiate(f)); }

MonomialSum friedrichs_pair(const FamilyInstance& inst, cplx kernel_exponent) {
  return MonomialSum{{1.0, kernel_exponent + 2.0}, {-1.0, inst.omega_plus}};
}

// Coefficients (a, b) of  x^2 T u = a u - b x^2 u''.
std::pair<cplx, cplx> euler_coefficients(const FamilyInstance& inst, Sign sign) {
  const double g = inst.gamma;
  const bool plus = sign == Sign::Plus;
  if (inst.family == Family::HardyImaginary) return {plus ? -I * g : I * g, 1.0};
  return {g, plus ? I : -I};
}

GridFunction solve_euler(cplx a, cplx b, const MonomialSum& g, const MeshSpec& mesh) {
  if (mesh.layout != MeshLayout::LogUniform)
    throw Error(ErrorCode::InvalidArgument, "the BVP oracle needs a log-uniform mesh");
  mesh.validate();
  if (!g.is_square_integrable()) throw Error(ErrorCode::DomainViolation, "right-hand side not square integrable");
  const std::size_t n = static_cast<std::size_t>(mesh.node_count);
  const double h = -std::log(mesh.grading_ratio);
  const cplx lambda = 0.25 + a / b;
  std::vector<cplx> r(n);
  for (std::size_t j = 0; j < n; ++j) {
    double x = std::exp(-h * double(j));
    r[j] = -std::pow(x, 1.5) * g(x) / b;
  }
  const double h12 = h * h / 12.0;
  const cplx off = 1.0 - h12 * lambda, dia = -(2.0 + 10.0 * h12 * lambda);
  const std::size_t m = n - 2;
  std::vector<cplx> sub(m - 1, off), sup(m - 1, off), diag(m, dia), rhs(m);
  for (std::size_t k = 0; k < m; ++k) {
    std::size_t j = k + 1;
    rhs[k] = h12 * (r[j - 1] + 10.0 * r[j] + r[j + 1]);
  }
  std::vector<cplx> inner = solve_tridiagonal(sub, diag, sup, rhs);
  std::vector<cplx> w(n, 0.0);
  std::copy(inner.begin(), inner.end(), w.begin() + 1);

  double res = 0.0, scale = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    std::size_t j = k + 1;
    cplx lhs = off * w[j - 1] + dia * w[j] + off * w[j + 1];
    res = std::max(res, std::abs(lhs - rhs[k]));
    scale = std::max(scale, std::abs(rhs[k]) + std::abs(dia * w[j]));
  }
  double rel = scale > 0.0 ? res / scale : 0.0;
  if (!std::isfinite(rel) || rel > 1e-8) throw Error(ErrorCode::SolveFailure, "BVP residual too large");
  return GridFunction(h, std::move(w), rel);
}

}  // namespace

std::string family_name(Family f) { return f == Family::HardyImaginary ? "HardyImaginary" : "HardyReal"; }
std::string family_letter(Family f) { return f == Family::HardyImaginary ? "A" : "C"; }
std::string regime_name(Regime r) { return r == Regime::OneDimKernel ? "one_dim_kernel" : "two_dim_kernel"; }

FamilyInstance instantiate(Family family, double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw Error(ErrorCode::InvalidGamma, "gamma must be a positive number");
  FamilyInstance inst;
  inst.family = family;
  inst.gamma = gamma;
  cplx s = std::sqrt(cplx(1.0, 4.0 * gamma));
  inst.omega_plus = 0.5 * (1.0 + s);
  inst.omega_minus = 0.5 * (1.0 - s);
  inst.regime = gamma >= std::sqrt(3.0) ? Regime::OneDimKernel : Regime::TwoDimKernel;
  return inst;
}

KernelBasis kernel_basis(const FamilyInstance& inst) {
  KernelBasis k;
  k.minus_kernel.push_back(MonomialSum::power(inst.omega_plus));
  k.plus_kernel.push_back(MonomialSum::power(std::conj(inst.omega_plus)));
  if (inst.regime == Regime::TwoDimKernel) {
    k.minus_kernel.push_back(MonomialSum::power(inst.omega_minus));
    k.plus_kernel.push_back(MonomialSum::power(std::conj(inst.omega_minus)));
  }
  return k;
}

FormKind real_part_form(const FamilyInstance& inst) {
  return inst.family == Family::HardyImaginary ? FormKind::krein() : FormKind::hardy(inst.gamma);
}

MonomialSum apply_formal_maximal(const FamilyInstance& inst, Sign sign, const MonomialSum& f) {
  const double g = inst.gamma;
  const double s = sign == Sign::Plus ? -1.0 : 1.0;
  MonomialSum potential = f.shifted(-2.0);
  MonomialSum d2 = second_derivative(f);
  if (inst.family == Family::HardyImaginary) return potential * (s * I * g) - d2;
  return d2 * (s * I) + potential * cplx(g);
}

cplx minus_symbol(const FamilyInstance& inst, cplx a) {
  return apply_formal_maximal(inst, Sign::Minus, MonomialSum::power(a)).coefficient_of(a - 2.0);
}

MonomialSum friedrichs_inverse_kernel(const FamilyInstance& inst, const MonomialSum& k) {
  std::vector<cplx> allowed{std::conj(inst.omega_plus)};
  if (inst.regime == Regime::TwoDimKernel) allowed.push_back(std::conj(inst.omega_minus));
  MonomialSum u;
  for (const Term& t : k.terms()) {
    auto it = std::find_if(allowed.begin(), allowed.end(), [&](cplx e) {
      return std::abs(e - t.exponent) <= MonomialSum::kExponentMergeTol;
    });
    if (it == allowed.end()) throw Error(ErrorCode::NotInKernel, "term " + MonomialSum{t}.to_string() + " outside ker");
    u += friedrichs_pair(inst, *it) * (t.coefficient / minus_symbol(inst, *it + 2.0));
  }
  return u;
}

ChiVector chi_vector(const FamilyInstance& inst) {
  if (inst.regime != Regime::TwoDimKernel) throw Error(ErrorCode::WrongRegime, "chi needs the two-dimensional kernel");
  const cplx wp = inst.omega_plus, bp = std::conj(inst.omega_plus), bm = std::conj(inst.omega_minus);
  ChiVector out;
  if (inst.family == Family::HardyImaginary) {
    out.chi = friedrichs_pair(inst, bp) * (2.0 + bm - wp) + friedrichs_pair(inst, bm) * (wp - bp - 2.0);
    out.companion = apply_formal_maximal(inst, Sign::Minus, out.chi);
    return out;
  }
  // companion b_- x^{bp} - b_+ x^{bm} with b_s = [x^{w+}, x^{conj w_s}]
  const FormKind kind = real_part_form(inst);
  const MonomialSum v = MonomialSum::power(wp);
  auto br = [&](cplx e) {
    MonomialSum g = MonomialSum::power(e);
    return l2_inner(v, g) - 2.0 * form_value(kind, v, friedrichs_inverse_kernel(inst, g));
  };
  out.companion = MonomialSum{{br(bm), bp}, {-br(bp), bm}};
  out.chi = friedrichs_inverse_kernel(inst, out.companion);
  return out;
}

DomainDecomposition domain_decomposition(const FamilyInstance& inst, int core_samples) {
  DomainDecomposition d;
  KernelBasis k = kernel_basis(inst);
  const MonomialSum bump{{1.0, 2.0}, {-2.0, 3.0}, {1.0, 4.0}};  // x^2 (1-x)^2
  for (int j = 0; j < core_samples; ++j) d.core.push_back(bump.shifted(double(j)));
  for (const MonomialSum& p : k.plus_kernel) d.friedrichs_images.push_back(friedrichs_inverse_kernel(inst, p));
  d.kernel = k.minus_kernel;
  return d;
}

GridFunction::GridFunction(double step, std::vector<cplx> w, double residual)
    : h_(step), w_(std::move(w)), residual_(residual) {}

double GridFunction::x_min() const { return std::exp(-h_ * double(w_.size() - 1)); }

std::vector<double> GridFunction::nodes() const {
  std::vector<double> x(w_.size());
  for (std::size_t j = 0; j < w_.size(); ++j) x[w_.size() - 1 - j] = std::exp(-h_ * double(j));
  return x;
}

void GridFunction::stencil(double x, double& t, std::size_t& j0, double* w, double* dw) const {
  constexpr int P = 8;
  t = -std::log(x);
  double s = t / h_;
  long base = static_cast<long>(std::floor(s)) - P / 2 + 1;
  base = std::clamp(base, 0L, static_cast<long>(w_.size()) - P);
  j0 = static_cast<std::size_t>(base);
  double tau = s - double(base);
  for (int k = 0; k < P; ++k) {
    double l = 1.0, dl = 0.0;
    for (int m = 0; m < P; ++m) {
      if (m == k) continue;
      l *= (tau - m) / double(k - m);
      double prod = 1.0 / double(k - m);
      for (int q = 0; q < P; ++q)
        if (q != k && q != m) prod *= (tau - q) / double(k - q);
      dl += prod;
    }
    w[k] = l;
    dw[k] = dl / h_;
  }
}

cplx GridFunction::operator()(double x) const {
  if (!(x > 0.0 && x <= 1.0)) throw Error(ErrorCode::InvalidArgument, "grid function evaluated outside (0,1]");
  if (x < x_min()) return 0.0;
  double t, w[8], dw[8];
  std::size_t j0;
  stencil(x, t, j0, w, dw);
  cplx v = 0.0;
  for (int k = 0; k < 8; ++k) v += w[k] * w_[j0 + k];
  return std::sqrt(x) * v;
}

cplx GridFunction::derivative(double x) const {
  if (!(x > 0.0 && x <= 1.0)) throw Error(ErrorCode::InvalidArgument, "grid function evaluated outside (0,1]");
  if (x < x_min()) return 0.0;
  double t, w[8], dw[8];
  std::size_t j0;
  stencil(x, t, j0, w, dw);
  cplx v = 0.0, vt = 0.0;
  for (int k = 0; k < 8; ++k) {
    v += w[k] * w_[j0 + k];
    vt += dw[k] * w_[j0 + k];
  }
  return -(vt - 0.5 * v) / std::sqrt(x);
}

GridFunction bvp_solve_oracle(const FamilyInstance& inst, Sign sign, const MonomialSum& g, const MeshSpec& mesh) {
  auto [a, b] = euler_coefficients(inst, sign);
  return solve_euler(a, b, g, mesh);
}

GridFunction bvp_solve_dirichlet_laplacian(const MonomialSum& g, const MeshSpec& mesh) {
  return solve_euler(0.0, 1.0, g, mesh);
}

MonomialSum dirichlet_laplacian_inverse(const MonomialSum& g) {
  std::vector<Term> t;
  for (const Term& x : g.terms()) {
    if (x.exponent.real() <= -1.0)
      throw Error(ErrorCode::InvalidArgument, "Dirichlet inverse needs exponents with Re a > -1");
    t.push_back({-x.coefficient / ((x.exponent + 1.0) * (x.exponent + 2.0)), x.exponent + 2.0});
  }
  MonomialSum particular(std::move(t));
  return particular - MonomialSum::power(1.0, boundary_trace(particular).at_one);
}

}  // namespace bkvg
