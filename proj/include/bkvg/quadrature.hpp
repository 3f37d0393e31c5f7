#pragma once

#include <functional>
#include <span>
#include <vector>

#include "bkvg/monomial.hpp"

namespace bkvg {

struct QuadratureConfig {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int nodes_per_panel = 16;  // one of 8, 16, 20, 32
  int max_subdivisions = 20000;
  int grading_levels = 60;
  int max_grading_levels = 1020;
};

struct QuadratureResult {
  cplx value;
  double error_estimate = 0.0;
  int subdivisions = 0;
};

using Integrand = std::function<cplx(double)>;

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1], increasing
  std::vector<double> weights;
};
const GaussRule& gauss_legendre(int n);

// Adaptive integral over (0,1). Geometric grading toward 0 unless the hint is
// a non-negative integer.
QuadratureResult integrate(const Integrand& f, double singular_exponent_hint, const QuadratureConfig& cfg = {});
// Same over (lo, hi); grading toward lo only when lo == 0.
QuadratureResult integrate(const Integrand& f, double lo, double hi, double singular_exponent_hint,
                           const QuadratureConfig& cfg = {});

// Fixed composite Gauss rule on consecutive cells [b_i, b_{i+1}].
cplx integrate_panels(const Integrand& f, std::span<const double> breakpoints, int nodes_per_panel = 8);

// Batch of independent integrals; parallel over items when `parallel`.
std::vector<QuadratureResult> integrate_batch(std::span<const Integrand> fs, std::span<const double> hints,
                                              const QuadratureConfig& cfg = {}, bool parallel = true);

// Integral of conj(f) g over (0,1), hint taken from the exponents.
QuadratureResult integrate_product(const MonomialSum& f, const MonomialSum& g, const QuadratureConfig& cfg = {});

// form_value recomputed by quadrature.
cplx oracle_form(const FormKind& kind, const MonomialSum& f, const MonomialSum& g, const QuadratureConfig& cfg = {});

}  // namespace bkvg
