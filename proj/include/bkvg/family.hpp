#pragma once

#include <string>
#include <vector>

#include "bkvg/mesh.hpp"
#include "bkvg/monomial.hpp"

namespace bkvg {

enum class Family { HardyImaginary, HardyReal };
enum class Regime { OneDimKernel, TwoDimKernel };
enum class Sign { Plus, Minus };

std::string family_name(Family f);    // "HardyImaginary" / "HardyReal"
std::string family_letter(Family f);  // "A" / "C"
std::string regime_name(Regime r);    // "one_dim_kernel" / "two_dim_kernel"

struct FamilyInstance {
  Family family = Family::HardyImaginary;
  double gamma = 1.0;
  cplx omega_plus, omega_minus;
  Regime regime = Regime::OneDimKernel;
};

FamilyInstance instantiate(Family family, double gamma);

struct KernelBasis {
  std::vector<MonomialSum> minus_kernel;  // ker of the minus-sign maximal operator
  std::vector<MonomialSum> plus_kernel;
};
KernelBasis kernel_basis(const FamilyInstance& inst);

// Form of the real part: KreinLaplacian (A) or HardyMultiplication(gamma) (C).
FormKind real_part_form(const FamilyInstance& inst);

// Formal action of the maximal operators:
//   A: minus  i g x^-2 f - f'',  plus  -i g x^-2 f - f''
//   C: minus  i f'' + g x^-2 f,  plus  -i f'' + g x^-2 f
MonomialSum apply_formal_maximal(const FamilyInstance& inst, Sign sign, const MonomialSum& f);

// Coefficient s(a) with  T_minus x^a = s(a) x^{a-2}.
cplx minus_symbol(const FamilyInstance& inst, cplx a);

// u in the Friedrichs domain with T_minus u = k, for k in span(plus_kernel).
MonomialSum friedrichs_inverse_kernel(const FamilyInstance& inst, const MonomialSum& k);

struct ChiVector {
  MonomialSum chi;        // Friedrichs-domain vector
  MonomialSum companion;  // its image under the Friedrichs extension, in ker T_plus
};
ChiVector chi_vector(const FamilyInstance& inst);

// Three component sets of the maximal domain: smooth core samples,
// Friedrichs images of the plus kernel, minus kernel.
struct DomainDecomposition {
  std::vector<MonomialSum> core;
  std::vector<MonomialSum> friedrichs_images;
  std::vector<MonomialSum> kernel;
};
DomainDecomposition domain_decomposition(const FamilyInstance& inst, int core_samples = 4);

// Solution of an Euler-type Dirichlet problem on a log-uniform mesh,
// interpolated locally in t = -ln x.
class GridFunction {
 public:
  GridFunction() = default;
  GridFunction(double step, std::vector<cplx> w, double residual);

  cplx operator()(double x) const;
  cplx derivative(double x) const;
  // Mesh points, increasing from x_min to 1.
  std::vector<double> nodes() const;
  double residual() const { return residual_; }
  double x_min() const;

 private:
  void stencil(double x, double& t, std::size_t& j0, double* w, double* dw) const;
  double h_ = 0.0;
  std::vector<cplx> w_;  // w_[j] at t = j h, u = x^{1/2} w
  double residual_ = 0.0;
};

// Solves T_sign u = g with u = 0 at both ends of the truncated mesh.
GridFunction bvp_solve_oracle(const FamilyInstance& inst, Sign sign, const MonomialSum& g,
                              const MeshSpec& mesh = default_bvp_mesh());
// Solves -u'' = g, u(0) = u(1) = 0.
GridFunction bvp_solve_dirichlet_laplacian(const MonomialSum& g, const MeshSpec& mesh = default_bvp_mesh());

// Exact inverse of the Dirichlet Laplacian on a polynomial right-hand side.
MonomialSum dirichlet_laplacian_inverse(const MonomialSum& polynomial);

}  // namespace bkvg
