#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "bkvg/extensions.hpp"
#include "bkvg/family.hpp"
#include "bkvg/mesh.hpp"
#include "bkvg/tridiagonal.hpp"

namespace bkvg {

// M = hermitian + i * skew in the lumped-mass weighted basis.
struct DiscreteOperator {
  std::vector<double> nodes;
  std::vector<double> weights;
  SymTridiagonal hermitian;
  SymTridiagonal skew;

  std::size_t size() const { return hermitian.size(); }
  Eigen::MatrixXcd dense() const;
};

DiscreteOperator discretize(const FamilyInstance& inst, Sign sign, const MeshSpec& mesh);
DiscreteOperator from_parts(SymTridiagonal hermitian, SymTridiagonal skew);

// Largest eigenvalue of cos(theta) H - sin(theta) S.
double support_value(const DiscreteOperator& op, double theta);
double support_value_dense(const DiscreteOperator& op, double theta);

struct NumericalRangeReport {
  std::vector<std::pair<double, double>> support_samples;  // (theta, support value)
  double arg_inf = 0.0;
  double arg_sup = 0.0;
  bool extremal = false;
  double angle_tol = 0.02;
  bool support_convex = true;
  double lambda_min_hermitian = 0.0;
};

NumericalRangeReport numerical_range_sweep(const DiscreteOperator& op, int theta_steps, double angle_tol = 0.02,
                                           bool parallel = true);
// Dense-eigensolver reference for small operators.
NumericalRangeReport numerical_range_sweep_dense(const DiscreteOperator& op, int theta_steps,
                                                 double angle_tol = 0.02);

// cos(eps) g ||f/x||^2 - sin(eps) ||f'||^2 for normalized bumps
// f_n(s) = (1-s^2)^4 T_{4n}(s), s = 4x - 3, supported in [1/2, 1].
std::vector<double> kato_sector_witness(const FamilyInstance& inst, double epsilon, int n_terms);

MeshSpec default_rayleigh_mesh();
BorderedPencil rayleigh_pencil(const ExtensionSpec& spec, const MeshSpec& mesh);
double rayleigh_inf_on_extension(const ExtensionSpec& spec, const MeshSpec& mesh = default_rayleigh_mesh());

struct NonclosabilityWitness {
  std::vector<double> cutoffs;
  std::vector<double> norms;
  std::vector<double> form_values;
  double q = 0.0;
};
NonclosabilityWitness nonclosability_witness(const ExtensionSpec& spec, double mollification, int n_terms = 10);

// Smallest eigenvalue of the uniform FD Dirichlet Laplacian with n interior nodes.
double dirichlet_laplacian_ground_state(int n);

}  // namespace bkvg
