#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bkvg/bracket.hpp"

namespace bkvg {

// domain_dim 0: Friedrichs extension.  domain_dim 1: D x^{w+} = d x^{conj w+}.
struct ExtensionSpec {
  CertifiedFamily family;
  int domain_dim = 0;
  cplx d = 0.0;

  static ExtensionSpec friedrichs(const CertifiedFamily& cf);
  static ExtensionSpec with_coefficient(const CertifiedFamily& cf, cplx d);
  const FamilyInstance& instance() const { return family.instance; }
};

// d with Re(d * coupling) = krein_norm + margin and Im(d * coupling) = im.
cplx d_for_margin(const CertifiedFamily& cf, double margin, double im = 0.0);

struct HermitianMatrix {
  Eigen::MatrixXcd entries;
  int order() const { return static_cast<int>(entries.rows()); }
  std::vector<double> eigenvalues() const;
};

struct LowerBound {
  double lo = 0.0, hi = 0.0;  // alpha delta / (1 + delta), alpha delta
  double alpha = 0.0;          // pi^2
  double alpha_discrete = 0.0;
  bool alpha_certified = false;
  double delta = 0.0;
  // Two-sided bound that also holds when delta is not small against alpha:
  // alpha delta / (alpha + delta) <= inf <= delta.
  double harmonic_lo = 0.0, harmonic_hi = 0.0;
};

struct Closability {
  bool closable = false;
  std::string reason;
  double tolerance = 0.0;
};

struct AccretivityReport {
  cplx sigma_or_mu;
  double tau_or_nu = 0.0;
  double margin = 0.0;  // +inf for the Friedrichs spec
  bool accretive = false;
  std::optional<Closability> closability;
  std::optional<HermitianMatrix> b_matrix;
  std::optional<LowerBound> lower_bound;
  std::vector<std::string> notes;
};

constexpr double kClosabilityTol = 1e-9;

double margin(const ExtensionSpec& spec);
AccretivityReport is_accretive(const ExtensionSpec& spec);
Closability is_closable(const ExtensionSpec& spec);
MonomialSum projection_P(const FamilyInstance& inst, const MonomialSum& f);
HermitianMatrix b_matrix(const ExtensionSpec& spec);

struct VdDescription {
  std::vector<MonomialSum> form_domain_vectors;
  std::vector<MonomialSum> operator_domain_vectors;
  HermitianMatrix b;
  double oracle_max_error = 0.0;
  std::vector<std::string> warnings;
};
VdDescription v_d_description(const ExtensionSpec& spec);

enum class Order { GreaterEqual, LessEqual, Equal, Incomparable };
std::string order_name(Order o);
Order compare(const ExtensionSpec& s1, const ExtensionSpec& s2);

LowerBound lower_bound_sandwich(const ExtensionSpec& spec);

// is_accretive plus closability, B-matrix and lower bound where they apply.
AccretivityReport analyze_extension(const ExtensionSpec& spec);

// A_F^{-1}(d x^{conj w+}) + x^{w+}  (dim 1 only).
MonomialSum extension_vector(const ExtensionSpec& spec);
// Vectors spanning the extension domain modulo the core.
std::vector<MonomialSum> extension_domain_vectors(const ExtensionSpec& spec);

struct SamplingResult {
  std::size_t count = 0;
  double min_value = 0.0;   // smallest Re<psi, T psi>
  double min_scaled = 0.0;  // smallest Re<psi, T psi> / scale
  double max_closed_form_gap = 0.0;
  bool all_nonnegative = false;  // every value >= -1e-8 scale
};
SamplingResult accretivity_sampling(const ExtensionSpec& spec, std::size_t count, std::uint64_t seed,
                                    bool parallel = true);

// psi = P v + (v - P v)(1 - phi) with a C^2 cutoff phi equal to 1 on
// [2a, 1 - 2a] and 0 near the endpoints.
struct CutoffWitness {
  double cutoff = 0.0;
  double value = 0.0;  // Re<psi, T psi> by quadrature
  double norm = 0.0;   // ||psi - P v||
};
CutoffWitness cutoff_witness(const ExtensionSpec& spec, double cutoff);

struct NegativeWitness {
  std::vector<CutoffWitness> sequence;
  double q = 0.0;
  bool found = false;
};
NegativeWitness negative_margin_witness(const ExtensionSpec& spec, int max_halvings = 40);

}  // namespace bkvg
