#pragma once

#include <string>
#include <vector>

#include "bkvg/family.hpp"

namespace bkvg {

struct BracketContext {
  FamilyInstance instance;
  FormKind krein_kind;

  explicit BracketContext(const FamilyInstance& inst);
  MonomialSum friedrichs_inverse(const MonomialSum& g) const;
};

// [f, g] = <f, g> - 2 K(f, A_F^{-1} g),  g in the plus kernel.
cplx bracket(const BracketContext& ctx, const MonomialSum& f, const MonomialSum& g);

// Hermitian part of <v1, T v2> minus the real-part form; q_form(v) = Re q(v, v).
cplx q_sesquilinear(const BracketContext& ctx, const MonomialSum& v1, const MonomialSum& v2);
double q_form(const BracketContext& ctx, const MonomialSum& v);

cplx sigma(const FamilyInstance& inst);
double tau(const FamilyInstance& inst);
cplx mu(const FamilyInstance& inst);
double nu(const FamilyInstance& inst);

// sigma/mu and tau/nu by family.
cplx coupling_closed_form(const FamilyInstance& inst);
double krein_norm_closed_form(const FamilyInstance& inst);

// Bracket with the Friedrichs inverse replaced by the BVP oracle and all
// integrals done by quadrature.
cplx bracket_via_oracle(const FamilyInstance& inst, const MonomialSum& f, const MonomialSum& g,
                        const MeshSpec& mesh = default_bvp_mesh());

enum class Certification { ClosedForm, Oracle, BothAgree };
std::string certification_name(Certification c);

struct CertifiedValue {
  cplx value;
  cplx closed_form;
  cplx oracle;
  double relative_gap = 0.0;
  Certification status = Certification::ClosedForm;
  bool flagged = false;
};

struct CertifiedConstants {
  CertifiedValue coupling;    // sigma or mu
  CertifiedValue krein_norm;  // tau or nu
  bool certified = false;
  std::vector<std::string> notes;
};

struct CertificationConfig {
  double relative_tol = 1e-6;
  double imaginary_tol = 1e-9;
  MeshSpec mesh = default_bvp_mesh();
};

CertifiedConstants certify_constants(const FamilyInstance& inst, const CertificationConfig& cfg = {});

struct CertifiedFamily {
  FamilyInstance instance;
  CertifiedConstants constants;
};
CertifiedFamily certify(const FamilyInstance& inst, const CertificationConfig& cfg = {});

}  // namespace bkvg
