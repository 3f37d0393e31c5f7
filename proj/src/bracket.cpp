#include "bkvg/bracket.hpp"

#include <cmath>

#include "bkvg/error.hpp"
#include "bkvg/quadrature.hpp"

namespace bkvg {

namespace {

const cplx I(0.0, 1.0);

void require_family(const FamilyInstance& inst, Family f, const char* what) {
  if (inst.family != f) throw Error(ErrorCode::WrongFamily, std::string(what) + " needs family " + family_name(f));
}

CertifiedValue compare_values(cplx closed, cplx oracle, const CertificationConfig& cfg) {
  CertifiedValue v;
  v.closed_form = closed;
  v.oracle = oracle;
  v.relative_gap = std::abs(closed - oracle) / std::max(std::abs(closed), 1e-300);
  if (v.relative_gap <= cfg.relative_tol && std::isfinite(v.relative_gap)) {
    v.value = closed;
    v.status = Certification::BothAgree;
  } else {
    v.value = oracle;
    v.status = Certification::Oracle;
    v.flagged = true;
  }
  return v;
}

}  // namespace

BracketContext::BracketContext(const FamilyInstance& inst) : instance(inst), krein_kind(real_part_form(inst)) {}

MonomialSum BracketContext::friedrichs_inverse(const MonomialSum& g) const {
  return friedrichs_inverse_kernel(instance, g);
}

cplx bracket(const BracketContext& ctx, const MonomialSum& f, const MonomialSum& g) {
  require_form_domain(ctx.krein_kind, f);
  MonomialSum u = ctx.friedrichs_inverse(g);
  return l2_inner(f, g) - 2.0 * form_value(ctx.krein_kind, f, u);
}

cplx q_sesquilinear(const BracketContext& ctx, const MonomialSum& v1, const MonomialSum& v2) {
  require_form_domain(ctx.krein_kind, v1);
  require_form_domain(ctx.krein_kind, v2);
  MonomialSum t1 = apply_formal_maximal(ctx.instance, Sign::Minus, v1);
  MonomialSum t2 = apply_formal_maximal(ctx.instance, Sign::Minus, v2);
  cplx herm = 0.5 * (l2_inner(v1, t2) + std::conj(l2_inner(v2, t1)));
  return herm - form_value(ctx.krein_kind, v1, v2);
}

double q_form(const BracketContext& ctx, const MonomialSum& v) { return q_sesquilinear(ctx, v, v).real(); }

cplx sigma(const FamilyInstance& inst) {
  require_family(inst, Family::HardyImaginary, "sigma");
  const cplx w = inst.omega_plus, wb = std::conj(w);
  const double g = inst.gamma;
  const cplx denom = I * g - (wb + 2.0) * (wb + 1.0);
  return 1.0 / (2.0 * wb + 1.0) -
         2.0 / denom * (wb * (wb + 2.0) / (2.0 * wb + 1.0) - std::norm(w) / (w + wb - 1.0));
}

double tau(const FamilyInstance& inst) {
  require_family(inst, Family::HardyImaginary, "tau");
  const cplx w = inst.omega_plus;
  return std::norm(w - 1.0) / (2.0 * w.real() - 1.0);
}

cplx mu(const FamilyInstance& inst) {
  require_family(inst, Family::HardyReal, "mu");
  const cplx w = inst.omega_plus, wb = std::conj(w);
  const double g = inst.gamma;
  const cplx denom = g + I * (wb + 2.0) * (wb + 1.0);
  return 1.0 / (2.0 * wb + 1.0) - 2.0 * g / denom * (1.0 / (2.0 * wb + 1.0) - 1.0 / (w + wb - 1.0));
}

double nu(const FamilyInstance& inst) {
  require_family(inst, Family::HardyReal, "nu");
  return inst.gamma / (2.0 * inst.omega_plus.real() - 1.0);
}

cplx coupling_closed_form(const FamilyInstance& inst) {
  return inst.family == Family::HardyImaginary ? sigma(inst) : mu(inst);
}

double krein_norm_closed_form(const FamilyInstance& inst) {
  return inst.family == Family::HardyImaginary ? tau(inst) : nu(inst);
}

cplx bracket_via_oracle(const FamilyInstance& inst, const MonomialSum& f, const MonomialSum& g, const MeshSpec& mesh) {
  const cplx inner = integrate_product(f, g).value;
  GridFunction u = bvp_solve_oracle(inst, Sign::Minus, g, mesh);
  std::vector<double> cells = u.nodes();
  cplx k;
  if (inst.family == Family::HardyImaginary) {
    MonomialSum df = differentiate(f);
    k = integrate_panels([&](double x) { return std::conj(df(x)) * u.derivative(x); }, cells);
    // u vanishes at both ends, so the boundary term of the Krein form drops.
  } else {
    k = inst.gamma * integrate_panels([&](double x) { return std::conj(f(x)) * u(x) / (x * x); }, cells);
  }
  return inner - 2.0 * k;
}

std::string certification_name(Certification c) {
  switch (c) {
    case Certification::ClosedForm: return "closed-form";
    case Certification::Oracle: return "oracle";
    case Certification::BothAgree: return "both-agree";
  }
  return "?";
}

CertifiedConstants certify_constants(const FamilyInstance& inst, const CertificationConfig& cfg) {
  CertifiedConstants c;
  const MonomialSum v = MonomialSum::power(inst.omega_plus);
  const MonomialSum k = MonomialSum::power(std::conj(inst.omega_plus));
  const FormKind kind = real_part_form(inst);
  const char* cname = inst.family == Family::HardyImaginary ? "sigma" : "mu";
  const char* kname = inst.family == Family::HardyImaginary ? "tau" : "nu";

  c.coupling = compare_values(coupling_closed_form(inst), bracket_via_oracle(inst, v, k, cfg.mesh), cfg);
  c.krein_norm = compare_values(krein_norm_closed_form(inst), oracle_form(kind, v, v), cfg);
  c.certified = !c.coupling.flagged && !c.krein_norm.flagged;
  if (c.coupling.flagged)
    c.notes.push_back(std::string(cname) + ": closed form and oracle disagree; oracle value reported");
  if (c.krein_norm.flagged)
    c.notes.push_back(std::string(kname) + ": closed form and oracle disagree; oracle value reported");
  double residue = std::abs(c.krein_norm.value.imag());
  if (residue > cfg.imaginary_tol * std::max(1.0, std::abs(c.krein_norm.value))) {
    c.certified = false;
    c.krein_norm.flagged = true;
    c.notes.push_back(std::string(kname) + ": imaginary residue above tolerance");
  }
  c.krein_norm.value = c.krein_norm.value.real();
  return c;
}

CertifiedFamily certify(const FamilyInstance& inst, const CertificationConfig& cfg) {
  return {inst, certify_constants(inst, cfg)};
}

}  // namespace bkvg
