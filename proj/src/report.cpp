#include "bkvg/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace bkvg {

namespace {

std::string format_double(double v) {
  if (std::isnan(v)) return "\"nan\"";
  if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
  if (v == 0.0) v = 0.0;  // no "-0"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.11e", v);
  return buf;
}

void write(std::ostringstream& os, const Json& j, int depth) {
  const std::string pad(2 * (depth + 1), ' '), close(2 * depth, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) os << ",\n";
        first = false;
        os << pad << Json(k).dump() << ": ";
        write(os, v, depth + 1);
      }
      os << "\n" << close << "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ",\n";
        os << pad;
        write(os, j[i], depth + 1);
      }
      os << "\n" << close << "]";
      return;
    }
    case Json::value_t::number_float:
      os << format_double(j.get<double>());
      return;
    default:
      os << j.dump();
  }
}

Certification combined(const CertifiedConstants& c) {
  return c.coupling.status == Certification::BothAgree && c.krein_norm.status == Certification::BothAgree
             ? Certification::BothAgree
             : Certification::Oracle;
}

Json certified_value(const std::string& name, const CertifiedValue& v, bool real) {
  Json j;
  j["name"] = name;
  j["value"] = real ? real_field(v.value.real(), v.status) : complex_field(v.value, v.status);
  j["closed_form"] = real ? real_field(v.closed_form.real(), Certification::ClosedForm)
                          : complex_field(v.closed_form, Certification::ClosedForm);
  j["oracle"] = real ? real_field(v.oracle.real(), Certification::Oracle)
                     : complex_field(v.oracle, Certification::Oracle);
  j["relative_gap"] = real_field(v.relative_gap, Certification::Oracle);
  j["flagged"] = v.flagged;
  return j;
}

Json exponent_list(const std::vector<MonomialSum>& vs) {
  Json a = Json::array();
  for (const auto& v : vs)
    for (const Term& t : v.terms()) a.push_back(complex_field(t.exponent, Certification::ClosedForm));
  return a;
}

Json spec_json(const ExtensionSpec& s) {
  Json j;
  j["domain_dim"] = s.domain_dim;
  if (s.domain_dim == 1) j["d"] = complex_field(s.d, Certification::ClosedForm);
  return j;
}

}  // namespace

std::string dump_report(const Json& j) {
  std::ostringstream os;
  write(os, j, 0);
  os << "\n";
  return os.str();
}

Json real_field(double v, Certification c) {
  Json j;
  j["value"] = v;
  j["certification"] = certification_name(c);
  return j;
}

Json complex_field(cplx z, Certification c) {
  Json j;
  j["re"] = z.real();
  j["im"] = z.imag();
  j["certification"] = certification_name(c);
  return j;
}

Json monomial_json(const MonomialSum& f, Certification c) {
  Json a = Json::array();
  for (const Term& t : f.terms()) {
    Json term;
    term["coefficient"] = complex_field(t.coefficient, c);
    term["exponent"] = complex_field(t.exponent, Certification::ClosedForm);
    a.push_back(term);
  }
  return a;
}

Json analyze_payload(const CertifiedFamily& cf) {
  const FamilyInstance& inst = cf.instance;
  const bool imag = inst.family == Family::HardyImaginary;
  Json p;
  p["kind"] = "analyze";
  p["family"] = family_name(inst.family);
  p["gamma"] = real_field(inst.gamma, Certification::ClosedForm);
  p["omega_plus"] = complex_field(inst.omega_plus, Certification::ClosedForm);
  p["omega_minus"] = complex_field(inst.omega_minus, Certification::ClosedForm);
  p["regime"] = regime_name(inst.regime);
  KernelBasis kb = kernel_basis(inst);
  p["kernel_minus_exponents"] = exponent_list(kb.minus_kernel);
  p["kernel_plus_exponents"] = exponent_list(kb.plus_kernel);
  p["coupling"] = certified_value(imag ? "sigma" : "mu", cf.constants.coupling, false);
  p["krein_norm"] = certified_value(imag ? "tau" : "nu", cf.constants.krein_norm, true);
  p["certified"] = cf.constants.certified;
  p["notes"] = cf.constants.notes;
  if (inst.regime == Regime::TwoDimKernel) {
    ChiVector cv = chi_vector(inst);
    Json chi;
    chi["chi"] = monomial_json(cv.chi, Certification::ClosedForm);
    chi["companion"] = monomial_json(cv.companion, Certification::ClosedForm);
    p["chi"] = chi;
  }
  DomainDecomposition dd = domain_decomposition(inst);
  Json fi = Json::array();
  for (const auto& v : dd.friedrichs_images) fi.push_back(monomial_json(v, Certification::ClosedForm));
  p["friedrichs_images"] = fi;
  return p;
}

Json extension_payload(const ExtensionSpec& spec, const AccretivityReport& r, const std::optional<VdDescription>& vd,
                       std::optional<double> rayleigh_inf) {
  const Certification cc = combined(spec.family.constants);
  const bool imag = spec.instance().family == Family::HardyImaginary;
  Json p;
  p["kind"] = "check";
  p["family"] = family_name(spec.instance().family);
  p["spec"] = spec_json(spec);
  p[imag ? "sigma" : "mu"] = complex_field(r.sigma_or_mu, spec.family.constants.coupling.status);
  p[imag ? "tau" : "nu"] = real_field(r.tau_or_nu, spec.family.constants.krein_norm.status);
  p["margin"] = real_field(r.margin, cc);
  p["accretive"] = r.accretive;
  if (r.closability) {
    Json c;
    c["closable"] = r.closability->closable;
    c["reason"] = r.closability->reason;
    c["tolerance"] = real_field(r.closability->tolerance, Certification::ClosedForm);
    p["closability"] = c;
  }
  if (r.b_matrix) {
    Json b;
    b["order"] = r.b_matrix->order();
    Json rows = Json::array();
    for (int i = 0; i < r.b_matrix->order(); ++i) {
      Json row = Json::array();
      for (int k = 0; k < r.b_matrix->order(); ++k) row.push_back(complex_field(r.b_matrix->entries(i, k), cc));
      rows.push_back(row);
    }
    b["entries"] = rows;
    Json ev = Json::array();
    for (double e : r.b_matrix->eigenvalues()) ev.push_back(real_field(e, cc));
    b["eigenvalues"] = ev;
    p["b_matrix"] = b;
  }
  if (vd) {
    Json v;
    Json fd = Json::array(), od = Json::array();
    for (const auto& f : vd->form_domain_vectors) fd.push_back(monomial_json(f, Certification::ClosedForm));
    for (const auto& f : vd->operator_domain_vectors) od.push_back(monomial_json(f, Certification::BothAgree));
    v["form_domain_vectors"] = fd;
    v["operator_domain_vectors"] = od;
    v["oracle_max_error"] = real_field(vd->oracle_max_error, Certification::Oracle);
    p["v_d"] = v;
  }
  if (r.lower_bound) {
    const LowerBound& lb = *r.lower_bound;
    Json l;
    l["alpha"] = real_field(lb.alpha, lb.alpha_certified ? Certification::BothAgree : Certification::ClosedForm);
    l["alpha_discrete"] = real_field(lb.alpha_discrete, Certification::Oracle);
    l["alpha_certified"] = lb.alpha_certified;
    l["delta"] = real_field(lb.delta, cc);
    l["lo"] = real_field(lb.lo, cc);
    l["hi"] = real_field(lb.hi, cc);
    l["harmonic_lo"] = real_field(lb.harmonic_lo, cc);
    l["harmonic_hi"] = real_field(lb.harmonic_hi, cc);
    if (rayleigh_inf) l["rayleigh_inf"] = real_field(*rayleigh_inf, Certification::Oracle);
    p["lower_bound"] = l;
  }
  p["notes"] = r.notes;
  return p;
}

Json compare_payload(const ExtensionSpec& s1, const ExtensionSpec& s2, Order o) {
  Json p;
  p["kind"] = "compare";
  p["family"] = family_name(s1.instance().family);
  p["spec1"] = spec_json(s1);
  p["spec2"] = spec_json(s2);
  p["order"] = order_name(o);
  return p;
}

Json range_payload(const NumericalRangeReport& r, std::size_t matrix_order) {
  Json p;
  p["kind"] = "numrange";
  p["matrix_order"] = matrix_order;
  p["samples"] = r.support_samples.size();
  p["arg_inf"] = real_field(r.arg_inf, Certification::Oracle);
  p["arg_sup"] = real_field(r.arg_sup, Certification::Oracle);
  p["angle_tol"] = real_field(r.angle_tol, Certification::ClosedForm);
  p["extremal"] = r.extremal;
  p["support_convex"] = r.support_convex;
  p["lambda_min_hermitian"] = real_field(r.lambda_min_hermitian, Certification::Oracle);
  return p;
}

Json verify_payload(const std::vector<CriterionResult>& results, VerifyLevel level) {
  Json p;
  p["kind"] = "verify";
  p["level"] = level == VerifyLevel::Full ? "full" : "quick";
  Json list = Json::array();
  int passed = 0;
  for (const auto& r : results) {
    Json c;
    c["id"] = r.id;
    c["title"] = r.title;
    c["status"] = r.passed ? "pass" : "fail";
    c["detail"] = r.detail;
    list.push_back(c);
    passed += r.passed;
  }
  p["criteria"] = list;
  p["passed"] = passed;
  p["total"] = results.size();
  p["all_passed"] = passed == static_cast<int>(results.size());
  return p;
}

Json envelope(const std::string& command, Json config_echo, Json payload, std::vector<std::string> warnings) {
  Json j;
  j["schema"] = kSchema;
  j["tool_version"] = kToolVersion;
  j["command"] = command;
  j["config_echo"] = std::move(config_echo);
  j["payload"] = std::move(payload);
  j["warnings"] = std::move(warnings);
  return j;
}

std::string support_csv(const NumericalRangeReport& r) {
  std::string s = "theta,support_value\n";
  char buf[80];
  for (const auto& [t, v] : r.support_samples) {
    std::snprintf(buf, sizeof buf, "%.11e,%.11e\n", t, v == 0.0 ? 0.0 : v);
    s += buf;
  }
  return s;
}

}  // namespace bkvg
