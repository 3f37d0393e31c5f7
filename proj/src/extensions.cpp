#include "bkvg/extensions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "bkvg/discretization.hpp"
#include "bkvg/error.hpp"
#include "bkvg/quadrature.hpp"

namespace bkvg {

namespace {

const cplx I(0.0, 1.0);

void require_certified(const ExtensionSpec& spec) {
  if (!spec.family.constants.certified)
    throw Error(ErrorCode::UncertifiedConstants, "family constants failed oracle certification");
}

void require_closable(const ExtensionSpec& spec) {
  if (!is_closable(spec).closable) throw Error(ErrorCode::NotClosable, "real-part form is not closable");
}

bool same_instance(const FamilyInstance& a, const FamilyInstance& b) {
  return a.family == b.family && a.gamma == b.gamma;
}

double smoothstep(double t, int deriv) {
  if (t <= 0.0 || t >= 1.0) return (deriv == 0 && t >= 1.0) ? 1.0 : 0.0;
  switch (deriv) {
    case 0: return t * t * t * (10.0 - 15.0 * t + 6.0 * t * t);
    case 1: return 30.0 * t * t * (1.0 - t) * (1.0 - t);
    default: return 60.0 * t * (1.0 - t) * (1.0 - 2.0 * t);
  }
}

}  // namespace

ExtensionSpec ExtensionSpec::friedrichs(const CertifiedFamily& cf) { return {cf, 0, 0.0}; }

ExtensionSpec ExtensionSpec::with_coefficient(const CertifiedFamily& cf, cplx d) { return {cf, 1, d}; }

cplx d_for_margin(const CertifiedFamily& cf, double m, double im) {
  const cplx c = cf.constants.coupling.value;
  const double k = cf.constants.krein_norm.value.real();
  return cplx(k + m, im) / c;
}

std::vector<double> HermitianMatrix::eigenvalues() const {
  if (entries.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(entries, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

double margin(const ExtensionSpec& spec) {
  require_certified(spec);
  if (spec.domain_dim == 0) return std::numeric_limits<double>::infinity();
  const cplx ds = spec.d * spec.family.constants.coupling.value;
  const double k = spec.family.constants.krein_norm.value.real();
  double m = ds.real() - k;
  if (std::abs(m) <= 1e-12 * (std::abs(ds.real()) + k)) m = 0.0;
  return m;
}

AccretivityReport is_accretive(const ExtensionSpec& spec) {
  require_certified(spec);
  AccretivityReport r;
  r.sigma_or_mu = spec.family.constants.coupling.value;
  r.tau_or_nu = spec.family.constants.krein_norm.value.real();
  r.margin = margin(spec);
  r.accretive = r.margin >= 0.0;
  if (spec.domain_dim == 0) r.notes.push_back("Friedrichs extension: D(D) = {0}");
  if (spec.instance().regime == Regime::TwoDimKernel)
    r.notes.push_back("two-dimensional kernel: the companion direction A_F^{-1}(A_F chi) is part of the domain");
  return r;
}

Closability is_closable(const ExtensionSpec& spec) {
  if (!is_accretive(spec).accretive) throw Error(ErrorCode::NotAccretive, "extension is not accretive");
  Closability c;
  c.tolerance = kClosabilityTol;
  if (spec.domain_dim == 0) {
    c.closable = true;
    c.reason = "D(D) = {0}: the form is the Friedrichs form";
  } else if (spec.instance().family == Family::HardyImaginary) {
    c.closable = true;
    c.reason = "x^{w+} has boundary value 1 at x = 1, so D(D) meets D(V_F^{1/2}) only in 0";
  } else {
    double m = margin(spec);
    c.closable = std::abs(m) <= kClosabilityTol;
    c.reason = c.closable ? "Re(d mu) = nu within tolerance: q vanishes on D(D)"
                          : "Re(d mu) > nu: q(v) > 0 on D(D), which lies in D(V_F^{1/2})";
  }
  return c;
}

MonomialSum projection_P(const FamilyInstance& inst, const MonomialSum& f) {
  if (inst.family == Family::HardyReal) return {};
  BoundaryTrace t = boundary_trace(f);
  if (!t.at_zero) throw Error(ErrorCode::DomainViolation, "boundary trace at 0 undefined");
  return MonomialSum{{*t.at_zero, 0.0}, {-*t.at_zero, 1.0}, {t.at_one, 1.0}};
}

HermitianMatrix b_matrix(const ExtensionSpec& spec) {
  require_closable(spec);
  HermitianMatrix b;
  if (spec.domain_dim == 0 || spec.instance().family == Family::HardyReal) {
    b.entries.resize(0, 0);
    return b;
  }
  // eta = sqrt(3) x, P^{-1} eta = sqrt(3) x^{w+}.
  const FamilyInstance& inst = spec.instance();
  BracketContext ctx(inst);
  const MonomialSum k = MonomialSum::power(inst.omega_plus) * std::sqrt(3.0);
  const MonomialSum dk = MonomialSum::power(std::conj(inst.omega_plus)) * (spec.d * std::sqrt(3.0));
  const cplx br = bracket(ctx, k, dk);
  const double val = 0.5 * (br + std::conj(br)).real() - form_value(ctx.krein_kind, k, k).real();
  b.entries = Eigen::MatrixXcd::Constant(1, 1, cplx(val, 0.0));
  return b;
}

VdDescription v_d_description(const ExtensionSpec& spec) {
  VdDescription out;
  out.b = b_matrix(spec);
  if (spec.domain_dim == 0 || spec.instance().family == Family::HardyReal) return out;

  const MonomialSum one = MonomialSum::constant(1.0), x = MonomialSum::power(1.0);
  const MonomialSum u1 = dirichlet_laplacian_inverse(one);
  const MonomialSum ux = dirichlet_laplacian_inverse(x);
  for (const auto& [g, u] : {std::pair{one, u1}, std::pair{x, ux}}) {
    GridFunction oracle = bvp_solve_dirichlet_laplacian(g);
    for (double xn : oracle.nodes()) out.oracle_max_error = std::max(out.oracle_max_error, std::abs(oracle(xn) - u(xn)));
  }
  const double b = out.b.entries(0, 0).real();
  out.form_domain_vectors.push_back(x);
  out.operator_domain_vectors.push_back(ux * b + x);
  out.operator_domain_vectors.push_back(u1 * 2.0 - ux * 3.0);
  out.warnings.push_back(
      "V_F^{-1} solves -u''=g with u(0)=u(1)=0: V_F^{-1}1 = (x-x^2)/2 and V_F^{-1}x = (x-x^3)/6; the forms "
      "(x^2-x)/2 and (x^3-x)/6 have the opposite sign and solve u''=g");
  if (out.oracle_max_error > 1e-8) out.warnings.push_back("V_F^{-1} oracle deviates from the exact polynomials by more than 1e-8");
  return out;
}

std::string order_name(Order o) {
  switch (o) {
    case Order::GreaterEqual: return "greater_equal";
    case Order::LessEqual: return "less_equal";
    case Order::Equal: return "equal";
    case Order::Incomparable: return "incomparable";
  }
  return "?";
}

Order compare(const ExtensionSpec& s1, const ExtensionSpec& s2) {
  if (!same_instance(s1.instance(), s2.instance()))
    throw Error(ErrorCode::FamilyMismatch, "specs belong to different family instances");
  require_closable(s1);
  require_closable(s2);
  const bool real = s1.instance().family == Family::HardyReal;
  const int p1 = real ? 0 : s1.domain_dim, p2 = real ? 0 : s2.domain_dim;
  if (p1 == 0 && p2 == 0) return Order::Equal;
  if (p1 == 0) return Order::GreaterEqual;
  if (p2 == 0) return Order::LessEqual;
  const double b1 = b_matrix(s1).entries(0, 0).real(), b2 = b_matrix(s2).entries(0, 0).real();
  if (std::abs(b1 - b2) <= 1e-12 * std::max({1.0, std::abs(b1), std::abs(b2)})) return Order::Equal;
  return b1 > b2 ? Order::GreaterEqual : Order::LessEqual;
}

LowerBound lower_bound_sandwich(const ExtensionSpec& spec) {
  if (spec.instance().family != Family::HardyImaginary || spec.domain_dim != 1)
    throw Error(ErrorCode::NotApplicable, "lower bound needs a one-dimensional HardyImaginary extension");
  if (!is_accretive(spec).accretive) throw Error(ErrorCode::NotApplicable, "extension is not accretive");
  LowerBound lb;
  lb.delta = b_matrix(spec).entries(0, 0).real();
  lb.alpha = std::numbers::pi * std::numbers::pi;
  lb.alpha_discrete = dirichlet_laplacian_ground_state(2000);
  lb.alpha_certified = std::abs(lb.alpha_discrete - lb.alpha) <= 1e-3 * lb.alpha;
  if (lb.delta > 0.0) {
    lb.lo = lb.alpha * lb.delta / (1.0 + lb.delta);
    lb.hi = lb.alpha * lb.delta;
    lb.harmonic_lo = lb.alpha * lb.delta / (lb.alpha + lb.delta);
    lb.harmonic_hi = lb.delta;
  }
  return lb;
}

AccretivityReport analyze_extension(const ExtensionSpec& spec) {
  AccretivityReport r = is_accretive(spec);
  if (!r.accretive) return r;
  r.closability = is_closable(spec);
  if (!r.closability->closable) return r;
  r.b_matrix = b_matrix(spec);
  if (spec.domain_dim == 1 && spec.instance().family == Family::HardyImaginary) {
    r.lower_bound = lower_bound_sandwich(spec);
    if (!r.lower_bound->alpha_certified) r.notes.push_back("alpha = pi^2 not confirmed by the FD eigenvalue oracle");
  }
  return r;
}

MonomialSum extension_vector(const ExtensionSpec& spec) {
  if (spec.domain_dim != 1) throw Error(ErrorCode::NotApplicable, "extension vector needs domain_dim = 1");
  const FamilyInstance& inst = spec.instance();
  return friedrichs_inverse_kernel(inst, MonomialSum::power(std::conj(inst.omega_plus), spec.d)) +
         MonomialSum::power(inst.omega_plus);
}

std::vector<MonomialSum> extension_domain_vectors(const ExtensionSpec& spec) {
  const FamilyInstance& inst = spec.instance();
  std::vector<MonomialSum> out;
  if (spec.domain_dim == 1) {
    out.push_back(extension_vector(spec));
    if (inst.regime == Regime::TwoDimKernel) out.push_back(chi_vector(inst).chi);
  } else {
    for (const MonomialSum& k : kernel_basis(inst).plus_kernel) out.push_back(friedrichs_inverse_kernel(inst, k));
  }
  return out;
}

SamplingResult accretivity_sampling(const ExtensionSpec& spec, std::size_t count, std::uint64_t seed, bool parallel) {
  const FamilyInstance& inst = spec.instance();
  const std::vector<MonomialSum> ext = extension_domain_vectors(spec);
  const MonomialSum bump{{1.0, 2.0}, {-2.0, 3.0}, {1.0, 4.0}};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<MonomialSum> psis(count);
  for (std::size_t s = 0; s < count; ++s) {
    MonomialSum psi;
    for (int j = 0; j < 4; ++j) psi += bump.shifted(double(j)) * cplx(u(rng), u(rng));
    for (const MonomialSum& e : ext) psi += e * cplx(u(rng), u(rng));
    psis[s] = psi;
  }
  std::vector<double> values(count), scaled(count), gaps(count);
  const long n = static_cast<long>(count);
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (long s = 0; s < n; ++s) {
    const MonomialSum& psi = psis[s];
    const MonomialSum tpsi = apply_formal_maximal(inst, Sign::Minus, psi);
    const double v = integrate_product(psi, tpsi).value.real();
    const cplx exact = l2_inner(psi, tpsi);
    const double scale = l2_inner(psi, psi).real() + l2_inner(differentiate(psi), differentiate(psi)).real() +
                         std::abs(exact);
    values[s] = v;
    scaled[s] = v / scale;
    gaps[s] = std::abs(v - exact.real()) / scale;
  }
  SamplingResult r;
  r.count = count;
  r.min_value = count ? *std::min_element(values.begin(), values.end()) : 0.0;
  r.min_scaled = count ? *std::min_element(scaled.begin(), scaled.end()) : 0.0;
  r.max_closed_form_gap = count ? *std::max_element(gaps.begin(), gaps.end()) : 0.0;
  r.all_nonnegative = r.min_scaled >= -1e-8;
  return r;
}

CutoffWitness cutoff_witness(const ExtensionSpec& spec, double a) {
  if (!(a > 0.0 && a < 0.25)) throw Error(ErrorCode::InvalidArgument, "cutoff must lie in (0, 1/4)");
  const FamilyInstance& inst = spec.instance();
  const MonomialSum v = extension_vector(spec);
  const MonomialSum pv = projection_P(inst, v);
  const MonomialSum r = v - pv, r1 = differentiate(r), r2 = differentiate(r1);
  const MonomialSum pv2 = differentiate(differentiate(pv));

  struct Local {
    cplx psi, psi2, rem;
  };
  auto local = [&](double x) {
    double phi, dphi, ddphi;
    if (x < 0.5) {
      double t = (x - a) / a;
      phi = smoothstep(t, 0);
      dphi = smoothstep(t, 1) / a;
      ddphi = smoothstep(t, 2) / (a * a);
    } else {
      double t = (1.0 - a - x) / a;
      phi = smoothstep(t, 0);
      dphi = -smoothstep(t, 1) / a;
      ddphi = smoothstep(t, 2) / (a * a);
    }
    const cplx rv = r(x), rv1 = r1(x), rv2 = r2(x);
    Local l;
    l.rem = rv * (1.0 - phi);
    l.psi = pv(x) + l.rem;
    l.psi2 = pv2(x) + rv2 * (1.0 - phi) - 2.0 * rv1 * dphi - rv * ddphi;
    return l;
  };
  auto t_psi = [&](const Local& l, double x) {
    if (inst.family == Family::HardyImaginary) return I * inst.gamma * l.psi / (x * x) - l.psi2;
    return I * l.psi2 + inst.gamma * l.psi / (x * x);
  };
  auto form_integrand = [&](double x) {
    Local l = local(x);
    return std::conj(l.psi) * t_psi(l, x);
  };
  auto norm_integrand = [&](double x) { return cplx(std::norm(local(x).rem)); };

  const double hint = 2.0 * inst.omega_plus.real() - 2.0;
  CutoffWitness w;
  w.cutoff = a;
  cplx val = integrate(form_integrand, 0.0, 2.0 * a, hint).value;
  val += integrate(form_integrand, 2.0 * a, 1.0 - 2.0 * a, 0.0).value;
  val += integrate(form_integrand, 1.0 - 2.0 * a, 1.0, 0.0).value;
  double nrm = integrate(norm_integrand, 0.0, 2.0 * a, 2.0 * inst.omega_plus.real()).value.real();
  nrm += integrate(norm_integrand, 1.0 - 2.0 * a, 1.0, 0.0).value.real();
  w.value = val.real();
  w.norm = std::sqrt(nrm);
  return w;
}

NegativeWitness negative_margin_witness(const ExtensionSpec& spec, int max_halvings) {
  if (spec.domain_dim != 1 || !(margin(spec) < 0.0))
    throw Error(ErrorCode::NotApplicable, "negative-margin witness needs a dim-1 spec with margin < 0");
  NegativeWitness out;
  out.q = q_form(BracketContext(spec.instance()), extension_vector(spec));
  double a = 0.125;
  for (int k = 0; k < max_halvings; ++k, a *= 0.5) {
    out.sequence.push_back(cutoff_witness(spec, a));
    if (out.sequence.back().value < 0.0) {
      out.found = true;
      break;
    }
  }
  return out;
}

}  // namespace bkvg
