#include "bkvg/discretization.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bkvg/error.hpp"
#include "bkvg/quadrature.hpp"

namespace bkvg {

namespace {

constexpr double kPi = std::numbers::pi;

SymTridiagonal scaled(const SymTridiagonal& T, const std::vector<double>& w) {
  SymTridiagonal S = T;
  for (std::size_t i = 0; i < T.size(); ++i) S.diag[i] /= w[i];
  for (std::size_t i = 0; i + 1 < T.size(); ++i) S.off[i] /= std::sqrt(w[i] * w[i + 1]);
  return S;
}

SymTridiagonal combine(const DiscreteOperator& op, double theta) {
  return linear_combination(std::cos(theta), op.hermitian, -std::sin(theta), op.skew);
}

template <class Support>
double bisect_angle(Support&& h, bool upper) {
  // upper: smallest phi with h(-phi - pi/2) <= 0;  lower: largest phi with h(pi/2 - phi) <= 0
  auto ok = [&](double phi) { return upper ? h(-phi - kPi / 2) <= 0.0 : h(kPi / 2 - phi) <= 0.0; };
  double lo = -kPi / 2, hi = kPi / 2;
  if (upper) {
    if (!ok(hi)) return kPi / 2;
    if (ok(lo)) return -kPi / 2;
    for (int it = 0; it < 60; ++it) {
      double mid = 0.5 * (lo + hi);
      (ok(mid) ? hi : lo) = mid;
    }
    return hi;
  }
  if (!ok(lo)) return -kPi / 2;
  if (ok(hi)) return kPi / 2;
  for (int it = 0; it < 60; ++it) {
    double mid = 0.5 * (lo + hi);
    (ok(mid) ? lo : hi) = mid;
  }
  return lo;
}

template <class Support>
NumericalRangeReport sweep(int steps, double angle_tol, bool parallel, Support&& h) {
  if (steps < 8) throw Error(ErrorCode::InvalidArgument, "theta_steps must be at least 8");
  NumericalRangeReport r;
  r.angle_tol = angle_tol;
  std::vector<double> vals(steps);
  const double dt = 2.0 * kPi / steps;
#pragma omp parallel for schedule(static) if (parallel)
  for (int k = 0; k < steps; ++k) vals[k] = h(k * dt);
  double scale = 0.0;
  for (int k = 0; k < steps; ++k) {
    if (!std::isfinite(vals[k])) throw Error(ErrorCode::EigenFailure, "non-finite support value");
    r.support_samples.emplace_back(k * dt, vals[k]);
    scale = std::max(scale, std::abs(vals[k]));
  }
  for (int k = 0; k < steps; ++k) {
    double prev = vals[(k + steps - 1) % steps], next = vals[(k + 1) % steps];
    if (prev + next < 2.0 * std::cos(dt) * vals[k] - 1e-9 * scale) r.support_convex = false;
  }
  r.lambda_min_hermitian = -h(kPi);
  r.arg_sup = bisect_angle(h, true);
  r.arg_inf = bisect_angle(h, false);
  r.extremal = r.arg_sup >= kPi / 2 - angle_tol || r.arg_inf <= -kPi / 2 + angle_tol;
  return r;
}

std::vector<double> mesh_with_ends(const MeshSpec& mesh) {
  MeshSpec m = mesh;
  m.interior_only = false;
  return m.nodes();
}

// Two-element Gauss integral of f against the hat at interior node j of x (with ends).
template <class F>
cplx hat_integral(const std::vector<double>& x, std::size_t j, F&& f) {
  const GaussRule& rule = gauss_legendre(8);
  cplx s = 0.0;
  for (int side = 0; side < 2; ++side) {
    double a = x[j - 1 + side], b = x[j + side];
    double c = 0.5 * (a + b), hw = 0.5 * (b - a);
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      double t = c + hw * rule.nodes[q];
      double hat = side == 0 ? (t - a) / (b - a) : (b - t) / (b - a);
      s += rule.weights[q] * hw * hat * f(t);
    }
  }
  return s;
}

}  // namespace

Eigen::MatrixXcd DiscreteOperator::dense() const {
  return to_dense(hermitian).cast<cplx>() + cplx(0.0, 1.0) * to_dense(skew).cast<cplx>();
}

DiscreteOperator discretize(const FamilyInstance& inst, Sign sign, const MeshSpec& mesh) {
  if (mesh.layout != MeshLayout::GradedSpacing) throw Error(ErrorCode::InvalidArgument, "discretize needs a graded mesh");
  DiscreteOperator op;
  std::vector<double> h = mesh.spacings();
  op.nodes = mesh.nodes();
  if (!mesh.interior_only) op.nodes = std::vector<double>(op.nodes.begin() + 1, op.nodes.end() - 1);
  const std::size_t n = op.nodes.size();
  op.weights.resize(n);
  SymTridiagonal K, P;
  K.diag.resize(n);
  K.off.resize(n - 1);
  P.diag.resize(n);
  P.off.assign(n - 1, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    op.weights[j] = 0.5 * (h[j] + h[j + 1]);
    K.diag[j] = 1.0 / h[j] + 1.0 / h[j + 1];
    if (j + 1 < n) K.off[j] = -1.0 / h[j + 1];
    P.diag[j] = op.weights[j] * inst.gamma / (op.nodes[j] * op.nodes[j]);
  }
  const SymTridiagonal Ks = scaled(K, op.weights), Ps = scaled(P, op.weights);
  const double s = sign == Sign::Plus ? 1.0 : -1.0;
  if (inst.family == Family::HardyImaginary) {
    op.hermitian = Ks;
    op.skew = linear_combination(s, Ps, 0.0, Ps);
  } else {
    op.hermitian = Ps;
    op.skew = linear_combination(-s, Ks, 0.0, Ks);
  }
  return op;
}

DiscreteOperator from_parts(SymTridiagonal hermitian, SymTridiagonal skew) {
  if (hermitian.size() != skew.size() || hermitian.size() == 0)
    throw Error(ErrorCode::InvalidArgument, "hermitian and skew parts must have equal nonzero size");
  DiscreteOperator op;
  op.weights.assign(hermitian.size(), 1.0);
  op.nodes.assign(hermitian.size(), 0.0);
  op.hermitian = std::move(hermitian);
  op.skew = std::move(skew);
  return op;
}

double support_value(const DiscreteOperator& op, double theta) { return largest_eigenvalue(combine(op, theta)); }

double support_value_dense(const DiscreteOperator& op, double theta) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_dense(combine(op, theta)), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::EigenFailure, "dense eigensolver failed");
  return es.eigenvalues().maxCoeff();
}

NumericalRangeReport numerical_range_sweep(const DiscreteOperator& op, int theta_steps, double angle_tol,
                                           bool parallel) {
  return sweep(theta_steps, angle_tol, parallel, [&](double t) { return support_value(op, t); });
}

NumericalRangeReport numerical_range_sweep_dense(const DiscreteOperator& op, int theta_steps, double angle_tol) {
  return sweep(theta_steps, angle_tol, false, [&](double t) { return support_value_dense(op, t); });
}

std::vector<double> kato_sector_witness(const FamilyInstance& inst, double epsilon, int n_terms) {
  if (inst.family != Family::HardyReal) throw Error(ErrorCode::WrongFamily, "Kato witness needs HardyReal");
  if (!(epsilon >= 0.0 && epsilon < kPi)) throw Error(ErrorCode::InvalidArgument, "epsilon must lie in [0, pi)");
  std::vector<double> out;
  for (int n = 1; n <= n_terms; ++n) {
    const int k = 4 * n;
    // f(s) = (1-s^2)^4 T_k(s),  f'(x) = 4 df/ds
    auto eval = [k](double x, double& f, double& df) {
      double s = 4.0 * x - 3.0;
      double t0 = 1.0, t1 = s, u0 = 1.0, u1 = 2.0 * s;  // T_0, T_1, U_0, U_1
      for (int m = 1; m < k; ++m) {
        double t2 = 2.0 * s * t1 - t0, u2 = 2.0 * s * u1 - u0;
        t0 = t1;
        t1 = t2;
        u0 = u1;
        u1 = u2;
      }
      double tk = t1, dtk = k * u0;  // T_k' = k U_{k-1}
      double w = 1.0 - s * s, w3 = w * w * w;
      f = w3 * w * tk;
      df = 4.0 * (w3 * w * dtk - 8.0 * s * w3 * tk);
    };
    auto integral = [&](auto&& g) {
      return integrate([&](double x) { return cplx(g(x)); }, 0.5, 1.0, 0.0).value.real();
    };
    double nrm = integral([&](double x) {
      double f, df;
      eval(x, f, df);
      return f * f;
    });
    double hardy = integral([&](double x) {
      double f, df;
      eval(x, f, df);
      return f * f / (x * x);
    });
    double grad = integral([&](double x) {
      double f, df;
      eval(x, f, df);
      return df * df;
    });
    out.push_back((std::cos(epsilon) * inst.gamma * hardy - std::sin(epsilon) * grad) / nrm);
  }
  return out;
}

MeshSpec default_rayleigh_mesh() {
  MeshSpec m;
  m.node_count = 2000;
  m.grading_ratio = 1.0;
  return m;
}

BorderedPencil rayleigh_pencil(const ExtensionSpec& spec, const MeshSpec& mesh) {
  if (!is_closable(spec).closable) throw Error(ErrorCode::NotClosable, "real-part form is not closable");
  const FamilyInstance& inst = spec.instance();
  const std::vector<double> x = mesh_with_ends(mesh);
  const std::size_t n = x.size() - 2;
  const bool lap = inst.family == Family::HardyImaginary;
  const double g = inst.gamma;

  BorderedPencil P;
  P.k.diag.resize(n);
  P.k.off.resize(n - 1);
  P.m.diag.resize(n);
  P.m.off.resize(n - 1);
  for (std::size_t j = 1; j <= n; ++j) {
    const double hl = x[j] - x[j - 1], hr = x[j + 1] - x[j];
    P.m.diag[j - 1] = (hl + hr) / 3.0;
    if (j < n) P.m.off[j - 1] = hr / 6.0;
    if (lap) {
      P.k.diag[j - 1] = 1.0 / hl + 1.0 / hr;
      if (j < n) P.k.off[j - 1] = -1.0 / hr;
    } else {
      P.k.diag[j - 1] = g * hat_integral(x, j, [&](double t) {
        double a = x[j - 1], b = x[j + 1];
        double hat = t < x[j] ? (t - a) / (x[j] - a) : (b - t) / (b - x[j]);
        return cplx(hat / (t * t));
      }).real();
      if (j < n) {
        const GaussRule& rule = gauss_legendre(8);
        double a = x[j], b = x[j + 1], c = 0.5 * (a + b), hw = 0.5 * (b - a), s = 0.0;
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
          double t = c + hw * rule.nodes[q];
          s += rule.weights[q] * hw * ((b - t) / (b - a)) * ((t - a) / (b - a)) / (t * t);
        }
        P.k.off[j - 1] = g * s;
      }
    }
  }

  std::vector<MonomialSum> ext;
  if (spec.domain_dim == 1) ext.push_back(extension_vector(spec));
  const Eigen::Index p = static_cast<Eigen::Index>(ext.size());
  P.k_border.resize(n, p);
  P.m_border.resize(n, p);
  P.k_corner.resize(p, p);
  P.m_corner.resize(p, p);
  for (Eigen::Index a = 0; a < p; ++a) {
    const MonomialSum& e = ext[a];
    std::vector<cplx> ev(x.size());
    for (std::size_t i = 1; i < x.size(); ++i) ev[i] = e(x[i]);
    ev[0] = boundary_trace(e).at_zero.value_or(0.0);
    for (std::size_t j = 1; j <= n; ++j) {
      P.m_border(j - 1, a) = hat_integral(x, j, [&](double t) { return e(t); });
      if (lap) {
        P.k_border(j - 1, a) = (ev[j] - ev[j - 1]) / (x[j] - x[j - 1]) - (ev[j + 1] - ev[j]) / (x[j + 1] - x[j]);
      } else {
        P.k_border(j - 1, a) = g * hat_integral(x, j, [&](double t) { return e(t) / (t * t); });
      }
    }
    BracketContext ctx(inst);
    for (Eigen::Index b = 0; b < p; ++b) {
      const MonomialSum te_a = apply_formal_maximal(inst, Sign::Minus, ext[a]);
      const MonomialSum te_b = apply_formal_maximal(inst, Sign::Minus, ext[b]);
      P.k_corner(a, b) = 0.5 * (l2_inner(ext[a], te_b) + std::conj(l2_inner(ext[b], te_a)));
      P.m_corner(a, b) = l2_inner(ext[a], ext[b]);
    }
  }
  return P;
}

double rayleigh_inf_on_extension(const ExtensionSpec& spec, const MeshSpec& mesh) {
  return smallest_pencil_eigenvalue(rayleigh_pencil(spec, mesh));
}

NonclosabilityWitness nonclosability_witness(const ExtensionSpec& spec, double mollification, int n_terms) {
  if (spec.instance().family != Family::HardyReal || spec.domain_dim != 1)
    throw Error(ErrorCode::NotApplicable, "non-closability witness needs a dim-1 HardyReal spec");
  if (!(margin(spec) >= 0.1)) throw Error(ErrorCode::NotApplicable, "margin below 0.1: no witness");
  if (!(mollification > 0.0 && mollification < 0.25))
    throw Error(ErrorCode::InvalidArgument, "mollification must lie in (0, 1/4)");
  NonclosabilityWitness w;
  w.q = q_form(BracketContext(spec.instance()), extension_vector(spec));
  double a = mollification;
  for (int k = 0; k < n_terms; ++k, a *= 0.5) {
    CutoffWitness c = cutoff_witness(spec, a);
    w.cutoffs.push_back(a);
    w.norms.push_back(c.norm);
    w.form_values.push_back(c.value);
  }
  return w;
}

double dirichlet_laplacian_ground_state(int n) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "need at least two nodes");
  const double h = 1.0 / (n + 1);
  SymTridiagonal T;
  T.diag.assign(n, 2.0 / (h * h));
  T.off.assign(n - 1, -1.0 / (h * h));
  return smallest_eigenvalue(T);
}

}  // namespace bkvg
