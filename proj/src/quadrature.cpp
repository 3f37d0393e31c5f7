#include "bkvg/quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <queue>

#include "bkvg/error.hpp"

namespace bkvg {

namespace {

template <int N>
GaussRule make_rule() {
  using G = boost::math::quadrature::gauss<double, N>;
  const auto& x = G::abscissa();
  const auto& w = G::weights();
  GaussRule r;
  for (std::size_t i = x.size(); i-- > 0;) {
    if (x[i] == 0.0) continue;
    r.nodes.push_back(-x[i]);
    r.weights.push_back(w[i]);
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    r.nodes.push_back(x[i]);
    r.weights.push_back(w[i]);
  }
  return r;
}

cplx gauss_on(const Integrand& f, const GaussRule& rule, double a, double b) {
  double c = 0.5 * (a + b), h = 0.5 * (b - a);
  cplx s = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * f(c + h * rule.nodes[i]);
  return s * h;
}

struct Panel {
  double a, b;
  cplx left, right;  // Gauss values on the two halves
  double err;
  cplx value() const { return left + right; }
};

Panel make_panel(const Integrand& f, const GaussRule& rule, double a, double b, cplx coarse) {
  double m = 0.5 * (a + b);
  Panel p{a, b, gauss_on(f, rule, a, m), gauss_on(f, rule, m, b), 0.0};
  p.err = std::abs(coarse - p.value());
  return p;
}

Panel make_panel(const Integrand& f, const GaussRule& rule, double a, double b) {
  return make_panel(f, rule, a, b, gauss_on(f, rule, a, b));
}

bool is_nonneg_integer(double h) { return h >= 0.0 && h == std::floor(h); }

// Integral over (lo, lo + width) from a fitted local power law.
cplx tail_estimate(const Integrand& f, double lo, double width) {
  constexpr double q = 1.0 + 1.0 / 64.0;
  cplx f1 = f(lo + width), f2 = f(lo + width / q);
  if (f1 == cplx(0.0) || f2 == cplx(0.0)) return 0.0;
  cplx p = std::log(f1 / f2) / std::log(q);
  if (p.real() + 1.0 < 0.02) return std::numeric_limits<double>::infinity();
  cplx t = width * f1 / (p + 1.0);
  return std::isfinite(std::abs(t)) ? t : cplx(std::numeric_limits<double>::infinity());
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  static const GaussRule r8 = make_rule<8>();
  static const GaussRule r16 = make_rule<16>();
  static const GaussRule r20 = make_rule<20>();
  static const GaussRule r32 = make_rule<32>();
  switch (n) {
    case 8: return r8;
    case 16: return r16;
    case 20: return r20;
    case 32: return r32;
  }
  throw Error(ErrorCode::InvalidArgument, "unsupported Gauss node count " + std::to_string(n));
}

QuadratureResult integrate(const Integrand& f, double hint, const QuadratureConfig& cfg) {
  return integrate(f, 0.0, 1.0, hint, cfg);
}

QuadratureResult integrate(const Integrand& f, double lo, double hi, double hint, const QuadratureConfig& cfg) {
  if (hint <= -1.0) throw Error(ErrorCode::NonIntegrableHint, "singular exponent hint <= -1");
  if (!(hi > lo)) throw Error(ErrorCode::InvalidArgument, "empty integration interval");
  const GaussRule& rule = gauss_legendre(cfg.nodes_per_panel);
  const double width = hi - lo;
  const bool graded = lo == 0.0 && !is_nonneg_integer(hint);

  std::vector<Panel> panels;
  int levels = 0;
  cplx tail = 0.0;
  double tail_err = 0.0;
  if (graded) {
    for (; levels < cfg.grading_levels; ++levels)
      panels.push_back(make_panel(f, rule, lo + width * std::ldexp(1.0, -(levels + 1)),
                                  lo + width * std::ldexp(1.0, -levels)));
  } else {
    panels.push_back(make_panel(f, rule, lo, hi));
  }

  auto running_value = [&] {
    cplx s = 0.0;
    for (const Panel& p : panels) s += p.value();
    return s;
  };
  auto tolerance = [&](cplx v) { return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(v)); };

  if (graded) {
    cplx v = running_value();
    tail = tail_estimate(f, lo, width * std::ldexp(1.0, -levels));
    tail_err = std::abs(tail);
    while (tail_err > 0.25 * tolerance(v) && levels < cfg.max_grading_levels) {
      panels.push_back(make_panel(f, rule, lo + width * std::ldexp(1.0, -(levels + 1)),
                                  lo + width * std::ldexp(1.0, -levels)));
      v += panels.back().value();
      ++levels;
      tail = tail_estimate(f, lo, width * std::ldexp(1.0, -levels));
      tail_err = std::abs(tail);
    }
    if (!std::isfinite(tail_err)) throw Error(ErrorCode::NoConvergence, "integrand tail at 0 not resolved");
  }

  auto by_err = [&](std::size_t i, std::size_t j) { return panels[i].err < panels[j].err; };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(by_err)> heap(by_err);
  double err_sum = tail_err;
  cplx value = 0.0;
  for (std::size_t i = 0; i < panels.size(); ++i) {
    heap.push(i);
    err_sum += panels[i].err;
    value += panels[i].value();
  }

  int subdivisions = 0;
  while (err_sum > tolerance(value)) {
    if (subdivisions >= cfg.max_subdivisions)
      throw Error(ErrorCode::NoConvergence, "subdivision cap reached (error " + std::to_string(err_sum) + ")");
    std::size_t i = heap.top();
    heap.pop();
    Panel p = panels[i];
    double m = 0.5 * (p.a + p.b);
    if (!(m > p.a && m < p.b))
      throw Error(ErrorCode::NoConvergence, "panel width underflow near x = " + std::to_string(p.a));
    Panel l = make_panel(f, rule, p.a, m, p.left);
    Panel r = make_panel(f, rule, m, p.b, p.right);
    err_sum += l.err + r.err - p.err;
    value += l.value() + r.value() - p.value();
    panels[i] = l;
    panels.push_back(r);
    heap.push(i);
    heap.push(panels.size() - 1);
    ++subdivisions;
    if (subdivisions % 256 == 0) {
      err_sum = tail_err;
      for (const Panel& q : panels) err_sum += q.err;
      value = running_value();
    }
  }

  std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  QuadratureResult res;
  res.value = tail;
  res.error_estimate = tail_err;
  for (const Panel& q : panels) {
    res.value += q.value();
    res.error_estimate += q.err;
  }
  res.subdivisions = subdivisions;
  if (!std::isfinite(res.value.real()) || !std::isfinite(res.value.imag()))
    throw Error(ErrorCode::NoConvergence, "non-finite integral");
  return res;
}

cplx integrate_panels(const Integrand& f, std::span<const double> breakpoints, int nodes_per_panel) {
  const GaussRule& rule = gauss_legendre(nodes_per_panel);
  cplx s = 0.0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) s += gauss_on(f, rule, breakpoints[i], breakpoints[i + 1]);
  return s;
}

std::vector<QuadratureResult> integrate_batch(std::span<const Integrand> fs, std::span<const double> hints,
                                              const QuadratureConfig& cfg, bool parallel) {
  if (fs.size() != hints.size()) throw Error(ErrorCode::InvalidArgument, "integrand/hint count mismatch");
  std::vector<QuadratureResult> out(fs.size());
  std::vector<std::string> failures(fs.size());
  std::vector<int> codes(fs.size(), -1);
  const long n = static_cast<long>(fs.size());
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (long i = 0; i < n; ++i) {
    try {
      out[i] = integrate(fs[i], hints[i], cfg);
    } catch (const Error& e) {
      codes[i] = static_cast<int>(e.code());
      failures[i] = e.what();
    }
  }
  for (long i = 0; i < n; ++i)
    if (codes[i] >= 0) throw Error(static_cast<ErrorCode>(codes[i]), failures[i]);
  return out;
}

QuadratureResult integrate_product(const MonomialSum& f, const MonomialSum& g, const QuadratureConfig& cfg) {
  double hint = product_exponent_hint(f, g);
  return integrate([&](double x) { return std::conj(f(x)) * g(x); }, hint, cfg);
}

cplx oracle_form(const FormKind& kind, const MonomialSum& f, const MonomialSum& g, const QuadratureConfig& cfg) {
  require_form_domain(kind, f);
  require_form_domain(kind, g);
  switch (kind.tag) {
    case FormKind::Tag::L2: return integrate_product(f, g, cfg).value;
    case FormKind::Tag::H1Semi:
    case FormKind::Tag::FriedrichsLaplacian: return integrate_product(differentiate(f), differentiate(g), cfg).value;
    case FormKind::Tag::KreinLaplacian: {
      constexpr double tiny = 1e-300;
      cplx jf = f(1.0) - f(tiny), jg = g(1.0) - g(tiny);
      return integrate_product(differentiate(f), differentiate(g), cfg).value - std::conj(jf) * jg;
    }
    case FormKind::Tag::HardyMultiplication:
      return kind.gamma * integrate_product(f.shifted(-1.0), g.shifted(-1.0), cfg).value;
  }
  return 0.0;
}

}  // namespace bkvg
