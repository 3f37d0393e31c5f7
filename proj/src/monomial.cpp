#include "bkvg/monomial.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "bkvg/error.hpp"

namespace bkvg {

namespace {

cplx xpow(double x, cplx a) {
  if (a == cplx(0.0, 0.0)) return 1.0;
  if (a.imag() == 0.0) return std::pow(x, a.real());
  return std::exp(a * std::log(x));
}

double ordered_sum(std::vector<double>& v) {
  std::sort(v.begin(), v.end(), [](double a, double b) {
    return std::abs(a) != std::abs(b) ? std::abs(a) < std::abs(b) : a < b;
  });
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

bool trace_zero(const MonomialSum& f, const BoundaryTrace& t) {
  double scale = std::max(1.0, f.coefficient_scale());
  return t.at_zero && std::abs(*t.at_zero) <= 1e-12 * scale && std::abs(t.at_one) <= 1e-12 * scale;
}

}  // namespace

MonomialSum::MonomialSum(std::initializer_list<Term> terms) : terms_(terms) { canonicalize(); }

MonomialSum::MonomialSum(std::vector<Term> terms) : terms_(std::move(terms)) { canonicalize(); }

MonomialSum MonomialSum::constant(cplx c) { return MonomialSum{{c, 0.0}}; }

MonomialSum MonomialSum::power(cplx exponent, cplx coefficient) {
  return MonomialSum{{coefficient, exponent}};
}

MonomialSum MonomialSum::polynomial(std::span<const cplx> coeffs) {
  std::vector<Term> t;
  for (std::size_t j = 0; j < coeffs.size(); ++j) t.push_back({coeffs[j], double(j)});
  return MonomialSum(std::move(t));
}

void MonomialSum::canonicalize() {
  struct Group {
    cplx exponent;
    cplx sum;
    double max_abs;
  };
  std::vector<Group> groups;
  for (const Term& t : terms_) {
    if (t.coefficient == cplx(0.0, 0.0)) continue;
    auto it = std::find_if(groups.begin(), groups.end(), [&](const Group& g) {
      return std::abs(g.exponent - t.exponent) <= kExponentMergeTol;
    });
    if (it == groups.end()) {
      groups.push_back({t.exponent, t.coefficient, std::abs(t.coefficient)});
    } else {
      it->sum += t.coefficient;
      it->max_abs = std::max(it->max_abs, std::abs(t.coefficient));
    }
  }
  terms_.clear();
  for (const Group& g : groups) {
    if (g.sum == cplx(0.0, 0.0)) continue;
    if (std::abs(g.sum) <= kCancellationTol * g.max_abs) continue;
    terms_.push_back({g.sum, g.exponent});
  }
  std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) {
    if (a.exponent.real() != b.exponent.real()) return a.exponent.real() < b.exponent.real();
    return a.exponent.imag() < b.exponent.imag();
  });
}

MonomialSum MonomialSum::operator+(const MonomialSum& other) const {
  std::vector<Term> t(terms_);
  t.insert(t.end(), other.terms_.begin(), other.terms_.end());
  return MonomialSum(std::move(t));
}

MonomialSum MonomialSum::operator-(const MonomialSum& other) const { return *this + (-other); }

MonomialSum MonomialSum::operator-() const { return *this * cplx(-1.0, 0.0); }

MonomialSum MonomialSum::operator*(cplx s) const {
  std::vector<Term> t(terms_);
  for (Term& x : t) x.coefficient *= s;
  return MonomialSum(std::move(t));
}

MonomialSum& MonomialSum::operator+=(const MonomialSum& other) {
  *this = *this + other;
  return *this;
}

MonomialSum MonomialSum::operator*(const MonomialSum& other) const {
  std::vector<Term> t;
  t.reserve(terms_.size() * other.terms_.size());
  for (const Term& a : terms_)
    for (const Term& b : other.terms_) t.push_back({a.coefficient * b.coefficient, a.exponent + b.exponent});
  return MonomialSum(std::move(t));
}

MonomialSum MonomialSum::shifted(cplx p) const {
  std::vector<Term> t(terms_);
  for (Term& x : t) x.exponent += p;
  return MonomialSum(std::move(t));
}

MonomialSum MonomialSum::conjugated() const {
  std::vector<Term> t(terms_);
  for (Term& x : t) {
    x.coefficient = std::conj(x.coefficient);
    x.exponent = std::conj(x.exponent);
  }
  return MonomialSum(std::move(t));
}

cplx MonomialSum::operator()(double x) const {
  cplx s = 0.0;
  for (const Term& t : terms_) s += t.coefficient * xpow(x, t.exponent);
  return s;
}

bool MonomialSum::is_square_integrable() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.exponent.real() > -0.5; });
}

bool MonomialSum::is_h1() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) {
    return t.exponent == cplx(0.0, 0.0) || t.exponent.real() > 0.5;
  });
}

bool MonomialSum::has_trace_at_zero() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) {
    return t.exponent == cplx(0.0, 0.0) || t.exponent.real() > 0.0;
  });
}

bool MonomialSum::is_hardy_weighted() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.exponent.real() > 0.5; });
}

double MonomialSum::min_real_exponent() const {
  double m = std::numeric_limits<double>::infinity();
  for (const Term& t : terms_) m = std::min(m, t.exponent.real());
  return m;
}

double MonomialSum::coefficient_scale() const {
  double s = 0.0;
  for (const Term& t : terms_) s += std::abs(t.coefficient);
  return s;
}

cplx MonomialSum::coefficient_of(cplx a) const {
  for (const Term& t : terms_)
    if (std::abs(t.exponent - a) <= kExponentMergeTol) return t.coefficient;
  return 0.0;
}

std::string MonomialSum::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  char buf[160];
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const Term& t = terms_[i];
    std::snprintf(buf, sizeof buf, "%s(%.6g%+.6gi) x^(%.6g%+.6gi)", i ? " + " : "", t.coefficient.real(),
                  t.coefficient.imag(), t.exponent.real(), t.exponent.imag());
    out += buf;
  }
  return out;
}

MonomialSum differentiate(const MonomialSum& f) {
  std::vector<Term> t;
  for (const Term& x : f.terms()) t.push_back({x.coefficient * x.exponent, x.exponent - 1.0});
  return MonomialSum(std::move(t));
}

cplx evaluate(const MonomialSum& f, double x) {
  if (!(x > 0.0 && x <= 1.0)) throw Error(ErrorCode::InvalidArgument, "evaluation point outside (0,1]");
  return f(x);
}

BoundaryTrace boundary_trace(const MonomialSum& f) {
  BoundaryTrace t;
  cplx at_one = 0.0;
  for (const Term& x : f.terms()) at_one += x.coefficient;
  t.at_one = at_one;
  if (f.has_trace_at_zero()) t.at_zero = f.coefficient_of(0.0);
  return t;
}

// Real and imaginary parts are summed in (|v|, v) order so that swapping the
// arguments reproduces the exact complex conjugate.
cplx l2_inner(const MonomialSum& f, const MonomialSum& g) {
  std::vector<double> re, im;
  re.reserve(f.size() * g.size());
  im.reserve(f.size() * g.size());
  for (const Term& a : f.terms()) {
    for (const Term& b : g.terms()) {
      cplx p = std::conj(a.exponent) + b.exponent + 1.0;
      if (p.real() <= 0.0) throw Error(ErrorCode::NonIntegrable, "exponent pair with Re(conj(a)+b) <= -1");
      cplx v = std::conj(a.coefficient) * b.coefficient / p;
      re.push_back(v.real());
      im.push_back(v.imag());
    }
  }
  return {ordered_sum(re), ordered_sum(im)};
}

std::string FormKind::name() const {
  switch (tag) {
    case Tag::L2: return "L2";
    case Tag::H1Semi: return "H1Semi";
    case Tag::KreinLaplacian: return "KreinLaplacian";
    case Tag::FriedrichsLaplacian: return "FriedrichsLaplacian";
    case Tag::HardyMultiplication: return "HardyMultiplication";
  }
  return "?";
}

bool in_form_domain(const FormKind& kind, const MonomialSum& f) {
  switch (kind.tag) {
    case FormKind::Tag::L2: return f.is_square_integrable();
    case FormKind::Tag::H1Semi:
    case FormKind::Tag::KreinLaplacian: return f.is_h1();
    case FormKind::Tag::FriedrichsLaplacian: return f.is_h1() && trace_zero(f, boundary_trace(f));
    case FormKind::Tag::HardyMultiplication: return f.is_hardy_weighted();
  }
  return false;
}

void require_form_domain(const FormKind& kind, const MonomialSum& f) {
  switch (kind.tag) {
    case FormKind::Tag::L2:
      if (!f.is_square_integrable()) throw Error(ErrorCode::DomainViolation, "not square integrable (Re a <= -1/2)");
      return;
    case FormKind::Tag::H1Semi:
    case FormKind::Tag::KreinLaplacian:
      if (!f.is_h1()) throw Error(ErrorCode::DomainViolation, "not in H1 (non-constant term with Re a <= 1/2)");
      return;
    case FormKind::Tag::FriedrichsLaplacian:
      if (!f.is_h1()) throw Error(ErrorCode::DomainViolation, "not in H1 (non-constant term with Re a <= 1/2)");
      if (!trace_zero(f, boundary_trace(f)))
        throw Error(ErrorCode::DomainViolation, "nonzero boundary trace (Friedrichs form needs f(0)=f(1)=0)");
      return;
    case FormKind::Tag::HardyMultiplication:
      if (!f.is_hardy_weighted()) throw Error(ErrorCode::DomainViolation, "x^-1 f not square integrable (Re a <= 1/2)");
      return;
  }
}

cplx form_value(const FormKind& kind, const MonomialSum& f, const MonomialSum& g) {
  require_form_domain(kind, f);
  require_form_domain(kind, g);
  switch (kind.tag) {
    case FormKind::Tag::L2: return l2_inner(f, g);
    case FormKind::Tag::H1Semi:
    case FormKind::Tag::FriedrichsLaplacian: return l2_inner(differentiate(f), differentiate(g));
    case FormKind::Tag::KreinLaplacian: {
      BoundaryTrace tf = boundary_trace(f), tg = boundary_trace(g);
      cplx jf = tf.at_one - *tf.at_zero, jg = tg.at_one - *tg.at_zero;
      return l2_inner(differentiate(f), differentiate(g)) - std::conj(jf) * jg;
    }
    case FormKind::Tag::HardyMultiplication: return kind.gamma * l2_inner(f.shifted(-1.0), g.shifted(-1.0));
  }
  return 0.0;
}

double product_exponent_hint(const MonomialSum& f, const MonomialSum& g) {
  double m = std::numeric_limits<double>::infinity();
  for (const Term& a : f.terms())
    for (const Term& b : g.terms()) m = std::min(m, a.exponent.real() + b.exponent.real());
  return std::isfinite(m) ? m : 0.0;
}

}  // namespace bkvg
