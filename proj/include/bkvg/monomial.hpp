#pragma once

#include <complex>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bkvg {

using cplx = std::complex<double>;

struct Term {
  cplx coefficient;
  cplx exponent;
};

// Finite sum  sum_k c_k x^{a_k}  on (0,1).  Always canonical: exponents are
// pairwise distinct (merged within kExponentMergeTol), ordered by (Re, Im).
class MonomialSum {
 public:
  static constexpr double kExponentMergeTol = 1e-12;
  static constexpr double kCancellationTol = 1e-12;

  MonomialSum() = default;
  MonomialSum(std::initializer_list<Term> terms);
  explicit MonomialSum(std::vector<Term> terms);

  static MonomialSum constant(cplx c);
  static MonomialSum power(cplx exponent, cplx coefficient = 1.0);
  // Polynomial sum_j coeffs[j] x^j.
  static MonomialSum polynomial(std::span<const cplx> coeffs);

  std::span<const Term> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  MonomialSum operator+(const MonomialSum& other) const;
  MonomialSum operator-(const MonomialSum& other) const;
  MonomialSum operator-() const;
  MonomialSum operator*(cplx s) const;
  friend MonomialSum operator*(cplx s, const MonomialSum& f) { return f * s; }
  MonomialSum& operator+=(const MonomialSum& other);

  // Pointwise product.
  MonomialSum operator*(const MonomialSum& other) const;
  // Multiplication by x^p.
  MonomialSum shifted(cplx p) const;
  // Pointwise complex conjugate: conj(c) x^{conj(a)}.
  MonomialSum conjugated() const;

  cplx operator()(double x) const;

  bool is_square_integrable() const;
  bool is_h1() const;
  bool has_trace_at_zero() const;
  // x^{-1} f square integrable.
  bool is_hardy_weighted() const;
  // Smallest Re(a) over terms, +inf for the zero function.
  double min_real_exponent() const;
  double coefficient_scale() const;

  // Coefficient of the term whose exponent matches a within the merge tolerance.
  cplx coefficient_of(cplx a) const;

  std::string to_string() const;

 private:
  void canonicalize();
  std::vector<Term> terms_;
};

MonomialSum differentiate(const MonomialSum& f);
cplx evaluate(const MonomialSum& f, double x);

struct BoundaryTrace {
  std::optional<cplx> at_zero;  // empty when f(0+) diverges or oscillates
  cplx at_one;
};
BoundaryTrace boundary_trace(const MonomialSum& f);

cplx l2_inner(const MonomialSum& f, const MonomialSum& g);

struct FormKind {
  enum class Tag { L2, H1Semi, KreinLaplacian, FriedrichsLaplacian, HardyMultiplication };
  Tag tag = Tag::L2;
  double gamma = 0.0;

  static FormKind l2() { return {Tag::L2, 0.0}; }
  static FormKind h1_semi() { return {Tag::H1Semi, 0.0}; }
  static FormKind krein() { return {Tag::KreinLaplacian, 0.0}; }
  static FormKind friedrichs() { return {Tag::FriedrichsLaplacian, 0.0}; }
  static FormKind hardy(double gamma) { return {Tag::HardyMultiplication, gamma}; }

  std::string name() const;
};

// Throws DomainViolation when f is outside the form domain of kind.
void require_form_domain(const FormKind& kind, const MonomialSum& f);
bool in_form_domain(const FormKind& kind, const MonomialSum& f);

cplx form_value(const FormKind& kind, const MonomialSum& f, const MonomialSum& g);

// Smallest Re of the exponents of conj(f)*g: the dominant power at 0.
double product_exponent_hint(const MonomialSum& f, const MonomialSum& g);

}  // namespace bkvg
