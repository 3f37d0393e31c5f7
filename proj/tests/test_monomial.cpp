#include <doctest.h>

#include <cmath>
#include <random>

#include "bkvg/error.hpp"
#include "bkvg/family.hpp"
#include "bkvg/monomial.hpp"

using namespace bkvg;

namespace {

const cplx I(0.0, 1.0);

MonomialSum random_sum(std::mt19937_64& rng, double min_re = -0.45) {
  std::uniform_int_distribution<int> n(1, 4);
  std::uniform_real_distribution<double> re(min_re, 3.0), im(-2.0, 2.0), c(-1.0, 1.0);
  std::vector<Term> t;
  for (int k = n(rng); k > 0; --k) t.push_back({cplx(c(rng), c(rng)), cplx(re(rng), im(rng))});
  return MonomialSum(t);
}

double max_diff(const MonomialSum& f, const MonomialSum& g) {
  double m = 0.0;
  for (double x : {0.01, 0.1, 0.3, 0.5, 0.77, 1.0}) m = std::max(m, std::abs(f(x) - g(x)));
  return m;
}

}  // namespace

TEST_SUITE("monomial") {
  TEST_CASE("power rule") {
    const cplx w(1.3, 0.6);
    MonomialSum d = differentiate(MonomialSum::power(w));
    REQUIRE(d.size() == 1);
    CHECK(std::abs(d.terms()[0].coefficient - w) < 1e-15);
    CHECK(std::abs(d.terms()[0].exponent - (w - 1.0)) < 1e-15);

    CHECK(differentiate(MonomialSum::constant(1.0)).is_zero());

    cplx c[] = {0.0, -1.0, 3.0};
    MonomialSum p = MonomialSum::polynomial(c);
    cplx e[] = {-1.0, 6.0};
    CHECK(max_diff(differentiate(p), MonomialSum::polynomial(e)) < 1e-15);
  }

  TEST_CASE("canonical form merges and cancels") {
    MonomialSum x = MonomialSum::power(1.0);
    CHECK((x + x - 2.0 * x).is_zero());
    MonomialSum a{{1.0, cplx(2.0, 0.0)}, {2.0, cplx(2.0 + 1e-14, 0.0)}};
    CHECK(a.size() == 1);
    CHECK(std::abs(a.coefficient_of(2.0) - 3.0) < 1e-15);
    MonomialSum b{{1.0, 3.0}, {1.0, 1.0}, {1.0, 2.0}};
    CHECK(b.terms()[0].exponent.real() == 1.0);
    CHECK(b.terms()[2].exponent.real() == 3.0);
  }

  TEST_CASE("inner product closed forms") {
    MonomialSum x = MonomialSum::power(1.0), x2 = MonomialSum::power(2.0), one = MonomialSum::constant(1.0);
    CHECK(l2_inner(x, x2).real() == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(l2_inner(one, one).real() == doctest::Approx(1.0));
    FamilyInstance inst = instantiate(Family::HardyImaginary, 2.0);
    MonomialSum v = MonomialSum::power(inst.omega_plus);
    CHECK(std::abs(l2_inner(v, v) - 1.0 / (2.0 * inst.omega_plus.real() + 1.0)) < 1e-15);
  }

  TEST_CASE("inner product is antilinear in the first slot") {
    MonomialSum x = MonomialSum::power(1.0);
    CHECK(std::abs(l2_inner(I * x, x) - (-I / 3.0)) < 1e-15);
    CHECK(std::abs(l2_inner(x, I * x) - (I / 3.0)) < 1e-15);
  }

  TEST_CASE("conjugate symmetry is exact on random sums") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 200; ++i) {
      MonomialSum f = random_sum(rng), g = random_sum(rng);
      cplx fg = l2_inner(f, g), gf = l2_inner(g, f);
      CHECK(fg == std::conj(gf));
    }
  }

  TEST_CASE("linearity and product evaluation") {
    std::mt19937_64 rng(29);
    for (int i = 0; i < 100; ++i) {
      MonomialSum f = random_sum(rng), g = random_sum(rng), h = random_sum(rng);
      cplx lhs = l2_inner(f, g + h), rhs = l2_inner(f, g) + l2_inner(f, h);
      CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(lhs)));
      double x = 0.1 + 0.008 * i;
      CHECK(std::abs((f * g)(x) - f(x) * g(x)) <= 1e-12 * (1.0 + std::abs(f(x) * g(x))));
      CHECK(std::abs(f.conjugated()(x) - std::conj(f(x))) <= 1e-13 * (1.0 + std::abs(f(x))));
    }
  }

  TEST_CASE("non-integrable products are rejected") {
    MonomialSum f = MonomialSum::power(-0.6);
    CHECK_THROWS_AS(l2_inner(f, f), Error);
    try {
      l2_inner(f, f);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NonIntegrable);
    }
  }

  TEST_CASE("evaluation domain") {
    MonomialSum x = MonomialSum::power(1.0);
    CHECK_THROWS_AS(evaluate(x, 0.0), Error);
    CHECK_THROWS_AS(evaluate(x, 1.5), Error);
    CHECK(evaluate(x, 0.5) == cplx(0.5));
  }

  TEST_CASE("boundary traces") {
    FamilyInstance inst = instantiate(Family::HardyImaginary, 1.0);
    MonomialSum wp = MonomialSum::power(inst.omega_plus);
    CHECK(std::abs(wp(1.0) - 1.0) < 1e-15);
    BoundaryTrace t = boundary_trace(wp);
    REQUIRE(t.at_zero.has_value());
    CHECK(*t.at_zero == cplx(0.0));

    cplx c[] = {0.0, -1.0, 1.0};
    BoundaryTrace q = boundary_trace(MonomialSum::polynomial(c));
    REQUIRE(q.at_zero.has_value());
    CHECK(std::abs(*q.at_zero) == 0.0);
    CHECK(std::abs(q.at_one) < 1e-15);

    BoundaryTrace m = boundary_trace(MonomialSum::power(inst.omega_minus));
    CHECK_FALSE(m.at_zero.has_value());
    CHECK(std::abs(m.at_one - 1.0) < 1e-15);
  }

  TEST_CASE("form values") {
    MonomialSum x = MonomialSum::power(1.0), x2 = MonomialSum::power(2.0);
    CHECK(std::abs(form_value(FormKind::krein(), x, x)) < 1e-15);
    CHECK(form_value(FormKind::krein(), x2, x2).real() == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(form_value(FormKind::hardy(2.0), x, x).real() == doctest::Approx(2.0));
    FamilyInstance inst = instantiate(Family::HardyImaginary, 2.0);
    MonomialSum v = MonomialSum::power(inst.omega_plus);
    const cplx w = inst.omega_plus;
    double tau = std::norm(w - 1.0) / (2.0 * w.real() - 1.0);
    CHECK(form_value(FormKind::krein(), v, v).real() == doctest::Approx(tau).epsilon(1e-13));
  }

  TEST_CASE("form domains") {
    MonomialSum one = MonomialSum::constant(1.0);
    CHECK(in_form_domain(FormKind::krein(), one));
    CHECK_FALSE(in_form_domain(FormKind::friedrichs(), one));
    CHECK_THROWS_AS(require_form_domain(FormKind::friedrichs(), one), Error);
    CHECK_FALSE(in_form_domain(FormKind::h1_semi(), MonomialSum::power(0.4)));
    CHECK_FALSE(in_form_domain(FormKind::hardy(1.0), MonomialSum::power(0.5)));
    CHECK(in_form_domain(FormKind::hardy(1.0), MonomialSum::power(0.51)));
    cplx c[] = {0.0, 1.0, -1.0};
    CHECK(in_form_domain(FormKind::friedrichs(), MonomialSum::polynomial(c)));
  }
}
