#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bkvg/discretization.hpp"
#include "bkvg/error.hpp"

using namespace bkvg;

namespace {

constexpr double kPi = std::numbers::pi;

const CertifiedFamily& a2() {
  static const CertifiedFamily cf = certify(instantiate(Family::HardyImaginary, 2.0));
  return cf;
}

}  // namespace

TEST_SUITE("discretization") {
  TEST_CASE("one by one matrix") {
    SymTridiagonal h{{2.0}, {}}, s{{1.0}, {}};
    DiscreteOperator op = from_parts(h, s);
    NumericalRangeReport r = numerical_range_sweep(op, 64);
    CHECK(r.arg_sup == doctest::Approx(std::atan(0.5)).epsilon(1e-12));
    CHECK(r.arg_inf == doctest::Approx(std::atan(0.5)).epsilon(1e-12));
    CHECK_FALSE(r.extremal);
    for (const auto& [t, v] : r.support_samples) CHECK(v == doctest::Approx(2.0 * std::cos(t) - std::sin(t)));
  }

  TEST_CASE("plus and minus share the Hermitian part") {
    for (Family f : {Family::HardyImaginary, Family::HardyReal}) {
      FamilyInstance inst = instantiate(f, 2.0);
      DiscreteOperator p = discretize(inst, Sign::Plus, default_range_mesh(256));
      DiscreteOperator m = discretize(inst, Sign::Minus, default_range_mesh(256));
      CHECK(p.hermitian.diag == m.hermitian.diag);
      CHECK(p.hermitian.off == m.hermitian.off);
      for (std::size_t i = 0; i < p.size(); ++i) CHECK(p.skew.diag[i] == -m.skew.diag[i]);
    }
  }

  TEST_CASE("real part ground state") {
    MeshSpec uniform;
    uniform.node_count = 2000;
    DiscreteOperator op = discretize(instantiate(Family::HardyImaginary, 1.0), Sign::Minus, uniform);
    CHECK(smallest_eigenvalue(op.hermitian) == doctest::Approx(kPi * kPi).epsilon(1e-3));
    CHECK(dirichlet_laplacian_ground_state(2000) == doctest::Approx(kPi * kPi).epsilon(1e-3));
  }

  TEST_CASE("sweep agrees with the dense reference") {
    DiscreteOperator op = discretize(instantiate(Family::HardyImaginary, 2.0), Sign::Plus, default_range_mesh(64));
    NumericalRangeReport fast = numerical_range_sweep(op, 32), dense = numerical_range_sweep_dense(op, 32);
    for (std::size_t k = 0; k < fast.support_samples.size(); ++k) {
      double a = fast.support_samples[k].second, b = dense.support_samples[k].second;
      CHECK(std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)));
    }
    CHECK(fast.arg_sup == doctest::Approx(dense.arg_sup).epsilon(1e-6));
    Eigen::MatrixXcd M = op.dense();
    CHECK(M.rows() == 64);
    CHECK((M - M.adjoint()).norm() > 0.0);
  }

  TEST_CASE("sweep is schedule independent and convex") {
    DiscreteOperator op = discretize(instantiate(Family::HardyReal, 2.0), Sign::Plus, default_range_mesh(512));
    NumericalRangeReport par = numerical_range_sweep(op, 128, 0.02, true);
    NumericalRangeReport ser = numerical_range_sweep(op, 128, 0.02, false);
    CHECK(par.support_samples == ser.support_samples);
    CHECK(par.arg_sup == ser.arg_sup);
    CHECK(par.support_convex);
    CHECK(par.arg_inf >= -kPi / 2 - par.angle_tol);
    CHECK(par.arg_sup <= kPi / 2 + par.angle_tol);
    CHECK_THROWS_AS(numerical_range_sweep(op, 4), Error);
  }

  TEST_CASE("sector classification") {
    FamilyInstance a = instantiate(Family::HardyImaginary, 2.0);
    NumericalRangeReport r1 = numerical_range_sweep(discretize(a, Sign::Plus, default_range_mesh(1024)), 256);
    NumericalRangeReport r2 = numerical_range_sweep(discretize(a, Sign::Plus, default_range_mesh(2048)), 256);
    CHECK_FALSE(r1.extremal);
    CHECK_FALSE(r2.extremal);
    CHECK(std::abs(r1.arg_sup - r2.arg_sup) <= 0.01);
    CHECK(std::abs(r1.arg_inf - r2.arg_inf) <= 0.01);
    // frozen at n = 1024: the sector stays inside atan(4 gamma) from the Hardy inequality
    CHECK(r1.arg_sup == doctest::Approx(1.417951847).epsilon(1e-8));
    CHECK(r1.arg_sup < std::atan(8.0));
    CHECK(std::abs(r1.arg_inf) < 1e-4);

    NumericalRangeReport c = numerical_range_sweep(discretize(instantiate(Family::HardyReal, 2.0), Sign::Plus,
                                                              default_range_mesh(1024)), 256);
    CHECK(c.extremal);
  }

  TEST_CASE("Kato sector witness") {
    FamilyInstance c = instantiate(Family::HardyReal, 2.0);
    std::vector<double> k = kato_sector_witness(c, 0.3, 8);
    REQUIRE(k.size() == 8);
    for (std::size_t i = 1; i < k.size(); ++i) CHECK(k[i] < k[i - 1]);
    CHECK(k.back() <= -1e3);
    CHECK(k.front() == doctest::Approx(-87.46525528).epsilon(1e-8));
    CHECK(k.back() == doctest::Approx(-5163.923923).epsilon(1e-8));
    for (double v : kato_sector_witness(c, 0.0, 8)) CHECK(v >= 0.0);
    CHECK_THROWS_AS(kato_sector_witness(instantiate(Family::HardyImaginary, 2.0), 0.3, 4), Error);
  }

  TEST_CASE("Rayleigh infimum on extensions") {
    const CertifiedFamily& cf = a2();
    const double pi2 = kPi * kPi;
    CHECK(rayleigh_inf_on_extension(ExtensionSpec::friedrichs(cf)) == doctest::Approx(pi2).epsilon(1e-3));
    CHECK(std::abs(rayleigh_inf_on_extension(ExtensionSpec::with_coefficient(cf, d_for_margin(cf, 0.0)))) <=
          0.02 * pi2);
    for (double m : {0.2, 1.0, 5.0}) {
      ExtensionSpec s = ExtensionSpec::with_coefficient(cf, d_for_margin(cf, m));
      double v = rayleigh_inf_on_extension(s);
      LowerBound lb = lower_bound_sandwich(s);
      CHECK(v >= lb.harmonic_lo * 0.98);
      CHECK(v <= lb.harmonic_hi * 1.02);
      // inf = k^2 with tan k = k / (1 - m)
      double lo = 1e-9, hi = kPi - 1e-9;
      auto f = [&](double k) { return (1.0 - m) * std::sin(k) - k * std::cos(k); };
      for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        ((f(lo) > 0) == (f(mid) > 0) ? lo : hi) = mid;
      }
      CHECK(v == doctest::Approx(lo * lo).epsilon(1e-4));
    }
    CHECK(rayleigh_inf_on_extension(ExtensionSpec::with_coefficient(cf, d_for_margin(cf, 0.2))) ==
          doctest::Approx(0.5765499623).epsilon(1e-8));
  }

  TEST_CASE("Rayleigh pencil inertia matches the dense pencil") {
    const CertifiedFamily& cf = a2();
    MeshSpec small;
    small.node_count = 48;
    BorderedPencil P = rayleigh_pencil(ExtensionSpec::with_coefficient(cf, d_for_margin(cf, 0.7, 0.3)), small);
    CHECK(smallest_pencil_eigenvalue(P) == doctest::Approx(smallest_pencil_eigenvalue_dense(P)).epsilon(1e-9));
    const CertifiedFamily c = certify(instantiate(Family::HardyReal, 2.0));
    CHECK_THROWS_AS(rayleigh_pencil(ExtensionSpec::with_coefficient(c, d_for_margin(c, 1.0)), small), Error);
  }

  TEST_CASE("non-closability witness") {
    const CertifiedFamily c = certify(instantiate(Family::HardyReal, 2.0));
    NonclosabilityWitness w = nonclosability_witness(ExtensionSpec::with_coefficient(c, d_for_margin(c, 0.5)), 0.125);
    REQUIRE(w.norms.size() == 10);
    CHECK(w.norms.front() / w.norms.back() >= 10.0);
    for (std::size_t i = 1; i < w.norms.size(); ++i) CHECK(w.norms[i] < w.norms[i - 1]);
    CHECK(w.q == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(w.form_values.back() - w.q) <= 0.05 * w.q);
    CHECK_THROWS_AS(nonclosability_witness(ExtensionSpec::with_coefficient(c, d_for_margin(c, 0.0)), 0.125), Error);
  }
}
