#include <doctest.h>

#include <cmath>
#include <random>

#include "bkvg/bracket.hpp"
#include "bkvg/error.hpp"

using namespace bkvg;

namespace {

struct Frozen {
  double gamma;
  cplx sigma;
  double tau;
  double nu;
};

// closed forms, checked against the quadrature and BVP pipelines
const Frozen kFrozen[] = {
    {0.5, {0.30562163651691732, 0.0}, 0.13600982475703446, 0.39307568887871164},
    {1.0, {0.27774034606017384, 0.0}, 0.3002425902201204, 0.62481053384382657},
    {2.0, {0.24221022578984927, 0.0}, 0.56432242226560214, 0.93956490916664126},
    {5.0, {0.19075606180758181, 0.0}, 1.1211486820500451, 1.5421164188583811},
};

}  // namespace

TEST_SUITE("bracket") {
  TEST_CASE("frozen constants") {
    for (const auto& f : kFrozen) {
      FamilyInstance a = instantiate(Family::HardyImaginary, f.gamma), c = instantiate(Family::HardyReal, f.gamma);
      CHECK(std::abs(sigma(a) - f.sigma) < 1e-15);
      CHECK(tau(a) == doctest::Approx(f.tau).epsilon(1e-15));
      CHECK(std::abs(mu(c) - f.sigma) < 1e-15);
      CHECK(nu(c) == doctest::Approx(f.nu).epsilon(1e-15));
    }
  }

  TEST_CASE("wrong family") {
    FamilyInstance a = instantiate(Family::HardyImaginary, 1.0);
    CHECK_THROWS_AS(mu(a), Error);
    CHECK_THROWS_AS(nu(a), Error);
    CHECK_THROWS_AS(sigma(instantiate(Family::HardyReal, 1.0)), Error);
  }

  TEST_CASE("bracket values") {
    FamilyInstance inst = instantiate(Family::HardyImaginary, 2.0);
    BracketContext ctx(inst);
    MonomialSum v = MonomialSum::power(inst.omega_plus), k = MonomialSum::power(std::conj(inst.omega_plus));
    CHECK(bracket(ctx, v, MonomialSum()) == cplx(0.0));
    CHECK(std::abs(bracket(ctx, v, k) - sigma(inst)) < 1e-14);

    FamilyInstance two = instantiate(Family::HardyImaginary, 1.0);
    BracketContext c2(two);
    CHECK(std::abs(bracket(c2, MonomialSum::power(two.omega_plus), chi_vector(two).companion)) < 1e-13);
  }

  TEST_CASE("q vanishes on the Friedrichs domain") {
    for (Family f : {Family::HardyImaginary, Family::HardyReal}) {
      FamilyInstance inst = instantiate(f, 2.0);
      BracketContext ctx(inst);
      MonomialSum u = friedrichs_inverse_kernel(inst, MonomialSum::power(std::conj(inst.omega_plus)));
      CHECK(std::abs(q_form(ctx, u)) < 1e-14);
      CHECK(q_form(ctx, MonomialSum()) == 0.0);
    }
  }

  TEST_CASE("q on an extension vector is the margin") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (double g : {0.5, 1.0, 2.0, 5.0})
      for (Family f : {Family::HardyImaginary, Family::HardyReal}) {
        FamilyInstance inst = instantiate(f, g);
        BracketContext ctx(inst);
        const cplx d(u(rng), u(rng));
        MonomialSum v = friedrichs_inverse_kernel(inst, d * MonomialSum::power(std::conj(inst.omega_plus))) +
                        MonomialSum::power(inst.omega_plus);
        double expect = (d * coupling_closed_form(inst)).real() - krein_norm_closed_form(inst);
        CHECK(q_form(ctx, v) == doctest::Approx(expect).epsilon(1e-12));
      }
  }

  TEST_CASE("q is Hermitian") {
    FamilyInstance inst = instantiate(Family::HardyImaginary, 1.0);
    BracketContext ctx(inst);
    MonomialSum k = MonomialSum::power(std::conj(inst.omega_plus));
    MonomialSum v1 = friedrichs_inverse_kernel(inst, cplx(0.3, 1.0) * k) + MonomialSum::power(inst.omega_plus);
    MonomialSum v2 = friedrichs_inverse_kernel(inst, cplx(-1.0, 0.2) * k) + 2.0 * MonomialSum::power(inst.omega_plus);
    CHECK(std::abs(q_sesquilinear(ctx, v1, v2) - std::conj(q_sesquilinear(ctx, v2, v1))) < 1e-14);
  }

  TEST_CASE("two-pipeline certification") {
    for (double g : {0.5, 1.0, 2.0, 5.0})
      for (Family f : {Family::HardyImaginary, Family::HardyReal}) {
        CertifiedConstants c = certify_constants(instantiate(f, g));
        CHECK(c.certified);
        CHECK(c.coupling.status == Certification::BothAgree);
        CHECK(c.krein_norm.status == Certification::BothAgree);
        CHECK(c.coupling.relative_gap <= 1e-6);
        CHECK(c.krein_norm.relative_gap <= 1e-8);
      }
  }

  TEST_CASE("a tight tolerance flags the oracle value") {
    CertificationConfig cfg;
    cfg.relative_tol = 1e-15;
    CertifiedConstants c = certify_constants(instantiate(Family::HardyImaginary, 2.0), cfg);
    CHECK_FALSE(c.certified);
    CHECK(c.coupling.status == Certification::Oracle);
    CHECK(c.coupling.value == c.coupling.oracle);
    CHECK_FALSE(c.notes.empty());
  }

  TEST_CASE("certification names") {
    CHECK(certification_name(Certification::ClosedForm) == "closed-form");
    CHECK(certification_name(Certification::Oracle) == "oracle");
    CHECK(certification_name(Certification::BothAgree) == "both-agree");
  }
}
