#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numeric>
#include <random>

#include "bkvg/error.hpp"
#include "bkvg/mesh.hpp"
#include "bkvg/tridiagonal.hpp"

using namespace bkvg;

namespace {

SymTridiagonal random_tridiagonal(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  SymTridiagonal T;
  for (int i = 0; i < n; ++i) T.diag.push_back(u(rng));
  for (int i = 0; i + 1 < n; ++i) T.off.push_back(u(rng));
  return T;
}

}  // namespace

TEST_SUITE("mesh_tridiagonal") {
  TEST_CASE("graded spacings") {
    MeshSpec m = default_range_mesh(1024);
    std::vector<double> h = m.spacings();
    CHECK(h.size() == 1025);
    CHECK(std::accumulate(h.begin(), h.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(h.front() < h.back());
    std::vector<double> x = m.nodes();
    CHECK(x.size() == 1024);
    CHECK(std::is_sorted(x.begin(), x.end()));
    MeshSpec r = m.refined();
    CHECK(r.node_count == 2048);
    CHECK(r.grading_ratio == doctest::Approx(std::sqrt(m.grading_ratio)));
    CHECK(default_range_mesh(2048).grading_ratio == doctest::Approx(r.grading_ratio).epsilon(1e-14));
  }

  TEST_CASE("log-uniform mesh") {
    MeshSpec m = default_bvp_mesh();
    std::vector<double> x = m.nodes();
    CHECK(x.size() == 2000);
    CHECK(x.back() == 1.0);
    CHECK(x.front() == doctest::Approx(std::exp(-36.0)).epsilon(1e-10));
    CHECK(m.refined().node_count == 3999);
    CHECK_THROWS_AS(m.spacings(), Error);
  }

  TEST_CASE("mesh validation") {
    MeshSpec m;
    m.node_count = 8;
    CHECK_THROWS_AS(m.validate(), Error);
    m.node_count = 64;
    m.grading_ratio = 1.5;
    CHECK_THROWS_AS(m.validate(), Error);
    m.grading_ratio = 1.0;
    m.layout = MeshLayout::LogUniform;
    CHECK_THROWS_AS(m.validate(), Error);
  }

  TEST_CASE("Sturm counts and extreme eigenvalues match a dense solver") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
      SymTridiagonal T = random_tridiagonal(rng, 5 + trial);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_dense(T));
      Eigen::VectorXd ev = es.eigenvalues();
      CHECK(largest_eigenvalue(T) == doctest::Approx(ev.maxCoeff()).epsilon(1e-12));
      CHECK(smallest_eigenvalue(T) == doctest::Approx(ev.minCoeff()).epsilon(1e-12));
      double mid = 0.5 * (ev(0) + ev(1));
      CHECK(count_below(T, mid) == 1);
      CHECK(count_below(T, ev.maxCoeff() + 1.0) == T.size());
    }
  }

  TEST_CASE("complex Thomas sweep") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const int n = 50;
    std::vector<cplx> sub(n - 1), sup(n - 1), diag(n), rhs(n);
    for (int i = 0; i < n; ++i) {
      diag[i] = cplx(4.0 + u(rng), u(rng));
      rhs[i] = cplx(u(rng), u(rng));
    }
    for (int i = 0; i + 1 < n; ++i) {
      sub[i] = cplx(u(rng), u(rng));
      sup[i] = cplx(u(rng), u(rng));
    }
    std::vector<cplx> x = solve_tridiagonal(sub, diag, sup, rhs);
    for (int i = 0; i < n; ++i) {
      cplx r = diag[i] * x[i] - rhs[i];
      if (i > 0) r += sub[i - 1] * x[i - 1];
      if (i + 1 < n) r += sup[i] * x[i + 1];
      CHECK(std::abs(r) < 1e-13);
    }
    std::vector<cplx> zero(2, 0.0);
    CHECK_THROWS_AS(solve_tridiagonal({0.0}, zero, {0.0}, zero), Error);
  }

  TEST_CASE("bordered pencil inertia matches the dense pencil") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
      const int n = 30, p = 1 + trial % 2;
      BorderedPencil P;
      P.k.diag.assign(n, 2.0);
      P.k.off.assign(n - 1, -1.0);
      P.m.diag.assign(n, 4.0 / 6.0);
      P.m.off.assign(n - 1, 1.0 / 6.0);
      for (int i = 0; i < n; ++i) P.k.diag[i] += 0.3 * u(rng);
      P.k_border = Eigen::MatrixXcd::Zero(n, p);
      P.m_border = Eigen::MatrixXcd::Zero(n, p);
      for (int i = 0; i < n; ++i)
        for (int a = 0; a < p; ++a) {
          P.k_border(i, a) = cplx(u(rng), u(rng)) * 0.2;
          P.m_border(i, a) = cplx(u(rng), u(rng)) * 0.05;
        }
      P.k_corner = Eigen::MatrixXcd::Identity(p, p) * cplx(trial % 3 == 0 ? -1.0 : 1.5);
      P.m_corner = Eigen::MatrixXcd::Identity(p, p);
      CHECK(smallest_pencil_eigenvalue(P) ==
            doctest::Approx(smallest_pencil_eigenvalue_dense(P)).epsilon(1e-9));
    }
  }
}
