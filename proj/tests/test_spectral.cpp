#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>

#include "helpers.hpp"
#include "ohmnet/generators.hpp"
#include "ohmnet/operators.hpp"
#include "ohmnet/spectral.hpp"
#include "ohmnet/suite.hpp"

using namespace ohmnet;
using testutil::thrown_code;

TEST_CASE("transition spectra of the small instances") {
  const auto edge = spectral::eigen_spectrum(gen::path(2));
  CHECK(edge[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(edge[1] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(spectral::rho_star_of(edge) == doctest::Approx(1.0).epsilon(1e-12));

  const auto k4 = spectral::eigen_spectrum(gen::complete(4));
  CHECK(k4[0] == doctest::Approx(1.0).epsilon(1e-12));
  for (int i = 1; i < 4; ++i)
    CHECK(k4[i] == doctest::Approx(-1.0 / 3.0).epsilon(1e-12));
  CHECK(spectral::rho_star_of(k4) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-12));

  const auto p3 = spectral::eigen_spectrum(gen::path(3));
  CHECK(p3[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(p3[1] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(p3[2] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(spectral::rho_star_of(p3) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("grounded spectral radius") {
  CHECK(spectral::grounded_spectral_radius(gen::path(2)).rho_under == 0.0);

  const auto gr = spectral::grounded_spectral_radius(gen::path(3));
  CHECK(gr.rho_under ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(gr.perron_left(0) ==
        doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-10));
  CHECK(gr.perron_left(1) ==
        doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-10));
  CHECK(gr.perron_left.lpNorm<1>() == doctest::Approx(1.0).epsilon(1e-14));

  // 1 - v1 * P(1, sink) reproduces the radius.
  CHECK(spectral::perron_identity_gap(gen::path(3)) <= 1e-12);
}

TEST_CASE("perron identity and radius range on random graphs") {
  for (uint64_t s = 0; s < 20; ++s) {
    const int n = 3 + static_cast<int>(s % 10);
    const auto g = gen::random_connected(n, 0.5, 0.1, 10.0, 1000 + s);
    CAPTURE(n);
    CAPTURE(s);
    const auto gr = spectral::grounded_spectral_radius(g);
    CHECK(gr.rho_under > 0.0);
    CHECK(gr.rho_under < 1.0);
    CHECK(gr.perron_left.minCoeff() >= 0.0);
    const auto ops = grounded_operators(g);
    const double residual = (gr.perron_left.transpose() * ops.P_ground -
                             gr.rho_under * gr.perron_left.transpose())
                                .cwiseAbs()
                                .maxCoeff();
    CHECK(residual <= 1e-10);
    CHECK(spectral::perron_identity_gap(g) <= 1e-9);
  }
}

TEST_CASE("grounding shifts exactly one eigenvalue to zero") {
  for (const auto& ng : builtin_suite()) {
    CAPTURE(ng.name);
    const auto& g = ng.graph;
    const auto bundle = operator_matrices(g);
    Eigen::MatrixXd N_under = bundle.N;
    N_under.row(g.sink()).setZero();
    N_under.col(g.sink()).setZero();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es_under(N_under);

    Eigen::MatrixXd N_ground(g.n() - 1, g.n() - 1);
    for (int i = 0; i < g.n(); ++i) {
      if (i == g.sink()) continue;
      for (int j = 0; j < g.n(); ++j) {
        if (j == g.sink()) continue;
        N_ground(grounded_index(g, i), grounded_index(g, j)) = N_under(i, j);
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es_ground(N_ground);
    std::vector<double> expected(es_ground.eigenvalues().data(),
                                 es_ground.eigenvalues().data() + g.n() - 1);
    expected.push_back(0.0);
    std::sort(expected.begin(), expected.end());
    for (int i = 0; i < g.n(); ++i)
      CHECK(es_under.eigenvalues()(i) ==
            doctest::Approx(expected[i]).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("conductance by enumeration") {
  CHECK(spectral::conductance(gen::path(2)).value == 1.0);
  const auto k4 = spectral::conductance(gen::complete(4));
  CHECK(k4.value == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(k4.witness.size() == 2);
  CHECK(spectral::conductance(gen::path(3)).value == 1.0);
}

TEST_CASE("edge expansion by enumeration") {
  CHECK(spectral::edge_expansion(gen::path(2)).value == 1.0);
  const auto k4 = spectral::edge_expansion(gen::complete(4));
  CHECK(k4.value == 2.0);
  CHECK(k4.witness.size() == 2);
  const auto p3 = spectral::edge_expansion(gen::path(3));
  CHECK(p3.value == 1.0);
  CHECK(p3.witness == std::vector<int>{0});
}

TEST_CASE("enumeration refuses beyond 24 nodes") {
  const auto big = gen::cycle(25);
  CHECK(thrown_code([&] { spectral::conductance(big); }) ==
        ErrorCode::TooLargeForExact);
  CHECK(thrown_code([&] { spectral::edge_expansion(big); }) ==
        ErrorCode::TooLargeForExact);
}

TEST_CASE("cheeger bound examples") {
  const auto k4 = spectral::check_cheeger(gen::complete(4));
  CHECK(k4.lhs == doctest::Approx(-1.0 / 3.0).epsilon(1e-12));
  CHECK(k4.rhs == doctest::Approx(7.0 / 9.0).epsilon(1e-12));
  CHECK(k4.holds);

  const auto edge = spectral::check_cheeger(gen::path(2));
  CHECK(edge.lhs == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(edge.rhs == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(edge.holds);

  CHECK(spectral::check_cheeger(gen::path(3)).holds);
}

TEST_CASE("laplacian eigenvalues and the expansion bound") {
  const auto p3 = spectral::laplacian_spectrum(gen::path(3));
  CHECK(p3[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(p3[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(p3[2] == doctest::Approx(3.0).epsilon(1e-12));

  const auto k4 = spectral::check_lambda2_expansion(gen::complete(4));
  CHECK(k4.lhs == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(k4.rhs == doctest::Approx(3.0 - std::sqrt(5.0)).epsilon(1e-12));
  CHECK(k4.holds);

  const auto edge = spectral::check_lambda2_expansion(gen::path(2));
  CHECK(edge.lhs == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(edge.rhs == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(edge.holds);

  const auto path = spectral::check_lambda2_expansion(gen::path(3));
  CHECK(path.rhs == doctest::Approx(2.0 - std::sqrt(3.0)).epsilon(1e-12));
  CHECK(path.holds);
}

TEST_CASE("grounded eigenvalue lower bound") {
  const auto p3 = spectral::check_min_lambda(gen::path(3));
  CHECK_FALSE(p3.vacuous);
  CHECK(p3.lhs == doctest::Approx(1.0 - 1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(p3.rhs == doctest::Approx(1.0 / 12.0).epsilon(1e-12));
  CHECK(p3.holds);

  const auto edge = spectral::check_min_lambda(gen::path(2));
  CHECK(edge.vacuous);
  CHECK(edge.lhs == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(edge.holds);

  const auto k4 = spectral::check_min_lambda(gen::complete(4));
  CHECK_FALSE(k4.vacuous);
  CHECK(k4.holds);

  // Removing the sink disconnects this graph: the bound must be vacuous.
  const auto star = WeightedGraph::build(
      4, {{0, 3, 1.0}, {1, 3, 1.0}, {2, 3, 1.0}}, 0, 3);
  const auto vac = spectral::check_min_lambda(star);
  CHECK(vac.vacuous);
  CHECK(vac.holds);
}

TEST_CASE("unit eigenvector norm sandwich") {
  for (const auto& ng : builtin_suite()) {
    CAPTURE(ng.name);
    const auto c = spectral::check_y_norm(ng.graph);
    CHECK(c.holds);
  }
}

TEST_CASE("full report on the suite holds every bound") {
  for (const auto& ng : builtin_suite()) {
    CAPTURE(ng.name);
    const auto r = spectral::spectral_report(ng.graph);
    CHECK(std::abs(r.rho.front() - 1.0) <= 1e-10);
    CHECK(r.rho_star <= 1.0 + 1e-12);
    CHECK(r.phi_cond >= 0.0);
    CHECK(r.phi_cond <= 1.0);
    CHECK(r.theta >= 0.0);
    CHECK(r.theta <= ng.graph.vol_min() + 1e-12);
    CHECK(r.all_hold());
    CHECK(r.grounded_degenerate == (ng.graph.n() == 2));
  }
}
