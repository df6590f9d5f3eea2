#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "helpers.hpp"
#include "ohmnet/generators.hpp"
#include "ohmnet/jacobi.hpp"
#include "ohmnet/oracle.hpp"
#include "ohmnet/spectral.hpp"
#include "ohmnet/suite.hpp"

using namespace ohmnet;

TEST_CASE("single edge: undamped update oscillates with period 2") {
  const auto g = gen::path(2);
  auto s = jacobi::make_state(g, 1.0);
  s = jacobi::step(g, s);
  CHECK(s.potentials(0) == 1.0);
  CHECK(s.potentials(1) == -1.0);
  s = jacobi::step(g, s);
  CHECK(s.potentials(0) == 0.0);
  CHECK(s.potentials(1) == 0.0);
}

TEST_CASE("single edge: damping 1/2 reaches the balanced fixed point") {
  const auto g = gen::path(2);
  const auto run = jacobi::run(g, 50, 0.5, Eigen::VectorXd::Zero(2), 1e-15);
  CHECK(run.converged);
  const auto& p = run.trajectory.back().potentials;
  CHECK(p(0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(p(1) == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(residual_inf(g, p) <= 1e-12);
}

TEST_CASE("zero rounds returns only the initial state") {
  const auto g = gen::complete(4);
  const auto run = jacobi::run(g, 0, 1.0, Eigen::VectorXd::Zero(4));
  CHECK(run.trajectory.size() == 1);
  CHECK_FALSE(run.converged);
  CHECK(run.trajectory[0].messages_sent == 0);
}

TEST_CASE("P3 orthogonal error collapses from the zero start") {
  const auto g = gen::path(3);
  const auto p = solve_grounded(g);
  const auto run = jacobi::run(g, 200, 1.0, Eigen::VectorXd::Zero(3), 0.0);
  const auto d =
      jacobi::error_decomposition(p, run.trajectory.back().potentials);
  CHECK(d.e_perp.norm() <= 1e-6);
}

TEST_CASE("message accounting is exactly 2mt") {
  for (const auto& ng : builtin_suite()) {
    const auto run =
        jacobi::run(ng.graph, 13, 1.0, Eigen::VectorXd::Zero(ng.graph.n()), 0.0);
    const auto& last = run.trajectory.back();
    CHECK(last.round == 13);
    CHECK(last.messages_sent ==
          2 * static_cast<uint64_t>(ng.graph.m()) * last.round);
  }
}

TEST_CASE("error decomposition examples") {
  Eigen::VectorXd ref(2), est(2);
  ref << 1, 0;
  est << 0, 0;
  auto d = jacobi::error_decomposition(ref, est);
  CHECK(d.e_perp(0) == 0.5);
  CHECK(d.e_perp(1) == -0.5);
  CHECK(d.alpha == 0.5);

  Eigen::VectorXd ref3(3), est3(3);
  ref3 << 2, 1, 0;
  est3 = ref3.array() + 7.0;
  d = jacobi::error_decomposition(ref3, est3);
  CHECK(d.e_perp.lpNorm<Eigen::Infinity>() <= 1e-15);
  CHECK(d.alpha == doctest::Approx(-7.0).epsilon(1e-15));

  d = jacobi::error_decomposition(ref3, Eigen::VectorXd::Zero(3));
  CHECK(d.alpha == 1.0);
  CHECK(d.e_perp(0) == 1.0);
  CHECK(d.e_perp(1) == 0.0);
  CHECK(d.e_perp(2) == -1.0);
  CHECK((d.e - (d.e_perp.array() + d.alpha).matrix()).norm() <= 1e-15);
  CHECK(std::abs(d.e_perp.sum()) <= 1e-12);
}

TEST_CASE("rate bound values") {
  CHECK(jacobi::rate_bound(gen::complete(4), 10) ==
        doctest::Approx(std::pow(1.0 / 3.0, 10)).epsilon(1e-12));
  CHECK(jacobi::rate_bound(gen::path(2), 17) == doctest::Approx(1.0));
  CHECK(jacobi::rate_bound(gen::path(3), 0) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("orthogonal error stays inside the spectral envelope") {
  for (const auto& ng : builtin_suite()) {
    CAPTURE(ng.name);
    const auto& g = ng.graph;
    const auto p = solve_grounded(g);
    const double rho = spectral::rho_star(g);
    const auto run = jacobi::run(g, 60, 1.0, Eigen::VectorXd::Zero(g.n()), 0.0);
    const double e0 =
        jacobi::error_decomposition(p, run.trajectory.front().potentials)
            .e_perp.norm();
    REQUIRE(e0 > 0.0);
    for (const auto& s : run.trajectory) {
      const double ratio =
          jacobi::error_decomposition(p, s.potentials).e_perp.norm() / e0;
      CHECK(ratio <=
            jacobi::rate_bound(g.vol_max(), g.vol_min(), rho, s.round) + 1e-9);
    }
  }
}

TEST_CASE("K4 contraction is tight against the exact solution") {
  const auto g = gen::complete(4);
  Eigen::VectorXd exact(4);
  exact << 0.5, 0.25, 0.25, 0.0;  // effective resistance 1/2, symmetric arms
  const auto run = jacobi::run(g, 50, 1.0, Eigen::VectorXd::Zero(4), 0.0);
  const double e0 =
      jacobi::error_decomposition(exact, run.trajectory.front().potentials)
          .e_perp.norm();
  const double e10 =
      jacobi::error_decomposition(exact, run.trajectory[10].potentials)
          .e_perp.norm();
  const double e50 =
      jacobi::error_decomposition(exact, run.trajectory[50].potentials)
          .e_perp.norm();
  // The contraction factor is exactly 1/3 per round; rounding leaves the
  // measured ratio within a few 1e-16 of the power.
  CHECK(e10 / e0 <= std::pow(1.0 / 3.0, 10) + 1e-9);
  CHECK(e10 / e0 == doctest::Approx(std::pow(1.0 / 3.0, 10)).epsilon(1e-9));
  CHECK(e50 / e0 <= std::pow(1.0 / 3.0, 50));
}

TEST_CASE("kernel-shift equivariance at damping 1") {
  for (const auto& name : {std::string("path3"), std::string("complete4"),
                           std::string("cycle5")}) {
    WeightedGraph g = [&] {
      for (auto& ng : builtin_suite())
        if (ng.name == name) return ng.graph;
      throw std::runtime_error("missing suite graph");
    }();
    const Eigen::VectorXd base = Eigen::VectorXd::Zero(g.n());
    const auto run_a = jacobi::run(g, 100, 1.0, base, 0.0);
    const auto run_b = jacobi::run(g, 100, 1.0, (base.array() + 0.5).matrix(), 0.0);
    for (size_t i = 0; i < run_a.trajectory.size(); ++i) {
      const double gap = ((run_b.trajectory[i].potentials.array() - 0.5) -
                          run_a.trajectory[i].potentials.array())
                             .abs()
                             .maxCoeff();
      CHECK(gap <= 1e-12);
    }
  }
}

TEST_CASE("converged runs satisfy Kirchhoff within the stop tolerance") {
  const double stop_tol = 1e-13;
  for (const auto& ng : builtin_suite()) {
    const auto run = jacobi::run(ng.graph, 20000, 0.5,
                                 Eigen::VectorXd::Zero(ng.graph.n()), stop_tol);
    if (!run.converged) continue;
    CAPTURE(ng.name);
    CHECK(residual_inf(ng.graph, run.trajectory.back().potentials) <=
          10 * stop_tol * ng.graph.vol_max());
  }
}

TEST_CASE("trajectory csv has the documented columns") {
  const auto g = gen::path(3);
  const auto run = jacobi::run(g, 5, 1.0, Eigen::VectorXd::Zero(3), 0.0);
  std::ostringstream os;
  jacobi::write_trajectory_csv(os, g, run, solve_grounded(g),
                               spectral::rho_star(g));
  const std::string csv = os.str();
  CHECK(csv.rfind("t,err_perp_norm,bound,residual_inf,messages\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);  // header + 6 states
}

TEST_CASE("damping outside (0,1] is rejected") {
  using testutil::thrown_code;
  CHECK(thrown_code([] { jacobi::make_state(gen::path(2), 0.0); }) ==
        ErrorCode::ParameterOutOfRange);
  CHECK(thrown_code([] { jacobi::make_state(gen::path(2), 1.5); }) ==
        ErrorCode::ParameterOutOfRange);
}
