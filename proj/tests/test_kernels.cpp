#include <doctest.h>

#include <cstring>
#include <numeric>

#include "helpers.hpp"
#include "ohmnet/generators.hpp"
#include "ohmnet/kernels.hpp"
#include "ohmnet/rng.hpp"

using namespace ohmnet;
using kernels::Exec;

namespace {

std::vector<double> random_vector(int n, uint64_t seed) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = 2.0 * unit_draw(seed, i, 0, 0) - 1.0;
  return v;
}

}  // namespace

TEST_CASE("jacobi sweep: serial and openmp are bit-identical") {
  const auto g = gen::random_connected(257, 0.05, 0.1, 10.0, 3);
  const auto a = g.adjacency();
  const auto p = random_vector(g.n(), 11);
  const auto b = random_vector(g.n(), 12);
  std::vector<double> out_s(g.n()), out_p(g.n());
  for (double damping : {1.0, 0.5, 0.25}) {
    kernels::jacobi_sweep(a, p, b, damping, out_s, Exec::serial);
    kernels::jacobi_sweep(a, p, b, damping, out_p, Exec::openmp);
    CHECK(std::memcmp(out_s.data(), out_p.data(),
                      sizeof(double) * g.n()) == 0);
  }
}

TEST_CASE("token sweep: serial and openmp agree and conserve tokens") {
  const auto g = gen::random_connected(64, 0.1, 0.1, 10.0, 5);
  const auto a = g.adjacency();
  std::vector<int64_t> counts(g.n());
  int64_t total = 0;
  for (int u = 0; u < g.n(); ++u) {
    counts[u] = static_cast<int64_t>(counter_hash(1, u, 0, 0) % 97);
    total += counts[u];
  }
  std::vector<int64_t> arr_s(g.n(), 0), arr_p(g.n(), 0);
  const int64_t moved_s = kernels::token_sweep(a, counts, 7, 2, 5, arr_s,
                                               Exec::serial);
  const int64_t moved_p = kernels::token_sweep(a, counts, 7, 2, 5, arr_p,
                                               Exec::openmp);
  CHECK(moved_s == total);
  CHECK(moved_p == total);
  CHECK(arr_s == arr_p);
  CHECK(std::accumulate(arr_s.begin(), arr_s.end(), int64_t{0}) == total);

  // Replay gives the same arrivals; a different round does not.
  std::vector<int64_t> again(g.n(), 0), other(g.n(), 0);
  kernels::token_sweep(a, counts, 7, 2, 5, again, Exec::openmp);
  CHECK(again == arr_s);
  kernels::token_sweep(a, counts, 7, 2, 6, other, Exec::openmp);
  CHECK(other != arr_s);
}

TEST_CASE("token sweep: moves follow the edge-weight distribution") {
  // Star with one heavy spoke: leaf draws are deterministic, hub draws
  // split 9:1 in expectation.
  const auto g = WeightedGraph::build(
      3, {{0, 1, 9.0}, {0, 2, 1.0}}, 1, 2);
  const auto a = g.adjacency();
  std::vector<int64_t> counts = {100000, 0, 0};
  std::vector<int64_t> arrivals(3, 0);
  kernels::token_sweep(a, counts, 123, 0, 0, arrivals, Exec::serial);
  CHECK(arrivals[0] == 0);
  CHECK(arrivals[1] + arrivals[2] == 100000);
  // 4-sigma band around the 90/10 split.
  CHECK(std::abs(arrivals[1] - 90000.0) < 4.0 * std::sqrt(100000 * 0.09));
}

TEST_CASE("cut scan: serial and openmp agree on value and witness") {
  for (uint64_t s = 0; s < 6; ++s) {
    const auto g = gen::random_connected(5 + static_cast<int>(s), 0.5, 0.1,
                                         10.0, 60 + s);
    const auto a = g.adjacency();
    for (auto obj : {kernels::CutObjective::conductance,
                     kernels::CutObjective::expansion}) {
      const auto rs = kernels::cut_scan(a, obj, Exec::serial);
      const auto rp = kernels::cut_scan(a, obj, Exec::openmp);
      CHECK(rs.value == rp.value);
      CHECK(rs.mask == rp.mask);
    }
  }
}
