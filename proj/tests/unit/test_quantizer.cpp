#include <doctest.h>

#include <cmath>

#include "latkit/errors.hpp"
#include "latkit/quantizer.hpp"
#include "support/fixtures.hpp"

using namespace latkit;

namespace {

QuantizerOptions options(std::uint64_t samples, std::uint64_t seed, std::size_t workers = 1) {
  QuantizerOptions o;
  o.samples = samples;
  o.seed = seed;
  o.workers = workers;
  return o;
}

RatMatrix rational(const GramMatrix& g) { return to_rational(g.matrix()); }

}  // namespace

TEST_CASE("sample streams are reproducible") {
  SampleStream a(7, 3), b(7, 3), c(7, 4);
  for (int i = 0; i < 10; ++i) {
    const auto x = a.next();
    CHECK(x == b.next());
    CHECK(x != c.next());
  }
  SampleStream u(1, 1);
  for (int i = 0; i < 1000; ++i) {
    const double x = u.uniform();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
}

TEST_CASE("estimates do not depend on the worker count") {
  const auto g = rational(root_lattice_a(3));
  const auto a = estimate_g(g, options(20000, 5, 1));
  const auto b = estimate_g(g, options(20000, 5, 4));
  CHECK(a.g == b.g);
  CHECK(a.sigma == b.sigma);
  CHECK(a.seed == 5);
  CHECK(a.det_used == 4);
  CHECK(estimate_g(g, options(20000, 6)).g != a.g);
}

TEST_CASE("scale invariance") {
  const auto g = rational(GramMatrix::from_rows({{2, 1}, {1, 2}}));
  RatMatrix scaled = g;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) scaled(i, j) *= Rational(9, 4);
  const auto a = estimate_g(g, options(20000, 11));
  const auto b = estimate_g(scaled, options(20000, 11));
  CHECK(b.g == doctest::Approx(a.g).epsilon(1e-12));
  CHECK(b.mean_distance == doctest::Approx(a.mean_distance * 9.0 / 4.0).epsilon(1e-12));
}

TEST_CASE("uniform cell sampler") {
  UniformCellSampler z2(rational(identity_gram(2)));
  double total = 0;
  const int t = 40000;
  for (int i = 0; i < t; ++i) total += z2.draw(3, i).distance;
  CHECK(total / t == doctest::Approx(1.0 / 6.0).epsilon(0.02));

  // Nothing lies beyond the covering radius R^2 = 2/3 of the hexagonal lattice.
  UniformCellSampler hex(rational(GramMatrix::from_rows({{2, 1}, {1, 2}})));
  for (int i = 0; i < t; ++i) CHECK(hex.draw(3, i).distance <= 2.0 / 3.0 + 1e-12);
}

TEST_CASE("mean uses one over the sample count") {
  const auto g = rational(root_lattice_a(2));
  const std::uint64_t t = 5000;
  const auto q = estimate_g(g, options(t, 21));
  UniformCellSampler s(g);
  double sum = 0;
  for (std::uint64_t i = 0; i < t; ++i) sum += s.draw(21, i).distance;
  CHECK(q.mean_distance == doctest::Approx(sum / static_cast<double>(t)).epsilon(1e-12));
  CHECK(q.g == doctest::Approx(q.mean_distance / 2.0 / std::sqrt(3.0)).epsilon(1e-12));
  CHECK_THROWS_AS(estimate_g(g, options(1, 0)), ArgumentError);
}

TEST_CASE("integer lattices") {
  for (std::size_t n : {1, 3}) {
    const auto q = estimate_g(identity_gram(n), options(200000, 1));
    CHECK(std::abs(q.g - 1.0 / 12.0) <= 4 * q.sigma);
    CHECK(q.sigma > 0);
  }
}

TEST_CASE("coset unions") {
  const auto two_z = rational(GramMatrix::from_rows({{4}}));
  const auto q = estimate_g_cosets(two_z, {{Rational(1, 2)}}, options(200000, 2));
  CHECK(q.det_used == 1);
  CHECK(std::abs(q.g - 1.0 / 12.0) <= 4 * q.sigma);
  CHECK_THROWS_AS(estimate_g_cosets(two_z, {{Rational(1)}}, options(100, 2)), ArgumentError);
  CHECK_THROWS_AS(estimate_g_cosets(two_z, {{Rational(1, 2)}, {Rational(3, 2)}}, options(100, 2)), ArgumentError);
  CHECK_THROWS_AS(estimate_g_cosets(two_z, {{Rational(1, 2), 0}}, options(100, 2)), ArgumentError);

  // D8 with its deep hole is E8.
  const auto d8 = rational(fixture::d8());
  const auto u = estimate_g_cosets(d8, {fixture::d8_deep_hole()}, options(100000, 3));
  CHECK(u.det_used == 1);
  const auto e = estimate_g(root_lattice_e8(), options(100000, 4));
  CHECK(std::abs(u.g - e.g) <= 4 * std::hypot(u.sigma, e.sigma));
}
