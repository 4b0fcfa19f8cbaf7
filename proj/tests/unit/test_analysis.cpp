#include <doctest.h>

#include <cstdlib>
#include <random>

#include "latkit/analysis.hpp"
#include "latkit/enumeration.hpp"
#include "latkit/errors.hpp"
#include "support/oracles.hpp"

using namespace latkit;

using Values = std::vector<std::int64_t>;

TEST_CASE("length function in tensor order") {
  const auto g = GramMatrix::from_rows({{1, 0}, {0, 2}});
  CHECK(length_function(g) == Values{0, 2, 1, 3});
  CHECK(length_function(identity_gram(1)) == Values{0, 1});
  const auto hex = GramMatrix::from_rows({{2, 1}, {1, 2}});
  CHECK(length_function(hex) == Values{0, 2, 2, 2});
  CHECK_THROWS_AS(length_function(identity_gram(6), 5), CapacityError);
}

TEST_CASE("spectra of the small examples") {
  CHECK(length_spectrum(GramMatrix::from_rows({{1, 0}, {0, 2}})) == Values{6, -4, -2, 0});
  CHECK(length_spectrum(GramMatrix::from_rows({{2, 1}, {1, 2}})) == Values{6, -2, -2, -2});
  Values zero(8, 0);
  walsh_hadamard(zero);
  CHECK(zero == Values(8, 0));
  Values bad(6, 1);
  CHECK_THROWS_AS(walsh_hadamard(bad), ArgumentError);

  const auto h = spectrum_histogram(Values{6, -4, -2, 0, 0});
  REQUIRE(h.size() == 4);
  CHECK(h.begin()->first == 6);
  CHECK(h.at(0) == 2);
}

TEST_CASE("transform matches the character sum") {
  std::mt19937_64 rng(4);
  for (int it = 0; it < 30; ++it) {
    const unsigned n = 1 + rng() % 7;
    Values f(std::size_t{1} << n);
    for (auto& x : f) x = static_cast<std::int64_t>(rng() % 41) - 20;
    Values w = f;
    walsh_hadamard(w);
    CHECK(w == oracle::naive_wht(f));

    // Involution and Parseval.
    Values ww = w;
    walsh_hadamard(ww);
    std::int64_t e1 = 0, e2 = 0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      CHECK(ww[i] == static_cast<std::int64_t>(f.size()) * f[i]);
      e1 += f[i] * f[i];
      e2 += w[i] * w[i];
    }
    CHECK(e2 == static_cast<std::int64_t>(f.size()) * e1);
  }
}

TEST_CASE("length spectra of random lattices") {
  std::mt19937_64 rng(6);
  for (int it = 0; it < 20; ++it) {
    const std::size_t n = 1 + rng() % 5;
    const auto g = oracle::random_gram(n, rng);
    const auto f = length_function(g);
    CHECK(f[0] == 0);
    const auto s = length_spectrum(g);
    std::int64_t total = 0;
    for (auto x : f) total += x;
    CHECK(s[0] == total);
    for (auto x : s) CHECK(std::llabs(x) <= s[0]);

    // Multiplicities do not depend on the basis.
    const auto h = transform(g, oracle::random_unimodular(n, rng, 20));
    CHECK(spectrum_histogram(length_spectrum(h)) == spectrum_histogram(s));
  }
}

TEST_CASE("spectrum of A12") {
  const auto h = spectrum_histogram(length_spectrum(root_lattice_a(12)));
  CHECK(h == SpectrumHistogram{{26624, 1}, {0, 4082}, {-2048, 13}});
}
