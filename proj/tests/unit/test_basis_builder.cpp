#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "latkit/basis_builder.hpp"
#include "latkit/enumeration.hpp"
#include "latkit/errors.hpp"
#include "latkit/isometry.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace latkit;

namespace {

std::vector<BigVector> random_vectors(std::size_t count, std::size_t n, int range, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-range, range);
  std::vector<BigVector> out(count, BigVector(n));
  for (auto& v : out)
    for (auto& x : v) x = d(rng);
  return out;
}

BigVector big(std::initializer_list<long> xs) {
  BigVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

// Component multisets agree up to isometry.
bool same_components(const Decomposition& a, const Decomposition& b) {
  if (a.components.size() != b.components.size()) return false;
  std::vector<bool> used(b.components.size(), false);
  for (const auto& c : a.components) {
    bool found = false;
    for (std::size_t j = 0; j < b.components.size() && !found; ++j) {
      if (used[j] || b.components[j].gram.dim() != c.gram.dim()) continue;
      if (is_isometric(c.gram, b.components[j].gram)) found = used[j] = true;
    }
    if (!found) return false;
  }
  return true;
}

void check_decomposition(const GramMatrix& g, const Decomposition& d) {
  std::size_t total = 0;
  Integer det = 1;
  for (std::size_t i = 0; i < d.components.size(); ++i) {
    const auto& c = d.components[i];
    total += c.gram.dim();
    det *= determinant(c.gram);
    for (std::size_t j = 0; j < i; ++j) {
      const auto& e = d.components[j];
      for (std::size_t r = 0; r < c.basis.rows(); ++r)
        for (std::size_t s = 0; s < e.basis.rows(); ++s)
          CHECK(g.inner(c.basis.row_vector(r), e.basis.row_vector(s)) == 0);
    }
  }
  CHECK(total == g.dim());
  CHECK(det == determinant(g));
}

}  // namespace

TEST_CASE("LLL on Gram matrices") {
  auto r = lll_reduce_gram(identity_gram(3));
  CHECK(r.reduced == identity_gram(3));
  // Basis (1,0), (1000,1) of Z^2.
  auto g = GramMatrix::from_rows({{1, 1000}, {1000, 1000001}});
  auto red = lll_reduce_gram(g);
  CHECK(red.reduced == identity_gram(2));
  CHECK(transform(g, red.transform) == red.reduced);

  std::mt19937_64 rng(12);
  for (int it = 0; it < 20; ++it) {
    const auto h = transform(oracle::random_gram(8, rng), oracle::random_unimodular(8, rng, 40));
    const auto rr = lll_reduce_gram(h);
    CHECK(transform(h, rr.transform) == rr.reduced);
    CHECK(abs(determinant(to_big(rr.transform))) == 1);
    std::vector<BigVector> cols(8, BigVector(8));
    for (std::size_t i = 0; i < 8; ++i)
      for (std::size_t j = 0; j < 8; ++j) cols[j][i] = static_cast<long>(rr.transform(i, j));
    CHECK(is_lll_reduced(cols, Form{h.matrix()}));
    // Successive minimum lambda_8 from the norm ordered short vectors.
    auto sv = short_vectors(h, rr.reduced.max_diagonal());
    std::int64_t lambda_n = 0;
    std::vector<std::vector<Rational>> rows;
    for (const auto& v : sv) {
      RatMatrix m(rows.size() + 1, 8);
      for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < 8; ++j) m(i, j) = rows[i][j];
      for (std::size_t j = 0; j < 8; ++j) m(rows.size(), j) = v.coords[j];
      if (rank(m) == rows.size() + 1) {
        rows.emplace_back(v.coords.begin(), v.coords.end());
        lambda_n = v.norm;
        if (rows.size() == 8) break;
      }
    }
    REQUIRE(rows.size() == 8);
    for (std::size_t j = 0; j < 8; ++j)
      CHECK(static_cast<double>(rr.reduced(j, j)) <= std::pow(2.0, 7) * static_cast<double>(lambda_n));
  }
}

TEST_CASE("MLLL on dependent generators") {
  auto b = mlll({big({2}), big({3})});
  REQUIRE(b.size() == 1);
  CHECK(abs(b[0][0]) == 1);
  auto c = construct_basis({big({1, 0}), big({0, 1}), big({1, 1})});
  CHECK(c.size() == 2);
  CHECK_THROWS_AS(construct_basis({big({0, 0}), big({0, 0})}), EmptyError);

  std::mt19937_64 rng(31);
  for (int it = 0; it < 40; ++it) {
    auto gens = random_vectors(7, 6, 5, rng);
    auto basis = construct_basis(gens);
    CHECK(basis.size() == 6);
    CHECK(is_lll_reduced(basis));
    CHECK(oracle::hnf(basis, 6) == oracle::hnf(gens, 6));
  }
  // Rank deficient span.
  auto deficient = construct_basis({big({1, 2, 3}), big({2, 4, 6}), big({0, 1, 1}), big({1, 3, 4})});
  CHECK(deficient.size() == 2);
}

TEST_CASE("membership") {
  Membership m({big({2, 0, 0}), big({1, 1, 0})});
  CHECK(m.rank() == 2);
  CHECK(m.contains(big({3, 1, 0})));
  CHECK(m.contains(big({0, 2, 0})));
  CHECK_FALSE(m.contains(big({1, 0, 0})));
  CHECK_FALSE(m.contains(big({0, 0, 1})));
  CHECK_FALSE(m.add(big({4, 2, 0})));
  CHECK(m.add(big({1, 0, 0})));
  CHECK(m.contains(big({1, 0, 0})));

  std::mt19937_64 rng(13);
  for (int it = 0; it < 200; ++it) {
    const std::size_t n = 1 + rng() % 5;
    auto gens = random_vectors(1 + rng() % 5, n, 4, rng);
    const auto v = random_vectors(1, n, 6, rng)[0];
    Membership mm(gens);
    const auto h = oracle::hnf(gens, n);
    CHECK(mm.rank() == h.size());
    auto with = gens;
    with.push_back(v);
    CHECK(mm.contains(v) == (oracle::hnf(with, n) == h));
    CHECK(mm.add(v) != (oracle::hnf(with, n) == h));
  }
}

TEST_CASE("basis from generators") {
  std::vector<BigVector> std_basis;
  for (std::size_t i = 0; i < 5; ++i) {
    BigVector e(5, 0);
    e[i] = 1;
    std_basis.push_back(e);
  }
  auto r = basis_from_generators(std_basis);
  CHECK(r.stats.update_count == 5);
  CHECK(r.basis == std_basis);

  std::mt19937_64 rng(41);
  for (int it = 0; it < 10; ++it) {
    auto s = random_vectors(60 + rng() % 60, 8, 20, rng);
    auto a = basis_from_generators(s);
    auto b = incremental_mlll(s);
    auto c = basis_from_generators_parallel(s, 3);
    const auto h = oracle::hnf(s, 8);
    CHECK(oracle::hnf(a.basis, 8) == h);
    CHECK(oracle::hnf(b.basis, 8) == h);
    CHECK(oracle::hnf(c.basis, 8) == h);
    CHECK(b.stats.update_count == s.size());
    // Update bound with B the longest generator and M the shortest lattice vector.
    double longest = 0;
    for (const auto& v : s) {
      double q = 0;
      for (const auto& x : v) q += x.get_d() * x.get_d();
      longest = std::max(longest, std::sqrt(q));
    }
    IntMatrix gm(8, 8);
    for (std::size_t i = 0; i < 8; ++i)
      for (std::size_t j = 0; j < 8; ++j) gm(i, j) = Form{}.inner(a.basis[i], a.basis[j]).get_si();
    const double shortest = std::sqrt(static_cast<double>(minimum(GramMatrix(gm))));
    CHECK(static_cast<double>(a.stats.update_count) <= covering_bound(8, longest, shortest));
  }
}

TEST_CASE("covering bound") {
  CHECK(covering_bound(1, 1.0, 1.0) == doctest::Approx(1.0));
  CHECK(covering_bound(2, 1.0, 1.0) == doctest::Approx(3.0));
  CHECK(covering_bound(2, 2.0, 1.0) == doctest::Approx(5.0));
  CHECK_THROWS_AS(covering_bound(2, 1.0, 0.0), ArgumentError);
}

TEST_CASE("decomposition of standard lattices") {
  auto z = decompose(identity_gram(4));
  CHECK(z.components.size() == 4);
  for (const auto& c : z.components) CHECK(c.gram == identity_gram(1));

  auto e8 = decompose(root_lattice_e8());
  CHECK(e8.components.size() == 1);
  CHECK(e8.early_exit);
  CHECK(e8.stats.examined < count_short_vectors(root_lattice_e8(), 2) / 2);
  CHECK(kneser_sieve(root_lattice_e8()).components.size() == 1);

  auto d = decompose(identity_gram(2));
  CHECK(d.early_exit);
  CHECK(kneser_sieve(identity_gram(2)).components.size() == 2);
  CHECK(kneser_sieve(GramMatrix::from_rows({{2, 1}, {1, 2}})).components.size() == 1);
  CHECK_THROWS_AS(kneser_sieve(identity_gram(9)), CapacityError);
}

TEST_CASE("decomposition of scrambled sums") {
  std::mt19937_64 rng(55);
  const auto hex = GramMatrix::from_rows({{2, 1}, {1, 2}});
  const auto g = direct_sum(direct_sum(hex, hex), identity_gram(1));
  for (int it = 0; it < 10; ++it) {
    const auto h = transform(g, oracle::random_unimodular(5, rng, 25));
    const auto d = decompose(h);
    check_decomposition(h, d);
    REQUIRE(d.components.size() == 3);
    CHECK(is_isometric(d.components[0].gram, hex));
    CHECK(is_isometric(d.components[1].gram, hex));
    CHECK(d.components[2].gram == identity_gram(1));
  }
  for (int it = 0; it < 40; ++it) {
    const auto base = fixture::random_block_sum(rng, 6);
    const auto h = transform(base, oracle::random_unimodular(base.dim(), rng, 25));
    const auto a = decompose(h);
    const auto b = kneser_sieve(h);
    check_decomposition(h, a);
    check_decomposition(h, b);
    CHECK(same_components(a, b));
    // A different basis of the same lattice gives the same components.
    const auto h2 = transform(h, oracle::random_unimodular(h.dim(), rng, 10));
    CHECK(same_components(a, decompose(h2)));
  }
}
