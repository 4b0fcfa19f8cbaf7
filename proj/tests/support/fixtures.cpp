#include "support/fixtures.hpp"

#include "support/oracles.hpp"

namespace fixture {

using latkit::IntMatrix;
using latkit::RatMatrix;
using latkit::Rational;

IntMatrix barnes_wall_generator() {
  IntMatrix m(16, 16);
  m(0, 0) = 4;
  for (std::size_t i = 1; i < 11; ++i) {
    m(i, 0) = 2;
    m(i, i) = 2;
  }
  const int pattern[] = {1, 1, 1, 1, 0, 1, 0, 1, 1, 0, 0, 1};
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t j = 0; j < 12; ++j) m(11 + r, r + j) = pattern[j];
  for (std::size_t j = 0; j < 16; ++j) m(15, j) = 1;
  return m;
}

latkit::GramMatrix barnes_wall_gram() {
  const IntMatrix m = barnes_wall_generator();
  IntMatrix g(16, 16);
  for (std::size_t i = 0; i < 16; ++i)
    for (std::size_t j = 0; j < 16; ++j) {
      std::int64_t s = 0;
      for (std::size_t k = 0; k < 16; ++k) s += m(i, k) * m(j, k);
      g(i, j) = s / 2;
    }
  return latkit::GramMatrix(g);
}

latkit::GramMatrix hexagonal_sum(std::size_t k) {
  const auto hex = latkit::GramMatrix::from_rows({{2, 1}, {1, 2}});
  auto g = hex;
  for (std::size_t i = 1; i < k; ++i) g = latkit::direct_sum(g, hex);
  return g;
}

std::vector<Rational> coordinates(const RatMatrix& b, const std::vector<Rational>& v) {
  // x B = v  =>  x (B B^T) = v B^T.
  const RatMatrix bt = latkit::transpose(b);
  const RatMatrix inv = latkit::inverse(latkit::multiply(b, bt));
  RatMatrix row(1, v.size());
  for (std::size_t j = 0; j < v.size(); ++j) row(0, j) = v[j];
  const RatMatrix x = latkit::multiply(latkit::multiply(row, bt), inv);
  std::vector<Rational> out(b.rows());
  for (std::size_t i = 0; i < b.rows(); ++i) out[i] = x(0, i);
  return out;
}

latkit::BasisMatrix d10_plus() {
  // D10 = <e_i - e_{i+1}, e_9 + e_10> plus the glue vector; the doubled
  // generators are integral and their HNF halves back to a basis.
  std::vector<latkit::BigVector> doubled(11, latkit::BigVector(10, 0));
  for (std::size_t i = 0; i < 9; ++i) {
    doubled[i][i] = 2;
    doubled[i][i + 1] = -2;
  }
  doubled[9][8] = 2;
  doubled[9][9] = 2;
  for (std::size_t j = 0; j < 10; ++j) doubled[10][j] = 1;
  const auto basis = oracle::hnf(doubled, 10);
  RatMatrix rows(basis.size(), 10);
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < 10; ++j) {
      rows(i, j) = Rational(basis[i][j], 2);
      rows(i, j).canonicalize();
    }
  return latkit::BasisMatrix(rows);
}

latkit::GramMatrix a11() { return latkit::root_lattice_a(11); }

std::vector<std::vector<Rational>> a11_glue() {
  RatMatrix b(11, 12);
  for (std::size_t i = 0; i < 11; ++i) {
    b(i, i) = 1;
    b(i, i + 1) = -1;
  }
  std::vector<std::vector<Rational>> out;
  for (int g : {4, 8}) {
    std::vector<Rational> v(12);
    for (int j = 0; j < 12; ++j) {
      v[j] = j < 12 - g ? Rational(g, 12) : Rational(g - 12, 12);
      v[j].canonicalize();
    }
    out.push_back(coordinates(b, v));
  }
  return out;
}

namespace {

RatMatrix ae9_rows() {
  RatMatrix b(9, 9);
  b(0, 0) = -1;
  b(0, 1) = -1;
  for (std::size_t i = 1; i < 8; ++i) {
    b(i, i - 1) = 1;
    b(i, i) = -1;
  }
  for (std::size_t j = 0; j < 8; ++j) b(8, j) = Rational(1, 2);
  b(8, 8) = Rational(573, 1000);
  return b;
}

}  // namespace

latkit::BasisMatrix ae9() { return latkit::BasisMatrix(ae9_rows()); }

latkit::GramMatrix d8() {
  const RatMatrix b = ae9_rows();
  IntMatrix g(8, 8);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) {
      Rational s = 0;
      for (std::size_t k = 0; k < 8; ++k) s += b(i, k) * b(j, k);
      g(i, j) = s.get_num().get_si();
    }
  return latkit::GramMatrix(g);
}

std::vector<Rational> d8_deep_hole() {
  const RatMatrix b = ae9_rows();
  RatMatrix d(8, 8);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) d(i, j) = b(i, j);
  return coordinates(d, std::vector<Rational>(8, Rational(1, 2)));
}

latkit::GramMatrix random_block_sum(std::mt19937_64& rng, std::size_t max_dim) {
  using latkit::GramMatrix;
  const std::vector<GramMatrix> blocks = {
      latkit::identity_gram(1), GramMatrix::from_rows({{2}}), GramMatrix::from_rows({{2, 1}, {1, 2}}),
      GramMatrix::from_rows({{2, 1}, {1, 3}}), latkit::root_lattice_a(3), latkit::root_lattice_d(4),
      GramMatrix::from_rows({{3, 1, 1}, {1, 3, 1}, {1, 1, 3}})};
  GramMatrix g;
  while (true) {
    const auto& b = blocks[rng() % blocks.size()];
    const std::size_t cur = g.dim();
    if (cur + b.dim() > max_dim) {
      if (cur > 0) return g;
      continue;
    }
    g = cur == 0 ? b : latkit::direct_sum(g, b);
    if (rng() % 3 == 0) return g;
  }
}

latkit::f2::F2Matrix random_f2_matrix(unsigned n, std::mt19937_64& rng) {
  using latkit::f2::Word;
  latkit::f2::F2Matrix m(n);
  const Word mask = n == 32 ? ~Word{0} : ((Word{1} << n) - 1);
  for (unsigned i = 0; i < n; ++i) m.set_row(i, static_cast<Word>(rng()) & mask);
  return m;
}

latkit::f2::F2Matrix random_invertible_f2(unsigned n, std::mt19937_64& rng) {
  while (true) {
    auto m = random_f2_matrix(n, rng);
    if (latkit::f2::is_invertible(m)) return m;
  }
}

}  // namespace fixture
