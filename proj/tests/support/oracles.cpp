#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace oracle {

namespace {

void reduce_above(std::vector<BigVector>& piv, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    if (piv[j].empty()) continue;
    const Integer& p = piv[j][j];
    for (std::size_t i = 0; i < j; ++i) {
      if (piv[i].empty() || piv[i][j] == 0) continue;
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), piv[i][j].get_mpz_t(), p.get_mpz_t());
      if (q == 0) continue;
      for (std::size_t c = j; c < n; ++c) piv[i][c] -= q * piv[j][c];
    }
  }
}

}  // namespace

std::vector<BigVector> hnf(const std::vector<BigVector>& rows, std::size_t n) {
  std::vector<BigVector> piv(n);
  std::size_t added = 0;
  for (const auto& r : rows) {
    BigVector v = r;
    for (std::size_t c = 0; c < n; ++c) {
      if (v[c] == 0) continue;
      if (piv[c].empty()) {
        if (v[c] < 0)
          for (auto& x : v) x = -x;
        piv[c] = v;
        break;
      }
      BigVector& p = piv[c];
      Integer g, a, b;
      mpz_gcdext(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t(), p[c].get_mpz_t(), v[c].get_mpz_t());
      const Integer pc = p[c] / g, vc = v[c] / g;
      BigVector top(n), rest(n);
      for (std::size_t k = 0; k < n; ++k) {
        top[k] = a * p[k] + b * v[k];
        rest[k] = vc * p[k] - pc * v[k];
      }
      if (top[c] < 0)
        for (auto& x : top) x = -x;
      p = std::move(top);
      v = std::move(rest);
    }
    if (++added % 8 == 0) reduce_above(piv, n);
  }
  reduce_above(piv, n);
  std::vector<BigVector> out;
  for (auto& p : piv)
    if (!p.empty()) out.push_back(p);
  return out;
}

std::vector<std::int64_t> coordinate_box(const GramMatrix& g, std::int64_t bound) {
  const auto inv = latkit::inverse(latkit::to_rational(g.matrix()));
  std::vector<std::int64_t> box(g.dim());
  for (std::size_t i = 0; i < g.dim(); ++i) {
    const double r = std::sqrt(static_cast<double>(bound) * inv(i, i).get_d());
    box[i] = static_cast<std::int64_t>(std::floor(r + 1e-9));
  }
  return box;
}

namespace {

void scan_box(const std::vector<std::int64_t>& lo, const std::vector<std::int64_t>& hi,
              const std::function<void(const std::vector<std::int64_t>&)>& f) {
  const std::size_t n = lo.size();
  std::vector<std::int64_t> x = lo;
  while (true) {
    f(x);
    std::size_t i = 0;
    while (i < n && x[i] == hi[i]) {
      x[i] = lo[i];
      ++i;
    }
    if (i == n) return;
    ++x[i];
  }
}

}  // namespace

std::vector<std::vector<std::int64_t>> box_vectors(const GramMatrix& g, std::int64_t bound) {
  const auto box = coordinate_box(g, bound);
  std::vector<std::int64_t> lo(box.size());
  for (std::size_t i = 0; i < box.size(); ++i) lo[i] = -box[i];
  std::vector<std::vector<std::int64_t>> out;
  scan_box(lo, box, [&](const std::vector<std::int64_t>& x) {
    bool zero = std::all_of(x.begin(), x.end(), [](auto c) { return c == 0; });
    if (zero) return;
    if (g.norm(x) <= bound) out.push_back(x);
  });
  return out;
}

Rational box_cvp(const GramMatrix& g, const std::vector<Rational>& t, std::int64_t radius) {
  const std::size_t n = g.dim();
  std::vector<std::int64_t> lo(n), hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    Integer f;
    mpz_fdiv_q(f.get_mpz_t(), t[i].get_num_mpz_t(), t[i].get_den_mpz_t());
    lo[i] = f.get_si() - radius;
    hi[i] = f.get_si() + 1 + radius;
  }
  Rational best = -1;
  std::vector<Rational> d(n);
  scan_box(lo, hi, [&](const std::vector<std::int64_t>& x) {
    for (std::size_t i = 0; i < n; ++i) d[i] = Rational(x[i]) - t[i];
    Rational s = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) s += d[i] * g(i, j) * d[j];
    if (best < 0 || s < best) best = s;
  });
  return best;
}

std::int64_t box_coset_min(const GramMatrix& g, const std::vector<std::int64_t>& v, std::int64_t radius) {
  const std::size_t n = g.dim();
  std::vector<std::int64_t> lo(n, -radius), hi(n, radius), w(n);
  std::int64_t best = -1;
  scan_box(lo, hi, [&](const std::vector<std::int64_t>& x) {
    for (std::size_t i = 0; i < n; ++i) w[i] = v[i] + 2 * x[i];
    const auto s = g.norm(w);
    if (best < 0 || s < best) best = s;
  });
  return best;
}

std::uint64_t count_automorphisms(const GramMatrix& g) {
  const std::size_t n = g.dim();
  std::vector<std::vector<std::vector<std::int64_t>>> cand(n);
  const auto all = box_vectors(g, g.max_diagonal());
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& x : all)
      if (g.norm(x) == g(i, i)) cand[i].push_back(x);
  std::vector<const std::vector<std::int64_t>*> img(n);
  std::uint64_t count = 0;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      ++count;
      return;
    }
    for (const auto& x : cand[i]) {
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) ok = g.inner(x, *img[j]) == g(i, j);
      if (!ok) continue;
      img[i] = &x;
      rec(i + 1);
    }
  };
  rec(0);
  return count;
}

std::vector<std::vector<int>> e8_roots_doubled() {
  std::vector<std::vector<int>> out;
  std::vector<int> x(8);
  // Coordinates doubled: entries in {-2,...,2}; norm 2 becomes 8.
  for (int code = 0; code < 390625; ++code) {
    int c = code;
    for (int i = 0; i < 8; ++i) {
      x[i] = c % 5 - 2;
      c /= 5;
    }
    const bool all_even = std::all_of(x.begin(), x.end(), [](int a) { return a % 2 == 0; });
    const bool all_odd = std::all_of(x.begin(), x.end(), [](int a) { return a % 2 != 0; });
    if (!all_even && !all_odd) continue;
    int sum = 0, norm = 0;
    for (int a : x) {
      sum += a;
      norm += a * a;
    }
    if (sum % 4 != 0 || norm != 8) continue;
    out.push_back(x);
  }
  return out;
}

std::vector<std::vector<int>> e8_simple_roots_doubled() {
  std::vector<std::vector<int>> b;
  b.push_back({1, -1, -1, -1, -1, -1, -1, 1});
  b.push_back({2, 2, 0, 0, 0, 0, 0, 0});
  for (int i = 0; i < 6; ++i) {
    std::vector<int> r(8, 0);
    r[i] = -2;
    r[i + 1] = 2;
    b.push_back(r);
  }
  return b;
}

std::vector<std::uint64_t> e8_orbit_counts() {
  const auto roots = e8_roots_doubled();
  const auto b = e8_simple_roots_doubled();
  auto dot = [](const std::vector<int>& x, const std::vector<int>& y) {
    int s = 0;
    for (int i = 0; i < 8; ++i) s += x[i] * y[i];
    return s;
  };
  std::vector<const std::vector<int>*> img(8);
  for (int i = 0; i < 8; ++i) img[i] = &b[i];
  auto fits = [&](const std::vector<int>& w, int level) {
    for (int j = 0; j < level; ++j)
      if (dot(w, *img[j]) != dot(b[level], b[j])) return false;
    return true;
  };
  std::function<bool(int)> extends = [&](int level) {
    if (level == 8) return true;
    for (const auto& w : roots) {
      if (!fits(w, level)) continue;
      img[level] = &w;
      if (extends(level + 1)) return true;
    }
    return false;
  };
  std::vector<std::uint64_t> counts;
  for (int level = 0; level < 8; ++level) {
    for (int j = 0; j < level; ++j) img[j] = &b[j];
    std::uint64_t c = 0;
    for (const auto& w : roots) {
      if (!fits(w, level)) continue;
      img[level] = &w;
      if (extends(level + 1)) ++c;
    }
    counts.push_back(c);
  }
  return counts;
}

latkit::f2::Word naive_matvec(const latkit::f2::F2Matrix& m, latkit::f2::Word v) {
  latkit::f2::Word out = 0;
  for (unsigned i = 0; i < m.dim(); ++i) {
    unsigned parity = 0;
    for (unsigned j = 0; j < m.dim(); ++j) parity ^= (m.get(i, j) && ((v >> j) & 1U)) ? 1U : 0U;
    out |= static_cast<latkit::f2::Word>(parity) << i;
  }
  return out;
}

std::vector<std::int64_t> naive_wht(const std::vector<std::int64_t>& f) {
  const std::size_t size = f.size();
  std::vector<std::int64_t> out(size, 0);
  for (std::size_t c = 0; c < size; ++c)
    for (std::size_t g = 0; g < size; ++g) {
      const bool odd = __builtin_popcountll(c & g) % 2 != 0;
      out[c] += odd ? -f[g] : f[g];
    }
  return out;
}

IntMatrix random_unimodular(std::size_t n, std::mt19937_64& rng, int steps) {
  IntMatrix u = IntMatrix::identity(n);
  if (n == 1) {
    u(0, 0) = (rng() & 1) ? 1 : -1;
    return u;
  }
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  for (int s = 0; s < steps; ++s) {
    const std::size_t i = idx(rng), j = idx(rng);
    switch (rng() % 4) {
      case 0:
      case 1:
        if (i != j) {
          const std::int64_t c = (rng() & 1) ? 1 : -1;
          for (std::size_t r = 0; r < n; ++r) u(r, i) += c * u(r, j);
        }
        break;
      case 2:
        for (std::size_t r = 0; r < n; ++r) std::swap(u(r, i), u(r, j));
        break;
      default:
        for (std::size_t r = 0; r < n; ++r) u(r, i) = -u(r, i);
    }
  }
  return u;
}

namespace {

GramMatrix gram_of_rows(const IntMatrix& b) {
  const std::size_t n = b.rows();
  IntMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::int64_t s = 0;
      for (std::size_t k = 0; k < b.cols(); ++k) s += b(i, k) * b(j, k);
      g(i, j) = s;
    }
  return GramMatrix(g);
}

template <class Fill>
GramMatrix random_rows_gram(std::size_t n, Fill fill) {
  while (true) {
    IntMatrix b(n, n);
    fill(b);
    if (latkit::determinant(latkit::to_big(b)) != 0) return gram_of_rows(b);
  }
}

}  // namespace

GramMatrix random_gram(std::size_t n, std::mt19937_64& rng, int range) {
  std::uniform_int_distribution<int> d(-range, range);
  return random_rows_gram(n, [&](IntMatrix& b) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) b(i, j) = d(rng);
  });
}

GramMatrix random_even_gram(std::size_t n, std::mt19937_64& rng, int range) {
  // n rows of D_{n+1}; inside D_4 itself no vector of norm 0 mod 4 pairs oddly
  // with the lattice, the extra coordinate avoids that.
  std::uniform_int_distribution<int> d(-range, range);
  while (true) {
    IntMatrix b(n, n + 1);
    for (std::size_t i = 0; i < n; ++i) {
      std::int64_t sum = 0;
      for (std::size_t j = 0; j <= n; ++j) {
        b(i, j) = d(rng);
        sum += b(i, j);
      }
      if (sum % 2 != 0) b(i, n) += (b(i, n) > 0) ? -1 : 1;
    }
    IntMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k <= n; ++k) g(i, j) += b(i, k) * b(j, k);
    if (latkit::determinant(latkit::to_big(g)) != 0) return GramMatrix(g);
  }
}

latkit::RatMatrix neighbor_join(const GramMatrix& g, const std::vector<std::int64_t>& v) {
  const std::size_t n = g.dim();
  const auto gv = g.apply(v);
  std::vector<std::vector<Rational>> rows;
  auto unit = [&](std::size_t i) {
    std::vector<Rational> r(n, 0);
    r[i] = 1;
    return r;
  };
  for (std::size_t i = 0; i < n; ++i) {
    auto r = unit(i);
    if (gv[i] % 2 == 0) {
      rows.push_back(r);
    } else {
      r[i] = 2;
      rows.push_back(r);
      for (std::size_t j = i + 1; j < n; ++j)
        if (gv[j] % 2 != 0) {
          auto s = unit(i);
          s[j] = 1;
          rows.push_back(s);
        }
    }
  }
  std::vector<Rational> half(n);
  for (std::size_t i = 0; i < n; ++i) {
    half[i] = Rational(v[i], 2);
    half[i].canonicalize();
  }
  rows.push_back(half);
  latkit::RatMatrix m(rows.size(), n);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = rows[i][j];
  return m;
}

namespace {

std::vector<BigVector> scaled_rows(const latkit::RatMatrix& m, const Integer& l) {
  std::vector<BigVector> rows;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    BigVector r(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) r[j] = Rational(m(i, j) * l).get_num();
    rows.push_back(r);
  }
  return rows;
}

Integer pivot_product(const std::vector<BigVector>& h) {
  Integer p = 1;
  for (std::size_t i = 0; i < h.size(); ++i) p *= h[i][i];
  return p;
}

}  // namespace

Integer lattice_index(const latkit::RatMatrix& a, const latkit::RatMatrix& b) {
  Integer l = 1;
  for (const auto* m : {&a, &b})
    for (const auto& x : m->data()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  const auto ha = hnf(scaled_rows(a, l), a.cols());
  const auto hb = hnf(scaled_rows(b, l), b.cols());
  return pivot_product(ha) / pivot_product(hb);
}

bool same_lattice(const latkit::RatMatrix& a, const latkit::RatMatrix& b) {
  if (a.cols() != b.cols()) return false;
  Integer l = 1;
  for (const auto* m : {&a, &b})
    for (const auto& x : m->data()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  auto rows_of = [&](const latkit::RatMatrix& m) {
    std::vector<BigVector> rows;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      BigVector r(m.cols());
      for (std::size_t j = 0; j < m.cols(); ++j) {
        Rational x = m(i, j) * l;
        r[j] = x.get_num();
      }
      rows.push_back(r);
    }
    return rows;
  };
  return hnf(rows_of(a), a.cols()) == hnf(rows_of(b), b.cols());
}

}  // namespace oracle
