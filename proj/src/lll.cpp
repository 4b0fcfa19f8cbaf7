#include "latkit/lll.hpp"

#include <utility>

namespace latkit {

namespace {

// Nearest integer to a/b, b > 0, ties rounded up.
Integer round_div(const Integer& a, const Integer& b) {
  Integer num = 2 * a + b;
  Integer den = 2 * b;
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

Integer round_q(const Rational& x) {
  Integer num = 2 * x.get_num() + x.get_den();
  Integer den = 2 * x.get_den();
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

void exact_div(Integer& x, const Integer& d) { mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t()); }

}  // namespace

GramReduction lll_reduce_gram(const GramMatrix& g, long delta_num, long delta_den) {
  const std::size_t n = g.dim();
  BigMatrix gram = to_big(g.matrix());
  // 1-indexed as in the classical presentation.
  std::vector<BigVector> h(n + 1, BigVector(n, 0));
  for (std::size_t i = 1; i <= n; ++i) h[i][i - 1] = 1;
  std::vector<Integer> d(n + 1, 0);
  std::vector<std::vector<Integer>> lam(n + 1, std::vector<Integer>(n + 1, 0));
  d[0] = 1;
  d[1] = gram(0, 0);
  if (n == 1) return {g, IntMatrix::identity(1)};

  auto dot_with_original = [&](std::size_t k, std::size_t j) {
    // b_k is still the k-th original basis vector here.
    Integer s = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (h[j][i] != 0) s += gram(k - 1, i) * h[j][i];
    return s;
  };

  auto redi = [&](std::size_t k, std::size_t l) {
    Integer two_lam = 2 * lam[k][l];
    if (abs(two_lam) <= d[l]) return;
    Integer q = round_div(lam[k][l], d[l]);
    for (std::size_t i = 0; i < n; ++i) h[k][i] -= q * h[l][i];
    lam[k][l] -= q * d[l];
    for (std::size_t i = 1; i < l; ++i) lam[k][i] -= q * lam[l][i];
  };

  std::size_t kmax = 1;
  auto swapi = [&](std::size_t k) {
    std::swap(h[k], h[k - 1]);
    for (std::size_t j = 1; j + 1 < k; ++j) std::swap(lam[k][j], lam[k - 1][j]);
    Integer l = lam[k][k - 1];
    Integer b = d[k - 2] * d[k] + l * l;
    exact_div(b, d[k - 1]);
    for (std::size_t i = k + 1; i <= kmax; ++i) {
      Integer t = lam[i][k];
      Integer a = d[k] * lam[i][k - 1] - l * t;
      exact_div(a, d[k - 1]);
      lam[i][k] = a;
      Integer c = b * t + l * lam[i][k];
      exact_div(c, d[k]);
      lam[i][k - 1] = c;
    }
    d[k - 1] = b;
  };

  std::size_t k = 2;
  while (k <= n) {
    if (k > kmax) {
      kmax = k;
      for (std::size_t j = 1; j <= k; ++j) {
        Integer u = dot_with_original(k, j);
        for (std::size_t i = 1; i < j; ++i) {
          u = d[i] * u - lam[k][i] * lam[j][i];
          exact_div(u, d[i - 1]);
        }
        if (j < k)
          lam[k][j] = u;
        else
          d[k] = u;
      }
      if (d[k] == 0) throw RankError("Gram matrix is singular");
    }
    while (true) {
      redi(k, k - 1);
      Integer lhs = delta_den * (d[k] * d[k - 2] + lam[k][k - 1] * lam[k][k - 1]);
      Integer rhs = delta_num * (d[k - 1] * d[k - 1]);
      if (lhs < rhs) {
        swapi(k);
        if (k > 2) --k;
        continue;
      }
      for (std::size_t l = k - 1; l-- > 1;) redi(k, l);
      ++k;
      break;
    }
  }

  BigMatrix t(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) t(i, j) = h[j + 1][i];
  BigMatrix red = multiply(multiply(transpose(t), gram), t);
  return {GramMatrix(to_int(red)), to_int(t)};
}

Integer Form::inner(const BigVector& x, const BigVector& y) const {
  Integer s = 0;
  if (gram.empty()) {
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
  }
  const std::size_t n = x.size();
  Integer row;
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] == 0) continue;
    row = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (gram(i, j) != 0 && y[j] != 0) row += y[j] * static_cast<long>(gram(i, j));
    s += row * x[i];
  }
  return s;
}

std::vector<BigVector> mlll(std::vector<BigVector> b, const Form& form, long delta_num, long delta_den) {
  const std::size_t m = b.size();
  if (m == 0) return {};
  Rational delta(delta_num, delta_den);
  delta.canonicalize();
  std::vector<std::vector<Rational>> mu(m, std::vector<Rational>(m, 0));
  std::vector<Rational> bb(m, 0);
  std::vector<Rational> a(m, 0);

  auto gso = [&](std::size_t k) {
    for (std::size_t j = 0; j < k; ++j) {
      a[j] = form.inner(b[k], b[j]);
      for (std::size_t i = 0; i < j; ++i) a[j] -= mu[j][i] * a[i];
      mu[k][j] = (bb[j] != 0) ? Rational(a[j] / bb[j]) : Rational(0);
    }
    bb[k] = form.inner(b[k], b[k]);
    for (std::size_t j = 0; j < k; ++j) bb[k] -= mu[k][j] * a[j];
  };

  auto red = [&](std::size_t k, std::size_t l) {
    if (2 * abs(mu[k][l]) <= 1) return;
    Integer q = round_q(mu[k][l]);
    for (std::size_t i = 0; i < b[k].size(); ++i) b[k][i] -= q * b[l][i];
    mu[k][l] -= q;
    for (std::size_t i = 0; i < l; ++i) mu[k][i] -= q * mu[l][i];
  };

  std::size_t kmax = 0;
  auto swapg = [&](std::size_t k) {
    std::swap(b[k], b[k - 1]);
    for (std::size_t j = 0; j + 1 < k; ++j) std::swap(mu[k][j], mu[k - 1][j]);
    Rational u = mu[k][k - 1];
    Rational bn = bb[k] + u * u * bb[k - 1];
    if (bn == 0) {
      std::swap(bb[k], bb[k - 1]);
      for (std::size_t i = k + 1; i <= kmax; ++i) std::swap(mu[i][k], mu[i][k - 1]);
    } else if (bb[k] == 0) {
      bb[k - 1] = bn;
      mu[k][k - 1] = 1 / u;
      for (std::size_t i = k + 1; i <= kmax; ++i) mu[i][k - 1] /= u;
    } else {
      Rational t = bb[k - 1] / bn;
      mu[k][k - 1] = u * t;
      bb[k] *= t;
      bb[k - 1] = bn;
      for (std::size_t i = k + 1; i <= kmax; ++i) {
        Rational s = mu[i][k];
        mu[i][k] = mu[i][k - 1] - u * s;
        mu[i][k - 1] = s + mu[k][k - 1] * mu[i][k];
      }
    }
  };

  gso(0);
  std::size_t k = 1;
  while (k < m) {
    if (k > kmax) {
      kmax = k;
      gso(k);
    }
    while (true) {
      red(k, k - 1);
      if (bb[k] < (delta - mu[k][k - 1] * mu[k][k - 1]) * bb[k - 1]) {
        swapg(k);
        if (k > 1) --k;
        continue;
      }
      for (std::size_t l = k - 1; l-- > 0;) red(k, l);
      ++k;
      break;
    }
  }

  std::vector<BigVector> out;
  std::size_t zeros = 0;
  for (std::size_t i = 0; i < m; ++i) {
    bool zero = true;
    for (const auto& x : b[i])
      if (x != 0) {
        zero = false;
        break;
      }
    if (zero) {
      if (!out.empty()) throw InternalError("MLLL left a zero vector after a nonzero one");
      ++zeros;
      continue;
    }
    if (bb[i] == 0) throw InternalError("MLLL output is dependent");
    out.push_back(std::move(b[i]));
  }
  return out;
}

bool is_lll_reduced(const std::vector<BigVector>& basis, const Form& form, long delta_num, long delta_den) {
  const std::size_t m = basis.size();
  Rational delta(delta_num, delta_den);
  delta.canonicalize();
  std::vector<std::vector<Rational>> mu(m, std::vector<Rational>(m, 0));
  std::vector<Rational> bb(m, 0);
  for (std::size_t k = 0; k < m; ++k) {
    std::vector<Rational> a(k);
    for (std::size_t j = 0; j < k; ++j) {
      a[j] = form.inner(basis[k], basis[j]);
      for (std::size_t i = 0; i < j; ++i) a[j] -= mu[j][i] * a[i];
      if (bb[j] == 0) return false;
      mu[k][j] = a[j] / bb[j];
      if (2 * abs(mu[k][j]) > 1) return false;
    }
    bb[k] = form.inner(basis[k], basis[k]);
    for (std::size_t j = 0; j < k; ++j) bb[k] -= mu[k][j] * a[j];
    if (bb[k] == 0) return false;
    if (k > 0 && bb[k] < (delta - mu[k][k - 1] * mu[k][k - 1]) * bb[k - 1]) return false;
  }
  return true;
}

}  // namespace latkit
