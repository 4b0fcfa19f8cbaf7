#include "latkit/neighbor.hpp"

namespace latkit {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

bool in_2l(const LatticeVector& v) {
  for (auto x : v)
    if (x % 2 != 0) return false;
  return true;
}

// Inverse of an odd number modulo 8.
std::int64_t inverse_mod8(std::int64_t a) {
  for (std::int64_t x = 1; x < 8; x += 2)
    if (mod(a * x, 8) == 1) return x;
  throw InternalError("no inverse mod 8");
}

}  // namespace

NeighborStep neighbor_lattice(const GramMatrix& g, const LatticeVector& v) {
  const std::size_t n = g.dim();
  if (v.size() != n) throw ArgumentError("vector length does not match dimension");
  if (in_2l(v)) throw ArgumentError("vector lies in 2L");
  const std::int64_t nv = g.norm(v);
  if (nv % 2 != 0) throw ArgumentError("(v,v) must be even");
  const auto gv = g.apply(v);

  NeighborStep step;
  step.v = v;
  // Admissible pair: v_k odd and some m != k with (v,b_m) odd.
  bool found = false;
  for (std::size_t k = 0; k < n && !found; ++k) {
    if (mod(v[k], 2) == 0) continue;
    for (std::size_t m = 0; m < n; ++m)
      if (m != k && mod(gv[m], 2) == 1) {
        step.k = k;
        step.m = m;
        found = true;
        break;
      }
  }
  if (!found) {
    bool any_odd = false;
    for (auto x : gv) any_odd = any_odd || mod(x, 2) == 1;
    throw NotANeighborError(any_odd ? "no admissible basis pair for v" : "L_v = L");
  }
  const std::size_t k = step.k, m = step.m;

  // Normalise so that v_k = 1; changes v only by an odd multiple and by 8L.
  const std::int64_t x = inverse_mod8(v[k]);
  LatticeVector w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = mod(x * v[i], 8);
  if (w[k] != 1) throw InternalError("normalisation failed");
  step.adjusted = w;

  RatMatrix t(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i == k) {
      for (std::size_t j = 0; j < n; ++j) {
        t(i, j) = Rational(w[j], 2);
        t(i, j).canonicalize();
      }
    } else if (i == m) {
      t(i, i) = 2;
    } else {
      t(i, i) = 1;
      if (mod(gv[i], 2) == 1) t(i, m) = 1;
    }
  }
  if (determinant(t) != 1) throw InternalError("transition matrix does not have determinant 1");
  step.transition = t;
  step.gram = multiply(multiply(t, to_rational(g.matrix())), transpose(t));
  if (auto gi = to_gram(step.gram)) {
    step.parity = is_even(*gi) ? Parity::Even : Parity::Odd;
    step.reduced = lll_reduce_gram(*gi).reduced;
  }
  return step;
}

NeighborStep even_neighbor_basis(const GramMatrix& g, const LatticeVector& v) {
  if (!is_even(g)) throw ArgumentError("even neighbours need an even lattice");
  const std::size_t n = g.dim();
  if (v.size() != n) throw ArgumentError("vector length does not match dimension");
  if (in_2l(v)) throw ArgumentError("vector lies in 2L");
  const std::int64_t nv = g.norm(v);
  if (mod(nv, 4) == 2) throw NormObstruction("(v,v) = " + std::to_string(mod(nv, 8)) + " mod 8");
  LatticeVector u = v;
  if (mod(nv, 8) == 4) {
    const auto gv = g.apply(v);
    std::size_t i = 0;
    while (i < n && mod(gv[i], 2) == 0) ++i;
    if (i == n) throw NotANeighborError("L_v = L");
    u[i] += 2;
  }
  NeighborStep step = neighbor_lattice(g, u);
  step.v = v;
  if (step.parity != Parity::Even) throw InternalError("even neighbour step produced a non-even lattice");
  return step;
}

NeighborStep odd_partner(const GramMatrix& g, const LatticeVector& v) {
  const std::size_t n = g.dim();
  if (v.size() != n) throw ArgumentError("vector length does not match dimension");
  const std::int64_t nv = g.norm(v);
  if (mod(nv, 4) != 0) throw NormObstruction("(v,v) must be divisible by 4");
  const auto gv = g.apply(v);
  std::size_t j = 0;
  while (j < n && mod(gv[j], 2) == 0) ++j;
  if (j == n) throw NotANeighborError("L_v = L");
  LatticeVector u = v;
  u[j] += 2;
  NeighborStep step = neighbor_lattice(g, u);
  step.v = v;
  return step;
}

}  // namespace latkit
