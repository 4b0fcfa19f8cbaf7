#include "latkit/isometry.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>

#include "latkit/enumeration.hpp"

namespace latkit {

namespace {

struct VecHash {
  std::size_t operator()(const std::vector<std::int32_t>& v) const {
    std::uint64_t h = 1469598103934665603ULL;
    for (auto x : v) {
      h ^= static_cast<std::uint32_t>(x);
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

// Both signs of every nonzero vector of norm <= bound, in input coordinates.
struct VectorSet {
  std::size_t n = 0;
  std::int64_t bound = 0;
  std::vector<std::int32_t> coords;
  std::vector<std::int64_t> gcoords;
  std::vector<std::int64_t> norms;
  std::vector<std::uint32_t> fingerprint;
  std::unordered_map<std::vector<std::int32_t>, std::uint32_t, VecHash> index;

  std::size_t size() const { return norms.size(); }
  const std::int32_t* vec(std::uint32_t i) const { return coords.data() + i * n; }

  std::int64_t ip(std::uint32_t a, std::uint32_t b) const {
    const std::int64_t* ga = gcoords.data() + a * n;
    const std::int32_t* vb = coords.data() + b * n;
    std::int64_t s = 0;
    for (std::size_t k = 0; k < n; ++k) s += ga[k] * vb[k];
    return s;
  }

  std::optional<std::uint32_t> find(const std::vector<std::int32_t>& v) const {
    auto it = index.find(v);
    if (it == index.end()) return std::nullopt;
    return it->second;
  }
};

VectorSet build_set(const GramMatrix& g, std::int64_t bound, std::size_t max_vectors) {
  VectorSet s;
  s.n = g.dim();
  s.bound = bound;
  EnumerationOptions opt;
  opt.both_signs = true;
  opt.max_vectors = max_vectors;
  auto vs = short_vectors(g, bound, opt);
  s.coords.reserve(vs.size() * s.n);
  for (std::uint32_t i = 0; i < vs.size(); ++i) {
    std::vector<std::int32_t> c(s.n);
    for (std::size_t k = 0; k < s.n; ++k) {
      if (vs[i].coords[k] > INT32_MAX || vs[i].coords[k] < INT32_MIN)
        throw CapacityError("short vector coordinates exceed 32 bits");
      c[k] = static_cast<std::int32_t>(vs[i].coords[k]);
    }
    s.coords.insert(s.coords.end(), c.begin(), c.end());
    auto gv = g.apply(vs[i].coords);
    s.gcoords.insert(s.gcoords.end(), gv.begin(), gv.end());
    s.norms.push_back(vs[i].norm);
    s.index.emplace(std::move(c), i);
  }
  return s;
}

constexpr std::size_t kFullReferenceLimit = 1500;

using FingerprintDict = std::map<std::vector<std::int64_t>, std::uint32_t>;

std::vector<std::uint32_t> reference_set(const VectorSet& s) {
  std::vector<std::uint32_t> ref;
  if (s.size() <= kFullReferenceLimit) {
    for (std::uint32_t i = 0; i < s.size(); ++i) ref.push_back(i);
    return ref;
  }
  std::int64_t m = *std::min_element(s.norms.begin(), s.norms.end());
  for (std::uint32_t i = 0; i < s.size(); ++i)
    if (s.norms[i] == m) ref.push_back(i);
  return ref;
}

// Norm and inner product histogram against the reference set.
std::uint32_t fingerprint_of(const VectorSet& s, const std::vector<std::uint32_t>& ref, std::uint32_t v,
                             FingerprintDict& dict) {
  const std::int64_t b = s.bound;
  std::vector<std::int64_t> key(static_cast<std::size_t>(2 * b + 2), 0);
  key[0] = s.norms[v];
  for (auto r : ref) {
    std::int64_t ip = s.ip(v, r);
    if (ip < -b || ip > b) throw InternalError("inner product outside Cauchy-Schwarz range");
    ++key[static_cast<std::size_t>(ip + b + 1)];
  }
  auto [it, inserted] = dict.emplace(std::move(key), static_cast<std::uint32_t>(dict.size()));
  return it->second;
}

void fingerprint_all(VectorSet& s, FingerprintDict& dict) {
  auto ref = reference_set(s);
  s.fingerprint.resize(s.size());
  for (std::uint32_t i = 0; i < s.size(); ++i) s.fingerprint[i] = fingerprint_of(s, ref, i, dict);
}

// Backtracking over images of the working basis with forward checking.
struct Search {
  const VectorSet& s;
  const IntMatrix& target;
  std::size_t n;
  std::vector<std::vector<std::vector<std::uint32_t>>> lists;
  std::vector<std::uint32_t> images;

  Search(const VectorSet& set, const IntMatrix& t)
      : s(set), target(t), n(t.rows()), lists(n + 1, std::vector<std::vector<std::uint32_t>>(n)), images(n) {}

  // Filter candidate lists of levels > level by the image chosen at level.
  bool narrow(std::size_t level, std::uint32_t x) {
    auto& next = lists[level + 1];
    for (std::size_t l = level + 1; l < n; ++l) {
      const std::int64_t want = target(level, l);
      auto& out = next[l];
      out.clear();
      for (auto y : lists[level][l])
        if (s.ip(x, y) == want) out.push_back(y);
      if (out.empty()) return false;
    }
    return true;
  }

  bool dfs(std::size_t level) {
    if (level == n) return true;
    for (auto x : lists[level][level]) {
      images[level] = x;
      if (level + 1 == n) return true;
      if (!narrow(level, x)) continue;
      if (dfs(level + 1)) return true;
    }
    return false;
  }
};

std::vector<std::int32_t> column_as_key(const IntMatrix& w, std::size_t j) {
  std::vector<std::int32_t> c(w.rows());
  for (std::size_t i = 0; i < w.rows(); ++i) c[i] = static_cast<std::int32_t>(w(i, j));
  return c;
}

// Order basis columns so each new vector meets the chosen ones as often as possible.
std::vector<std::size_t> level_order(const IntMatrix& gw, const std::vector<std::size_t>& cand_sizes) {
  const std::size_t n = gw.rows();
  std::vector<std::size_t> order;
  std::vector<bool> used(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t best = n;
    std::size_t best_links = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j]) continue;
      std::size_t links = 0;
      for (auto k : order)
        if (gw(j, k) != 0) ++links;
      if (best == n || links > best_links || (links == best_links && cand_sizes[j] < cand_sizes[best])) {
        best = j;
        best_links = links;
      }
    }
    used[best] = true;
    order.push_back(best);
  }
  return order;
}

IntMatrix permute_columns(const IntMatrix& w, const std::vector<std::size_t>& order) {
  IntMatrix out(w.rows(), w.cols());
  for (std::size_t j = 0; j < order.size(); ++j)
    for (std::size_t i = 0; i < w.rows(); ++i) out(i, j) = w(i, order[j]);
  return out;
}

IntMatrix integer_inverse(const IntMatrix& w) { return to_int(inverse(to_rational(w))); }

IntMatrix matrix_from_images(const VectorSet& s, const std::vector<std::uint32_t>& images, const IntMatrix& winv) {
  const std::size_t n = s.n;
  IntMatrix m(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) m(i, j) = s.vec(images[j])[i];
  return to_int(multiply(to_big(m), to_big(winv)));
}

std::vector<std::uint32_t> permutation_of(const VectorSet& s, const IntMatrix& u) {
  const std::size_t n = s.n;
  std::vector<std::uint32_t> perm(s.size());
  std::vector<std::int32_t> img(n);
  for (std::uint32_t v = 0; v < s.size(); ++v) {
    const std::int32_t* x = s.vec(v);
    for (std::size_t i = 0; i < n; ++i) {
      std::int64_t t = 0;
      for (std::size_t j = 0; j < n; ++j) t += u(i, j) * x[j];
      img[i] = static_cast<std::int32_t>(t);
    }
    auto idx = s.find(img);
    if (!idx) throw InternalError("automorphism does not preserve the short vector set");
    perm[v] = *idx;
  }
  return perm;
}

// BFS closure of start under permutations, marking into seen. Returns members.
std::vector<std::uint32_t> orbit_closure(std::uint32_t start, const std::vector<std::vector<std::uint32_t>>& perms,
                                         std::vector<char>& seen) {
  std::vector<std::uint32_t> orbit;
  if (seen[start]) return orbit;
  seen[start] = 1;
  orbit.push_back(start);
  for (std::size_t h = 0; h < orbit.size(); ++h)
    for (const auto& p : perms) {
      auto y = p[orbit[h]];
      if (!seen[y]) {
        seen[y] = 1;
        orbit.push_back(y);
      }
    }
  return orbit;
}

struct Working {
  IntMatrix w;   // columns: working basis in input coordinates
  IntMatrix gw;  // its Gram matrix
  std::int64_t bound = 0;
};

Working working_basis(const GramMatrix& g) {
  Working wk;
  wk.w = short_basis(g);
  wk.gw = transform(g, wk.w).matrix();
  for (std::size_t i = 0; i < wk.gw.rows(); ++i) wk.bound = std::max(wk.bound, wk.gw(i, i));
  return wk;
}

void reorder(Working& wk, const std::vector<std::size_t>& order) {
  wk.w = permute_columns(wk.w, order);
  IntMatrix p(order.size(), order.size());
  for (std::size_t j = 0; j < order.size(); ++j) p(order[j], j) = 1;
  wk.gw = transform(GramMatrix(wk.gw), p).matrix();
}

}  // namespace

IntMatrix short_basis(const GramMatrix& g) {
  const std::size_t n = g.dim();
  GramReduction red = lll_reduce_gram(g);
  std::int64_t bound = 0;
  for (std::size_t i = 0; i < n; ++i) bound = std::max(bound, red.reduced(i, i));
  auto vs = short_vectors(g, bound);
  // Greedy independent set in order of norm.
  std::vector<std::vector<Rational>> rows;
  std::vector<std::size_t> pivots;
  std::vector<LatticeVector> picked;
  for (const auto& sv : vs) {
    std::vector<Rational> r(sv.coords.begin(), sv.coords.end());
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (r[pivots[k]] == 0) continue;
      Rational f = r[pivots[k]] / rows[k][pivots[k]];
      for (std::size_t j = 0; j < n; ++j) r[j] -= f * rows[k][j];
    }
    std::size_t p = 0;
    while (p < n && r[p] == 0) ++p;
    if (p == n) continue;
    rows.push_back(std::move(r));
    pivots.push_back(p);
    picked.push_back(sv.coords);
    if (picked.size() == n) break;
  }
  if (picked.size() == n) {
    IntMatrix w(n, n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) w(i, j) = picked[j][i];
    Integer d = determinant(to_big(w));
    if (d == 1 || d == -1) return w;
  }
  return red.transform;
}

AutomorphismGroup automorphism_group(const GramMatrix& g, const IsometryOptions& opt) {
  const std::size_t n = g.dim();
  Working wk = working_basis(g);
  VectorSet s = build_set(g, wk.bound, opt.max_vectors);
  FingerprintDict dict;
  fingerprint_all(s, dict);

  auto base_index = [&](std::size_t j) {
    auto idx = s.find(column_as_key(wk.w, j));
    if (!idx) throw InternalError("basis vector missing from short vector set");
    return *idx;
  };
  auto candidates_for = [&](std::uint32_t b) {
    std::vector<std::uint32_t> c;
    for (std::uint32_t v = 0; v < s.size(); ++v)
      if (s.norms[v] == s.norms[b] && s.fingerprint[v] == s.fingerprint[b]) c.push_back(v);
    return c;
  };

  std::vector<std::size_t> sizes(n);
  for (std::size_t j = 0; j < n; ++j) sizes[j] = candidates_for(base_index(j)).size();
  reorder(wk, level_order(wk.gw, sizes));
  const IntMatrix winv = integer_inverse(wk.w);

  std::vector<std::uint32_t> base(n);
  std::vector<std::vector<std::uint32_t>> cand0(n);
  for (std::size_t j = 0; j < n; ++j) {
    base[j] = base_index(j);
    cand0[j] = candidates_for(base[j]);
  }

  AutomorphismGroup result;
  result.order = 1;
  result.orbit_lengths.assign(n, 1);
  std::vector<std::vector<std::uint32_t>> perms;
  Search search(s, wk.gw);

  for (std::size_t i = n; i-- > 0;) {
    // Candidate lists for the stabiliser of base[0..i-1].
    std::vector<std::vector<std::uint32_t>> fixed(n);
    for (std::size_t l = i; l < n; ++l)
      for (auto y : cand0[l]) {
        bool ok = true;
        for (std::size_t j = 0; j < i && ok; ++j) ok = s.ip(base[j], y) == wk.gw(j, l);
        if (ok) fixed[l].push_back(y);
      }
    std::vector<char> in_orbit(s.size(), 0);
    std::vector<char> failed(s.size(), 0);
    auto orbit = orbit_closure(base[i], perms, in_orbit);
    for (auto x : fixed[i]) {
      if (in_orbit[x] || failed[x]) continue;
      for (std::size_t j = 0; j < i; ++j) search.images[j] = base[j];
      search.images[i] = x;
      bool found = false;
      if (i + 1 == n) {
        found = true;
      } else {
        search.lists[i] = fixed;
        found = search.narrow(i, x) && search.dfs(i + 1);
      }
      if (found) {
        IntMatrix u = matrix_from_images(s, search.images, winv);
        perms.push_back(permutation_of(s, u));
        result.generators.push_back(std::move(u));
        // Extend the orbit with the new generator.
        for (std::size_t h = 0; h < orbit.size(); ++h)
          for (const auto& p : perms) {
            auto y = p[orbit[h]];
            if (!in_orbit[y]) {
              in_orbit[y] = 1;
              orbit.push_back(y);
            }
          }
      } else {
        orbit_closure(x, perms, failed);
      }
    }
    result.orbit_lengths[i] = orbit.size();
    result.order *= static_cast<unsigned long>(orbit.size());
  }

  for (const auto& u : result.generators)
    if (transform(g, u) != g) throw InternalError("generator does not preserve the Gram matrix");
  return result;
}

std::optional<IntMatrix> find_isometry(const GramMatrix& a, const GramMatrix& b, const AutomorphismGroup* aut_b,
                                       const IsometryOptions& opt) {
  const std::size_t n = a.dim();
  if (b.dim() != n) return std::nullopt;
  if (determinant(a) != determinant(b)) return std::nullopt;
  if (is_even(a) != is_even(b)) return std::nullopt;
  Working wk = working_basis(a);
  VectorSet sa = build_set(a, wk.bound, opt.max_vectors);
  VectorSet sb = build_set(b, wk.bound, opt.max_vectors);
  if (sa.size() != sb.size()) return std::nullopt;
  {
    auto na = sa.norms, nb = sb.norms;
    std::sort(na.begin(), na.end());
    std::sort(nb.begin(), nb.end());
    if (na != nb) return std::nullopt;
  }
  FingerprintDict dict;
  fingerprint_all(sb, dict);
  auto ref_a = reference_set(sa);
  std::vector<std::uint32_t> fp(n);
  auto index_a = [&](std::size_t j) {
    auto idx = sa.find(column_as_key(wk.w, j));
    if (!idx) throw InternalError("basis vector missing from short vector set");
    return *idx;
  };
  auto candidates_for = [&](std::size_t j) {
    const std::uint32_t ia = index_a(j);
    const std::size_t before = dict.size();
    const std::uint32_t f = fingerprint_of(sa, ref_a, ia, dict);
    std::vector<std::uint32_t> c;
    if (dict.size() != before) return c;  // fingerprint unseen in b
    for (std::uint32_t v = 0; v < sb.size(); ++v)
      if (sb.fingerprint[v] == f) c.push_back(v);
    return c;
  };
  std::vector<std::size_t> sizes(n);
  for (std::size_t j = 0; j < n; ++j) {
    sizes[j] = candidates_for(j).size();
    if (sizes[j] == 0) return std::nullopt;
  }
  reorder(wk, level_order(wk.gw, sizes));
  Search search(sb, wk.gw);
  for (std::size_t j = 0; j < n; ++j) search.lists[0][j] = candidates_for(j);

  if (aut_b && !aut_b->generators.empty()) {
    std::vector<std::vector<std::uint32_t>> perms;
    for (const auto& u : aut_b->generators) perms.push_back(permutation_of(sb, u));
    std::vector<char> seen(sb.size(), 0);
    std::vector<std::uint32_t> reps;
    for (auto x : search.lists[0][0]) {
      if (seen[x]) continue;
      reps.push_back(x);
      orbit_closure(x, perms, seen);
    }
    search.lists[0][0] = std::move(reps);
  }

  if (!search.dfs(0)) return std::nullopt;
  IntMatrix m(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) m(i, j) = sb.vec(search.images[j])[i];
  IntMatrix t = to_int(multiply(to_big(m), to_big(integer_inverse(wk.w))));
  if (transform(b, t) != a) throw InternalError("isometry check failed");
  return t;
}

bool is_isometric(const GramMatrix& a, const GramMatrix& b, const AutomorphismGroup* aut_b) {
  return find_isometry(a, b, aut_b).has_value();
}

std::int64_t spanning_norm(const GramMatrix& g) {
  const std::size_t n = g.dim();
  GramReduction red = lll_reduce_gram(g);
  std::int64_t bound = 0;
  for (std::size_t i = 0; i < n; ++i) bound = std::max(bound, red.reduced(i, i));
  auto vs = short_vectors(g, bound);
  // Incremental rank over two primes; rank mod p never exceeds the rational rank.
  constexpr std::int64_t primes[2] = {2147483647, 2147483629};
  std::vector<std::vector<std::vector<std::int64_t>>> ech(2);
  std::vector<std::vector<std::size_t>> piv(2);
  auto modinv = [](std::int64_t a, std::int64_t p) {
    std::int64_t r = 1, e = p - 2;
    a %= p;
    if (a < 0) a += p;
    while (e) {
      if (e & 1) r = static_cast<std::int64_t>((static_cast<__int128>(r) * a) % p);
      a = static_cast<std::int64_t>((static_cast<__int128>(a) * a) % p);
      e >>= 1;
    }
    return r;
  };
  for (const auto& sv : vs) {
    bool full = false;
    for (int k = 0; k < 2; ++k) {
      const std::int64_t p = primes[k];
      std::vector<std::int64_t> r(n);
      for (std::size_t i = 0; i < n; ++i) r[i] = ((sv.coords[i] % p) + p) % p;
      for (std::size_t e = 0; e < ech[k].size(); ++e) {
        const std::size_t c = piv[k][e];
        if (r[c] == 0) continue;
        const std::int64_t f = r[c];
        for (std::size_t i = 0; i < n; ++i)
          r[i] = static_cast<std::int64_t>(((r[i] - static_cast<__int128>(f) * ech[k][e][i]) % p + p) % p);
      }
      std::size_t c = 0;
      while (c < n && r[c] == 0) ++c;
      if (c < n) {
        const std::int64_t inv = modinv(r[c], p);
        for (auto& x : r) x = static_cast<std::int64_t>((static_cast<__int128>(x) * inv) % p);
        ech[k].push_back(std::move(r));
        piv[k].push_back(c);
      }
      if (ech[k].size() == n) full = true;
    }
    if (full) return sv.norm;
  }
  return bound;
}

CanonicalKey canonical_key(const GramMatrix& g) {
  CanonicalKey k;
  k.dim = g.dim();
  k.det = determinant(g);
  k.even = is_even(g);
  const std::int64_t b = 2 * spanning_norm(g);
  for (const auto& [norm, count] : norm_histogram(g, b)) k.histogram.emplace_back(norm, count);
  return k;
}

std::string CanonicalKey::str() const {
  std::ostringstream o;
  o << "n=" << dim << " det=" << det.get_str() << (even ? " even" : " odd");
  for (const auto& [norm, count] : histogram) o << ' ' << norm << ':' << count;
  return o.str();
}

}  // namespace latkit
