#include "latkit/basis_builder.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <thread>
#include <unordered_set>

#include "latkit/enumeration.hpp"

namespace latkit {

namespace {

bool is_zero(const BigVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

}  // namespace

Membership::Membership(const std::vector<BigVector>& gens) {
  for (const auto& v : gens) add(v);
}

bool Membership::contains(const BigVector& v) const {
  if (rows_.empty()) return is_zero(v);
  if (v.size() != n_) throw ArgumentError("vector length does not match the lattice");
  BigVector w = v;
  std::size_t next = 0;
  Integer q;
  for (std::size_t j = 0; j < n_; ++j) {
    if (w[j] == 0) continue;
    while (next < rows_.size() && rows_[next].pivot < j) ++next;
    if (next == rows_.size() || rows_[next].pivot != j) return false;
    const auto& r = rows_[next].v;
    if (!mpz_divisible_p(w[j].get_mpz_t(), r[j].get_mpz_t())) return false;
    mpz_divexact(q.get_mpz_t(), w[j].get_mpz_t(), r[j].get_mpz_t());
    for (std::size_t k = j; k < n_; ++k) w[k] -= q * r[k];
  }
  return true;
}

bool Membership::add(BigVector v) {
  if (rows_.empty() && n_ == 0) n_ = v.size();
  if (v.size() != n_) throw ArgumentError("vector length does not match the lattice");
  bool changed = false;
  Integer g, s, t, a, b;
  for (std::size_t j = 0; j < n_; ++j) {
    if (v[j] == 0) continue;
    auto it = std::lower_bound(rows_.begin(), rows_.end(), j, [](const Row& r, std::size_t c) { return r.pivot < c; });
    if (it == rows_.end() || it->pivot != j) {
      if (v[j] < 0)
        for (auto& x : v) x = -x;
      const auto pos = static_cast<std::size_t>(it - rows_.begin());
      rows_.insert(it, Row{j, std::move(v)});
      reduce_above(pos);
      return true;
    }
    auto& r = it->v;
    const auto pos = static_cast<std::size_t>(it - rows_.begin());
    if (mpz_divisible_p(v[j].get_mpz_t(), r[j].get_mpz_t())) {
      mpz_divexact(a.get_mpz_t(), v[j].get_mpz_t(), r[j].get_mpz_t());
      for (std::size_t k = j; k < n_; ++k) v[k] -= a * r[k];
      continue;
    }
    // [r; v] <- [s r + t v; (r_j/g) v - (v_j/g) r]
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), r[j].get_mpz_t(), v[j].get_mpz_t());
    mpz_divexact(a.get_mpz_t(), r[j].get_mpz_t(), g.get_mpz_t());
    mpz_divexact(b.get_mpz_t(), v[j].get_mpz_t(), g.get_mpz_t());
    for (std::size_t k = j; k < n_; ++k) {
      Integer nr = s * r[k] + t * v[k];
      v[k] = a * v[k] - b * r[k];
      r[k] = nr;
    }
    reduce_above(pos);
    changed = true;
  }
  return changed;
}

// Reduces the entries of the rows above row i in its pivot column into [0, pivot).
void Membership::reduce_above(std::size_t i) {
  const auto& r = rows_[i];
  Integer q;
  for (std::size_t k = 0; k < i; ++k) {
    auto& u = rows_[k].v;
    mpz_fdiv_q(q.get_mpz_t(), u[r.pivot].get_mpz_t(), r.v[r.pivot].get_mpz_t());
    if (q == 0) continue;
    for (std::size_t c = r.pivot; c < n_; ++c) u[c] -= q * r.v[c];
  }
}

std::vector<BigVector> construct_basis(const std::vector<BigVector>& gens, const Form& form) {
  auto basis = mlll(gens, form);
  if (basis.empty()) throw EmptyError("generators are all zero");
  return basis;
}

GeneratedBasis basis_from_generators(const std::vector<BigVector>& s, const Form& form) {
  GeneratedBasis out;
  Membership mem;
  for (const auto& v : s) {
    if (is_zero(v)) continue;
    ++out.stats.examined;
    if (out.basis.empty()) {
      out.basis.push_back(v);
    } else {
      if (mem.contains(v)) continue;
      auto gens = out.basis;
      gens.push_back(v);
      out.basis = construct_basis(gens, form);
    }
    ++out.stats.update_count;
    mem.add(v);
  }
  return out;
}

GeneratedBasis incremental_mlll(const std::vector<BigVector>& s, const Form& form) {
  GeneratedBasis out;
  for (const auto& v : s) {
    if (is_zero(v)) continue;
    ++out.stats.examined;
    auto gens = out.basis;
    gens.push_back(v);
    out.basis = construct_basis(gens, form);
    ++out.stats.update_count;
  }
  return out;
}

GeneratedBasis basis_from_generators_parallel(const std::vector<BigVector>& s, std::size_t workers,
                                              const Form& form) {
  if (workers <= 1 || s.size() < 2 * workers) return basis_from_generators(s, form);
  std::vector<GeneratedBasis> parts(workers);
  std::vector<std::thread> threads;
  const std::size_t chunk = (s.size() + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      const std::size_t lo = std::min(s.size(), w * chunk);
      const std::size_t hi = std::min(s.size(), lo + chunk);
      std::vector<BigVector> part(s.begin() + static_cast<std::ptrdiff_t>(lo), s.begin() + static_cast<std::ptrdiff_t>(hi));
      parts[w] = basis_from_generators(part, form);
    });
  }
  for (auto& t : threads) t.join();
  std::vector<BigVector> merged;
  BuildStats stats;
  for (auto& p : parts) {
    merged.insert(merged.end(), p.basis.begin(), p.basis.end());
    stats.update_count += p.stats.update_count;
    stats.examined += p.stats.examined;
  }
  GeneratedBasis out = basis_from_generators(merged, form);
  out.stats.update_count += stats.update_count;
  out.stats.examined += stats.examined;
  return out;
}

double covering_bound(std::size_t n, double max_length, double min_length) {
  if (min_length <= 0 || max_length <= 0) throw ArgumentError("lengths must be positive");
  const double dn = static_cast<double>(n);
  return dn + std::lgamma(dn + 1.0) / std::log(2.0) + dn * std::log2(max_length / min_length);
}

namespace {

Component make_component(const std::vector<BigVector>& basis, const GramMatrix& g) {
  const std::size_t k = basis.size();
  const std::size_t n = g.dim();
  IntMatrix b(k, n);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < n; ++j) b(i, j) = to_int64(basis[i][j]);
  BigMatrix gb = multiply(multiply(to_big(b), to_big(g.matrix())), transpose(to_big(b)));
  return {b, GramMatrix(to_int(gb))};
}

void sort_components(std::vector<Component>& comps) {
  std::sort(comps.begin(), comps.end(), [](const Component& a, const Component& b) {
    if (a.gram.dim() != b.gram.dim()) return a.gram.dim() > b.gram.dim();
    return a.basis.data() < b.basis.data();
  });
}

BigVector to_big_vector(const LatticeVector& v) { return BigVector(v.begin(), v.end()); }

std::int64_t generating_bound(const GramMatrix& g) { return lll_reduce_gram(g).reduced.max_diagonal(); }

}  // namespace

Decomposition decompose(const GramMatrix& g) {
  const std::size_t n = g.dim();
  const Form form{g.matrix()};
  const Integer det = determinant(g);
  // Norm-sorted short vectors (one of each pair +-v). The bound contains a
  // reduced basis, so these vectors generate L.
  auto sv = short_vectors(g, generating_bound(g));
  std::stable_sort(sv.begin(), sv.end(), [](const ShortVector& a, const ShortVector& b) { return a.norm < b.norm; });

  Decomposition out;
  std::vector<std::vector<BigVector>> comps;
  Membership mem;
  std::size_t total_rank = 0;
  for (const auto& s : sv) {
    BigVector v = to_big_vector(s.coords);
    ++out.stats.examined;
    if (total_rank > 0 && mem.contains(v)) continue;
    std::vector<BigVector> gens;
    std::vector<std::vector<BigVector>> keep;
    for (auto& c : comps) {
      bool touches = false;
      for (const auto& b : c)
        if (form.inner(v, b) != 0) {
          touches = true;
          break;
        }
      if (touches)
        gens.insert(gens.end(), c.begin(), c.end());
      else
        keep.push_back(std::move(c));
    }
    gens.push_back(v);
    keep.push_back(construct_basis(gens, form));
    ++out.stats.update_count;
    comps = std::move(keep);
    std::vector<BigVector> all;
    total_rank = 0;
    for (const auto& c : comps) {
      all.insert(all.end(), c.begin(), c.end());
      total_rank += c.size();
    }
    mem = Membership(all);
    if (total_rank == n) {
      if (comps.size() == 1) {
        out.early_exit = true;
        break;
      }
      Integer prod = 1;
      for (const auto& c : comps) prod *= determinant(make_component(c, g).gram);
      if (prod == det) {
        out.early_exit = true;
        break;
      }
    }
  }
  if (comps.size() == 1) {
    // Indecomposable: report a basis of the whole lattice.
    GramReduction red = lll_reduce_gram(g);
    std::vector<BigVector> basis(n, BigVector(n));
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) basis[j][i] = static_cast<long>(red.transform(i, j));
    comps[0] = basis;
  }
  for (const auto& c : comps) out.components.push_back(make_component(c, g));
  sort_components(out.components);
  return out;
}

Decomposition kneser_sieve(const GramMatrix& g, std::size_t max_dim) {
  const std::size_t n = g.dim();
  if (n > max_dim) throw CapacityError("sieve limited to dimension " + std::to_string(max_dim));
  EnumerationOptions opt;
  opt.both_signs = true;
  auto sv = short_vectors(g, generating_bound(g), opt);
  const std::size_t s = sv.size();
  std::map<LatticeVector, std::size_t> index;
  for (std::size_t i = 0; i < s; ++i) index.emplace(sv[i].coords, i);
  std::vector<char> decomposable(s, 0);
  LatticeVector w(n);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j) {
      for (std::size_t k = 0; k < n; ++k) w[k] = sv[i].coords[k] + sv[j].coords[k];
      auto it = index.find(w);
      if (it == index.end()) continue;
      const std::int64_t nw = sv[it->second].norm;
      if (sv[i].norm < nw && sv[j].norm < nw) decomposable[it->second] = 1;
    }
  std::vector<std::size_t> indec;
  for (std::size_t i = 0; i < s; ++i)
    if (!decomposable[i]) indec.push_back(i);
  // Connected components of the non-orthogonality graph.
  std::vector<std::size_t> parent(indec.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t a = 0; a < indec.size(); ++a)
    for (std::size_t b = a + 1; b < indec.size(); ++b)
      if (g.inner(sv[indec[a]].coords, sv[indec[b]].coords) != 0) parent[find(a)] = find(b);
  std::map<std::size_t, std::vector<BigVector>> groups;
  for (std::size_t a = 0; a < indec.size(); ++a) groups[find(a)].push_back(to_big_vector(sv[indec[a]].coords));
  Decomposition out;
  const Form form{g.matrix()};
  for (auto& [root, vecs] : groups) {
    auto gb = basis_from_generators(vecs, form);
    out.stats.update_count += gb.stats.update_count;
    out.stats.examined += gb.stats.examined;
    out.components.push_back(make_component(gb.basis, g));
  }
  sort_components(out.components);
  return out;
}

}  // namespace latkit
