#include "latkit/genus.hpp"

#include <json.hpp>
#include <thread>

#include "latkit/lll.hpp"
#include "latkit/neighbor.hpp"

namespace latkit {

namespace {

struct Candidate {
  bool has_neighbor = false;
  bool skipped = false;
  std::optional<GramMatrix> gram;
  CanonicalKey key;
};

GramMatrix normal_form(const GramMatrix& g) {
  GramMatrix red = lll_reduce_gram(g).reduced;
  return transform(red, short_basis(red));
}

Candidate neighbor_of(const GramMatrix& g, f2::Word code) {
  Candidate c;
  const std::size_t n = g.dim();
  LatticeVector v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = (code >> i) & 1U;
  const std::int64_t nv = g.norm(v);
  if (nv % 4 != 0) return c;  // L(v) is not integral
  try {
    NeighborStep step = even_neighbor_basis(g, v);
    c.gram = normal_form(*step.reduced);
    c.key = canonical_key(*c.gram);
    c.has_neighbor = true;
  } catch (const NotANeighborError&) {
    c.skipped = true;
  }
  return c;
}

GenusClass make_class(const GramMatrix& g) {
  GenusClass c{g, automorphism_group(g), minimum(g), canonical_key(g)};
  return c;
}

}  // namespace

GenusReport explore_genus(const GramMatrix& seed, const GenusOptions& opt) {
  if (!is_even(seed)) throw ArgumentError("genus exploration needs an even lattice");
  GenusReport rep;
  rep.classes.push_back(make_class(normal_form(seed)));
  rep.incidence.emplace_back();

  for (std::size_t cur = 0; cur < rep.classes.size(); ++cur) {
    const GramMatrix g = rep.classes[cur].gram;
    const unsigned n = static_cast<unsigned>(g.dim());
    const auto gens = f2::reduce_generators(rep.classes[cur].aut.generators);
    const auto orbs = f2::orbits(gens, n, opt.max_orbit_dim);

    std::vector<Candidate> cands(orbs.size());
    const std::size_t workers = std::max<std::size_t>(1, std::min(opt.workers, orbs.size()));
    if (workers == 1) {
      for (std::size_t i = 0; i < orbs.size(); ++i) cands[i] = neighbor_of(g, orbs[i].representative);
    } else {
      std::vector<std::thread> threads;
      for (std::size_t w = 0; w < workers; ++w)
        threads.emplace_back([&, w] {
          for (std::size_t i = w; i < orbs.size(); i += workers) cands[i] = neighbor_of(g, orbs[i].representative);
        });
      for (auto& t : threads) t.join();
    }

    for (auto& c : cands) {
      if (c.skipped) ++rep.skipped_orbits;
      if (!c.has_neighbor) continue;
      std::size_t target = rep.classes.size();
      for (std::size_t j = 0; j < rep.classes.size(); ++j) {
        if (!(rep.classes[j].key == c.key)) continue;
        if (find_isometry(*c.gram, rep.classes[j].gram, &rep.classes[j].aut)) {
          target = j;
          break;
        }
      }
      if (target == rep.classes.size()) {
        if (rep.classes.size() >= opt.max_classes) {
          rep.complete = false;
          continue;
        }
        rep.classes.push_back(make_class(*c.gram));
        rep.incidence.emplace_back();
      }
      auto& row = rep.incidence[cur];
      if (row.size() <= target) row.resize(target + 1, 0);
      ++row[target];
    }
  }
  for (auto& row : rep.incidence) row.resize(rep.classes.size(), 0);
  rep.mass = 0;
  for (const auto& c : rep.classes) rep.mass += Rational(1) / Rational(c.aut.order);
  rep.mass.canonicalize();
  return rep;
}

GramMatrix modular_seed(std::size_t n, std::int64_t level) {
  if (n == 0 || n % 2 != 0) throw ArgumentError("modular seed needs an even dimension");
  if (level <= 0 || level % 4 != 3) throw ArgumentError("modular seed needs level = 3 mod 4");
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; i += 2) {
    m(i, i) = 2;
    m(i, i + 1) = m(i + 1, i) = 1;
    m(i + 1, i + 1) = (level + 1) / 2;
  }
  return GramMatrix(m);
}

MassCheck mass_check(const GenusReport& r, const Rational& expected) {
  MassCheck c;
  c.discrepancy = expected - r.mass;
  c.discrepancy.canonicalize();
  c.ok = c.discrepancy == 0;
  return c;
}

Rational bernoulli(std::size_t k) {
  std::vector<Rational> b(k + 1);
  b[0] = 1;
  for (std::size_t m = 1; m <= k; ++m) {
    Rational s = 0;
    Integer binom = 1;  // C(m+1, j)
    for (std::size_t j = 0; j < m; ++j) {
      s += binom * b[j];
      binom = binom * static_cast<unsigned long>(m + 1 - j) / static_cast<unsigned long>(j + 1);
    }
    b[m] = -s / static_cast<unsigned long>(m + 1);
  }
  return b[k];
}

Rational even_unimodular_mass(std::size_t n) {
  if (n == 0 || n % 8 != 0) throw ArgumentError("even unimodular lattices need dimension divisible by 8");
  const std::size_t k = n / 2;
  Rational m = abs(bernoulli(k)) / static_cast<unsigned long>(n);
  for (std::size_t j = 1; j < k; ++j) m *= abs(bernoulli(2 * j)) / static_cast<unsigned long>(4 * j);
  m.canonicalize();
  return m;
}

std::string report_json(const GenusReport& r) {
  nlohmann::json j;
  j["schema"] = 1;
  j["classes"] = nlohmann::json::array();
  for (const auto& c : r.classes) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < c.gram.dim(); ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (std::size_t k = 0; k < c.gram.dim(); ++k) row.push_back(c.gram(i, k));
      rows.push_back(row);
    }
    j["classes"].push_back({{"gram", rows}, {"aut_order", c.aut.order.get_str()}, {"min", c.min}});
  }
  j["mass"] = to_string(r.mass);
  j["incidence"] = r.incidence;
  j["skipped_orbits"] = r.skipped_orbits;
  j["complete"] = r.complete;
  return j.dump();
}

}  // namespace latkit
