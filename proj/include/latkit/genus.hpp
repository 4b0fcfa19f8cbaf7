#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "latkit/f2.hpp"
#include "latkit/isometry.hpp"
#include "latkit/lattice.hpp"

namespace latkit {

struct GenusClass {
  GramMatrix gram;
  AutomorphismGroup aut;
  std::int64_t min = 0;
  CanonicalKey key;
};

struct GenusOptions {
  std::size_t max_classes = 1000;
  // Threads used to build the neighbours of one class.
  std::size_t workers = 1;
  unsigned max_orbit_dim = f2::kDefaultOrbitDim;
};

struct GenusReport {
  std::vector<GenusClass> classes;
  Rational mass;
  // incidence[i][j]: orbits of (L_i / 2L_i) whose even neighbour is in class j.
  std::vector<std::vector<std::uint64_t>> incidence;
  // Orbits with (v,v) = 0 mod 4 for which no admissible basis pair exists.
  std::uint64_t skipped_orbits = 0;
  bool complete = true;
};

// Breadth first search over even 2-neighbours starting at an even lattice.
GenusReport explore_genus(const GramMatrix& seed, const GenusOptions& opt = {});

// Orthogonal sum of n/2 copies of [[2,1],[1,(l+1)/2]], an even lattice of
// determinant l^(n/2) for l = 3 mod 4. For l = 3, n = 12 this lies in the
// genus of the Coxeter-Todd lattice.
GramMatrix modular_seed(std::size_t n, std::int64_t level);

struct MassCheck {
  bool ok = false;
  Rational discrepancy;  // expected - report.mass
};
MassCheck mass_check(const GenusReport& r, const Rational& expected);

// Mass of the genus of even unimodular lattices of dimension n = 0 mod 8,
// from the Bernoulli number formula.
Rational even_unimodular_mass(std::size_t n);
Rational bernoulli(std::size_t k);

// JSON report: {"schema":1,"classes":[...],"mass":"p/q","incidence":[...],"skipped_orbits":k}
std::string report_json(const GenusReport& r);

}  // namespace latkit
