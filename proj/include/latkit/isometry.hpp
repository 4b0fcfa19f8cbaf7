#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "latkit/lattice.hpp"

namespace latkit {

struct IsometryOptions {
  // Upper bound on the number of short vectors held in memory.
  std::size_t max_vectors = 400'000;
};

// Automorphisms act on column coordinate vectors: U^T G U = G.
struct AutomorphismGroup {
  std::vector<IntMatrix> generators;
  Integer order;
  // Orbit length of the base point at each level of the stabiliser chain.
  std::vector<std::uint64_t> orbit_lengths;
};

AutomorphismGroup automorphism_group(const GramMatrix& g, const IsometryOptions& opt = {});

// T with T^T b T = a, or nothing. aut_b, when known, prunes the search.
std::optional<IntMatrix> find_isometry(const GramMatrix& a, const GramMatrix& b,
                                       const AutomorphismGroup* aut_b = nullptr,
                                       const IsometryOptions& opt = {});
bool is_isometric(const GramMatrix& a, const GramMatrix& b, const AutomorphismGroup* aut_b = nullptr);

// Cheap isometry invariant: dimension, determinant, parity and the numbers of
// vectors of each norm up to twice the smallest norm at which the lattice is
// spanned by vectors of at most that norm.
struct CanonicalKey {
  std::size_t dim = 0;
  Integer det;
  bool even = false;
  std::vector<std::pair<std::int64_t, std::uint64_t>> histogram;

  bool operator==(const CanonicalKey& o) const {
    return dim == o.dim && det == o.det && even == o.even && histogram == o.histogram;
  }
  std::string str() const;
};

CanonicalKey canonical_key(const GramMatrix& g);

// Smallest m such that the vectors of norm <= m span the ambient space.
std::int64_t spanning_norm(const GramMatrix& g);

// Basis of short vectors if one exists among the vectors of norm <= the
// reduced diagonal, otherwise an LLL basis; columns of the transform.
IntMatrix short_basis(const GramMatrix& g);

}  // namespace latkit
