#pragma once

#include <cstdint>
#include <optional>

#include "latkit/lattice.hpp"
#include "latkit/lll.hpp"

namespace latkit {

enum class Parity { Even, Odd, NonIntegral };

// One 2-neighbour step L -> L(v) = L_v + Z v/2, L_v = { x in L : (x,v) even }.
struct NeighborStep {
  LatticeVector v;         // vector as supplied
  LatticeVector adjusted;  // after the parity fix-up and normalisation, v_k = 1
  std::size_t k = 0;       // basis vector replaced by v/2
  std::size_t m = 0;       // basis vector doubled
  RatMatrix transition;    // rows: neighbour basis in coordinates of L
  RatMatrix gram;          // Gram matrix of the neighbour basis
  Parity parity = Parity::NonIntegral;
  // LLL-reduced Gram matrix of the neighbour when it is integral.
  std::optional<GramMatrix> reduced;
};

// L(v) for v in L \ 2L with (v,v) even. Throws NotANeighborError when L_v = L
// or no admissible pair of basis indices exists.
NeighborStep neighbor_lattice(const GramMatrix& g, const LatticeVector& v);

// Even neighbour of an even lattice. (v,v) = 4 mod 8 is first moved to
// v + 2 b_i with (v,b_i) odd. Throws NormObstruction if (v,v) = 2 mod 4.
NeighborStep even_neighbor_basis(const GramMatrix& g, const LatticeVector& v);

// Neighbour of the opposite parity: L(v + 2 b_j) with (v,b_j) odd.
NeighborStep odd_partner(const GramMatrix& g, const LatticeVector& v);

}  // namespace latkit
