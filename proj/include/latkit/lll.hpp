#pragma once

#include <vector>

#include "latkit/arith.hpp"
#include "latkit/lattice.hpp"

namespace latkit {

using BigVector = std::vector<Integer>;

// Result of reducing a Gram matrix: reduced = transform^T * gram * transform.
// Column j of transform holds the coordinates of the j-th reduced basis vector.
struct GramReduction {
  GramMatrix reduced;
  IntMatrix transform;
};

// All-integer LLL on a Gram matrix (delta = p/q, default 3/4).
GramReduction lll_reduce_gram(const GramMatrix& g, long delta_num = 3, long delta_den = 4);

// Bilinear form used by the generator-level routines. An empty matrix means
// the standard dot product.
struct Form {
  IntMatrix gram;
  Integer inner(const BigVector& x, const BigVector& y) const;
};

// LLL for possibly dependent generators (MLLL). Returns an LLL-reduced basis
// of the lattice generated by the input; zero vectors are dropped.
std::vector<BigVector> mlll(std::vector<BigVector> gens, const Form& form = {}, long delta_num = 3,
                            long delta_den = 4);

// True if the vectors are size reduced and satisfy the Lovasz condition.
bool is_lll_reduced(const std::vector<BigVector>& basis, const Form& form = {}, long delta_num = 3,
                    long delta_den = 4);

}  // namespace latkit
