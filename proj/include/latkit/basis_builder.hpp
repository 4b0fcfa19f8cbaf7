#pragma once

#include <cstddef>
#include <vector>

#include "latkit/lattice.hpp"
#include "latkit/lll.hpp"

namespace latkit {

// Exact membership test for a lattice kept as an integer echelon form
// (Hermite normal form). Generators can be added one at a time.
class Membership {
 public:
  Membership() = default;
  explicit Membership(const std::vector<BigVector>& gens);
  bool contains(const BigVector& v) const;
  // Adds v to the lattice; returns false if it was already a member.
  bool add(BigVector v);
  std::size_t rank() const { return rows_.size(); }

 private:
  struct Row {
    std::size_t pivot;
    BigVector v;
  };
  void reduce_above(std::size_t i);
  std::size_t n_ = 0;
  std::vector<Row> rows_;  // increasing pivot columns, positive pivots
};

// LLL-reduced basis of the lattice generated by gens (MLLL). Throws
// EmptyError if every generator is zero.
std::vector<BigVector> construct_basis(const std::vector<BigVector>& gens, const Form& form = {});

struct BuildStats {
  std::size_t update_count = 0;  // calls to construct_basis
  std::size_t examined = 0;      // nonzero vectors inspected
};

struct GeneratedBasis {
  std::vector<BigVector> basis;
  BuildStats stats;
};

// Basis of the lattice generated by s; construct_basis runs only for vectors
// outside the current lattice.
GeneratedBasis basis_from_generators(const std::vector<BigVector>& s, const Form& form = {});
// Baseline: construct_basis after every vector.
GeneratedBasis incremental_mlll(const std::vector<BigVector>& s, const Form& form = {});
// Splits s into chunks handled concurrently, then merges the partial bases.
GeneratedBasis basis_from_generators_parallel(const std::vector<BigVector>& s, std::size_t workers,
                                              const Form& form = {});

// Upper bound n + log2(n! (B/M)^n) on the number of basis updates, where B
// bounds the lengths of the generators and M is the length of a shortest
// nonzero lattice vector.
double covering_bound(std::size_t n, double max_length, double min_length);

struct Component {
  IntMatrix basis;  // rows: coordinates in the input basis
  GramMatrix gram;
};

struct Decomposition {
  std::vector<Component> components;
  BuildStats stats;
  bool early_exit = false;
};

// Orthogonal decomposition into indecomposable sublattices.
Decomposition decompose(const GramMatrix& g);

inline constexpr std::size_t kSieveMaxDim = 8;
// Reference implementation via pairwise sums; quadratic in the number of short vectors.
Decomposition kneser_sieve(const GramMatrix& g, std::size_t max_dim = kSieveMaxDim);

}  // namespace latkit
