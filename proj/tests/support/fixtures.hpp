#pragma once

#include <random>
#include <vector>

#include "latkit/arith.hpp"
#include "latkit/f2.hpp"
#include "latkit/lattice.hpp"

namespace fixture {

// Generator matrix of the Barnes-Wall lattice, without the 1/sqrt(2) factor.
latkit::IntMatrix barnes_wall_generator();
// Its Gram matrix M M^T / 2.
latkit::GramMatrix barnes_wall_gram();

// Orthogonal sum of k copies of [[2,1],[1,2]].
latkit::GramMatrix hexagonal_sum(std::size_t k);

// D10 with the glue vector (1/2,...,1/2), as a basis of R^10.
latkit::BasisMatrix d10_plus();

// A11 in the Cartan basis and the glue classes [4], [8] in that basis; with
// A11 itself they make up the three cosets of A11^3.
latkit::GramMatrix a11();
std::vector<std::vector<latkit::Rational>> a11_glue();

// Nine-dimensional generator matrix with last row (1/2,...,1/2,0.573).
latkit::BasisMatrix ae9();

// D8 in the basis of the first eight rows above, and the deep hole offset
// (1/2,...,1/2) in that basis.
latkit::GramMatrix d8();
std::vector<latkit::Rational> d8_deep_hole();

// Orthogonal sum of small random blocks (Z, A2, D4, ...), dimension <= max_dim.
latkit::GramMatrix random_block_sum(std::mt19937_64& rng, std::size_t max_dim);

latkit::f2::F2Matrix random_f2_matrix(unsigned n, std::mt19937_64& rng);
latkit::f2::F2Matrix random_invertible_f2(unsigned n, std::mt19937_64& rng);

// Coordinates of v in the basis formed by the rows of b (v in their span).
std::vector<latkit::Rational> coordinates(const latkit::RatMatrix& b, const std::vector<latkit::Rational>& v);

}  // namespace fixture
