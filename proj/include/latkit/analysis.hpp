#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "latkit/lattice.hpp"

namespace latkit {

inline constexpr unsigned kAnalysisMaxDim = 20;

// Coset minima of L/2L. Index bit 0 corresponds to the last basis vector, so
// the table factors as a tensor product over b_1 (most significant) ... b_n.
std::vector<std::int64_t> length_function(const GramMatrix& g, unsigned max_dim = kAnalysisMaxDim);

// Unnormalised Walsh-Hadamard transform in place; size must be a power of two.
void walsh_hadamard(std::vector<std::int64_t>& f);

// value -> multiplicity, largest value first.
using SpectrumHistogram = std::map<std::int64_t, std::uint64_t, std::greater<>>;
SpectrumHistogram spectrum_histogram(const std::vector<std::int64_t>& values);

// Walsh-Hadamard transform of the length function.
std::vector<std::int64_t> length_spectrum(const GramMatrix& g, unsigned max_dim = kAnalysisMaxDim);

}  // namespace latkit
