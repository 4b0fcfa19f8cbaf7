#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "latkit/lattice.hpp"

namespace latkit {

class Enumerator;

struct QuantizerOptions {
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 0;
  // Results do not depend on the number of workers.
  std::size_t workers = 1;
};

struct QuantizerEstimate {
  double g = 0.0;      // normalised second moment
  double sigma = 0.0;  // standard error of g
  double mean_distance = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  Rational det_used;  // Gram determinant after the coset correction
};

// Counter based generator: the point for sample i depends only on (seed, i).
class SampleStream {
 public:
  SampleStream(std::uint64_t seed, std::uint64_t index);
  std::uint64_t next();
  double uniform();  // [0,1)

 private:
  std::uint64_t state_;
};

// Uniform points of a fundamental cell and their nearest lattice points.
class UniformCellSampler {
 public:
  explicit UniformCellSampler(const RatMatrix& gram);
  ~UniformCellSampler();
  UniformCellSampler(UniformCellSampler&&) noexcept;

  std::size_t dim() const;
  // Determinant of the Gram matrix.
  double det() const;

  struct Sample {
    std::vector<double> point;           // coordinates in the reduced basis
    std::vector<std::int64_t> nearest;   // nearest lattice point, reduced basis
    double distance = 0.0;               // squared distance
  };
  Sample draw(std::uint64_t seed, std::uint64_t index) const;
  // Squared distance from t (reduced coordinates) to the lattice.
  double distance(const double* t) const;
  // Rational vector in input coordinates to reduced coordinates.
  std::vector<double> to_reduced(const std::vector<Rational>& x) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

QuantizerEstimate estimate_g(const RatMatrix& gram, const QuantizerOptions& opt = {});
QuantizerEstimate estimate_g(const BasisMatrix& basis, const QuantizerOptions& opt = {});
QuantizerEstimate estimate_g(const GramMatrix& gram, const QuantizerOptions& opt = {});

// Union of L + c over the offsets (input coordinates). The base coset L is
// included unless include_base is false; the determinant is divided by the
// square of the number of cosets. Offsets congruent modulo L raise ArgumentError.
QuantizerEstimate estimate_g_cosets(const RatMatrix& gram, const std::vector<std::vector<Rational>>& offsets,
                                    const QuantizerOptions& opt = {}, bool include_base = true);

}  // namespace latkit
