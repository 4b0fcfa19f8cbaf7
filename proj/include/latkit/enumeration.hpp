#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "latkit/lattice.hpp"
#include "latkit/lll.hpp"

namespace latkit {

// Relative slack applied to floating point radii before the exact recheck.
inline constexpr double kEnumerationSlack = 1e-9;

// Fincke-Pohst engine over an LLL-reduced copy of a Gram matrix.
// Points are visited in reduced coordinates y; original coordinates are T y.
class Enumerator {
 public:
  explicit Enumerator(const GramMatrix& g);

  std::size_t dim() const { return n_; }
  const GramMatrix& gram() const { return gram_; }
  const GramMatrix& reduced() const { return red_.reduced; }
  const IntMatrix& transform() const { return red_.transform; }
  const IntMatrix& inverse_transform() const { return tinv_; }

  LatticeVector to_original(std::span<const std::int64_t> y) const;
  LatticeVector to_reduced(std::span<const std::int64_t> x) const;

  // Calls f(y) for every y with Q(y + shift) <= bound (radius padded by the slack).
  // f returns false to stop early.
  template <class F>
  void visit(std::span<const double> shift, double bound, F&& f) const {
    std::vector<std::int64_t> y(n_, 0);
    std::vector<double> z(n_, 0.0);
    const double b = bound * (1.0 + kEnumerationSlack) + kEnumerationSlack;
    if (b < 0) return;
    bool stop = false;
    visit_level(static_cast<std::ptrdiff_t>(n_) - 1, b, shift, y, z, f, stop);
  }

  // Squared distance from t (reduced coordinates) to the nearest lattice point,
  // Schnorr-Euchner search in double precision. Writes the minimiser to best.
  double closest(std::span<const double> t, std::span<std::int64_t> best) const;

 private:
  template <class F>
  void visit_level(std::ptrdiff_t i, double rem, std::span<const double> shift, std::vector<std::int64_t>& y,
                   std::vector<double>& z, F& f, bool& stop) const {
    const std::size_t ui = static_cast<std::size_t>(i);
    double c = 0.0;
    for (std::size_t j = ui + 1; j < n_; ++j) c += q_[ui * n_ + j] * z[j];
    const double qii = q_[ui * n_ + ui];
    const double r = std::sqrt(std::max(rem, 0.0) / qii);
    const double sh = shift.empty() ? 0.0 : shift[ui];
    const double centre = -c - sh;
    const auto lo = static_cast<std::int64_t>(std::ceil(centre - r - 1e-12));
    const auto hi = static_cast<std::int64_t>(std::floor(centre + r + 1e-12));
    for (std::int64_t v = lo; v <= hi && !stop; ++v) {
      y[ui] = v;
      z[ui] = static_cast<double>(v) + sh;
      const double t = z[ui] + c;
      const double left = rem - qii * t * t;
      if (left < 0) continue;
      if (i == 0) {
        if (!f(std::span<const std::int64_t>(y))) stop = true;
      } else {
        visit_level(i - 1, left, shift, y, z, f, stop);
      }
    }
    z[ui] = 0.0;
    y[ui] = 0;
  }

  std::size_t n_ = 0;
  GramMatrix gram_;
  GramReduction red_;
  IntMatrix tinv_;
  std::vector<double> q_;  // q_ii on the diagonal, q_ij above it
};

struct ShortVector {
  LatticeVector coords;
  std::int64_t norm;
};

struct EnumerationOptions {
  // One representative of each pair +-v unless set.
  bool both_signs = false;
  std::size_t max_vectors = 5'000'000;
};

// All nonzero v with (v,v) <= bound, sorted by norm then coordinates.
// Representatives of +-v have a positive first nonzero coordinate.
std::vector<ShortVector> short_vectors(const GramMatrix& g, std::int64_t bound,
                                       const EnumerationOptions& opt = {});
// Number of nonzero v with (v,v) <= bound, counting both signs.
std::uint64_t count_short_vectors(const GramMatrix& g, std::int64_t bound);
// norm -> number of vectors (both signs) for 0 < norm <= bound.
std::map<std::int64_t, std::uint64_t> norm_histogram(const GramMatrix& g, std::int64_t bound);

struct CosetTarget {
  GramMatrix gram;
  std::vector<Rational> offset;  // coordinates w.r.t. the basis of gram
};

struct ClosestVector {
  LatticeVector point;  // lexicographically smallest among nearest points
  Rational distance;    // squared distance
};

ClosestVector closest_vector(const CosetTarget& target);

// min { (w,w) : w = v mod 2L }.
std::int64_t coset_min(const GramMatrix& g, std::span<const std::int64_t> v);
// Number of w = v mod 2L attaining the coset minimum.
std::uint64_t coset_min_count(const GramMatrix& g, std::span<const std::int64_t> v);

// coset_min for every class of L/2L; index bit i is the coefficient of b_{i+1}.
std::vector<std::int64_t> coset_minima(const GramMatrix& g, std::size_t max_dim);

inline constexpr std::size_t kRelevantMaxDim = 16;
// Voronoi-relevant vectors, both signs, sorted.
std::vector<LatticeVector> relevant_vectors(const GramMatrix& g, std::size_t max_dim = kRelevantMaxDim);

}  // namespace latkit
