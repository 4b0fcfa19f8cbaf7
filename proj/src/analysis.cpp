#include "latkit/analysis.hpp"

#include "latkit/enumeration.hpp"

namespace latkit {

std::vector<std::int64_t> length_function(const GramMatrix& g, unsigned max_dim) {
  const std::size_t n = g.dim();
  auto minima = coset_minima(g, max_dim);
  std::vector<std::int64_t> out(minima.size());
  for (std::size_t code = 0; code < minima.size(); ++code) {
    // reverse the bit order: b_1 becomes the most significant bit
    std::size_t idx = 0;
    for (std::size_t i = 0; i < n; ++i)
      if ((code >> i) & 1U) idx |= std::size_t{1} << (n - 1 - i);
    out[idx] = minima[code];
  }
  return out;
}

void walsh_hadamard(std::vector<std::int64_t>& f) {
  const std::size_t size = f.size();
  if (size == 0 || (size & (size - 1)) != 0) throw ArgumentError("transform length must be a power of two");
  for (std::size_t h = 1; h < size; h <<= 1)
    for (std::size_t i = 0; i < size; i += 2 * h)
      for (std::size_t j = i; j < i + h; ++j) {
        const std::int64_t a = f[j];
        const std::int64_t b = f[j + h];
        f[j] = a + b;
        f[j + h] = a - b;
      }
}

SpectrumHistogram spectrum_histogram(const std::vector<std::int64_t>& values) {
  SpectrumHistogram h;
  for (auto v : values) ++h[v];
  return h;
}

std::vector<std::int64_t> length_spectrum(const GramMatrix& g, unsigned max_dim) {
  auto f = length_function(g, max_dim);
  walsh_hadamard(f);
  return f;
}

}  // namespace latkit
