#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "latkit/arith.hpp"

namespace latkit::f2 {

using Word = std::uint32_t;

inline constexpr unsigned kMaxDim = 32;
inline constexpr unsigned kDefaultOrbitDim = 28;

// Vector in F_2^n packed into one word; bit i is the coefficient of b_{i+1}.
struct F2Vector {
  Word bits = 0;
  unsigned dim = 0;
  bool operator==(const F2Vector&) const = default;
};

// Matrix over F_2 stored as one word per row.
class F2Matrix {
 public:
  F2Matrix() = default;
  explicit F2Matrix(unsigned dim) : dim_(dim), rows_(dim, 0) {
    if (dim == 0 || dim > kMaxDim) throw ArgumentError("F2 dimension out of range");
  }
  // Reduction mod 2 of an integer matrix acting on column coordinate vectors.
  static F2Matrix from_integer(const IntMatrix& u);

  unsigned dim() const { return dim_; }
  Word row(unsigned i) const { return rows_[i]; }
  void set_row(unsigned i, Word w) { rows_[i] = w; }
  bool get(unsigned i, unsigned j) const { return (rows_[i] >> j) & 1U; }
  void set(unsigned i, unsigned j, bool v) {
    if (v)
      rows_[i] |= Word{1} << j;
    else
      rows_[i] &= ~(Word{1} << j);
  }
  bool operator==(const F2Matrix&) const = default;

 private:
  unsigned dim_ = 0;
  std::vector<Word> rows_;
};

// Component i of the result is the parity of row_i AND v.
Word matvec(const F2Matrix& m, Word v);
F2Vector matvec(const F2Matrix& m, const F2Vector& v);

bool is_invertible(const F2Matrix& m);

// Entrywise reduction of integral automorphisms. Throws InternalError if a
// reduction is singular, which cannot happen for a genuine automorphism.
std::vector<F2Matrix> reduce_generators(const std::vector<IntMatrix>& gens);

// Set of vectors in F_2^n as a 2^n bit mark array.
class F2VectorList {
 public:
  explicit F2VectorList(unsigned dim, bool filled = false);

  unsigned dim() const { return dim_; }
  void insert(Word v) { bits_[v >> 3] |= static_cast<std::uint8_t>(1U << (v & 7U)); }
  void erase(Word v) { bits_[v >> 3] &= static_cast<std::uint8_t>(~(1U << (v & 7U))); }
  bool contains(Word v) const { return (bits_[v >> 3] >> (v & 7U)) & 1U; }
  // Smallest member with code >= from; code 0 is never returned.
  std::optional<Word> find_min(std::uint64_t from = 1) const;
  std::uint64_t size() const;

 private:
  unsigned dim_;
  std::uint64_t universe_;
  std::vector<std::uint8_t> bits_;
};

struct Orbit {
  Word representative;  // smallest member
  std::uint64_t length;
};

// Orbits of the group generated by gens on F_2^n minus zero, in increasing
// order of representative.
std::vector<Orbit> orbits(const std::vector<F2Matrix>& gens, unsigned dim, unsigned max_dim = kDefaultOrbitDim);

}  // namespace latkit::f2
