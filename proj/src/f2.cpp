#include "latkit/f2.hpp"

#include <bit>
#include <deque>

namespace latkit::f2 {

F2Matrix F2Matrix::from_integer(const IntMatrix& u) {
  if (u.rows() != u.cols()) throw ArgumentError("F2 reduction needs a square matrix");
  F2Matrix m(static_cast<unsigned>(u.rows()));
  for (unsigned i = 0; i < m.dim(); ++i)
    for (unsigned j = 0; j < m.dim(); ++j) m.set(i, j, (u(i, j) & 1) != 0);
  return m;
}

Word matvec(const F2Matrix& m, Word v) {
  Word out = 0;
  for (unsigned i = 0; i < m.dim(); ++i) {
    Word tmp = m.row(i) & v;
    tmp ^= tmp >> 16;
    tmp ^= tmp >> 8;
    tmp ^= tmp >> 4;
    tmp ^= tmp >> 2;
    tmp ^= tmp >> 1;
    out |= (tmp & 1U) << i;
  }
  return out;
}

F2Vector matvec(const F2Matrix& m, const F2Vector& v) {
  if (v.dim != m.dim()) throw ArgumentError("F2 dimension mismatch");
  return {matvec(m, v.bits), v.dim};
}

bool is_invertible(const F2Matrix& m) {
  std::vector<Word> rows(m.dim());
  for (unsigned i = 0; i < m.dim(); ++i) rows[i] = m.row(i);
  for (unsigned c = 0; c < m.dim(); ++c) {
    const Word bit = Word{1} << c;
    unsigned p = c;
    while (p < m.dim() && !(rows[p] & bit)) ++p;
    if (p == m.dim()) return false;
    std::swap(rows[c], rows[p]);
    for (unsigned r = 0; r < m.dim(); ++r)
      if (r != c && (rows[r] & bit)) rows[r] ^= rows[c];
  }
  return true;
}

std::vector<F2Matrix> reduce_generators(const std::vector<IntMatrix>& gens) {
  std::vector<F2Matrix> out;
  out.reserve(gens.size());
  for (const auto& u : gens) {
    out.push_back(F2Matrix::from_integer(u));
    if (!is_invertible(out.back())) throw InternalError("generator is singular mod 2");
  }
  return out;
}

F2VectorList::F2VectorList(unsigned dim, bool filled) : dim_(dim) {
  if (dim == 0 || dim > kMaxDim) throw ArgumentError("F2 dimension out of range");
  universe_ = std::uint64_t{1} << dim;
  const std::uint64_t bytes = (universe_ + 7) / 8;
  bits_.assign(bytes, filled ? 0xFF : 0x00);
  if (filled && universe_ < 8) bits_[0] = static_cast<std::uint8_t>((1U << universe_) - 1);
}

std::optional<Word> F2VectorList::find_min(std::uint64_t from) const {
  if (from == 0) from = 1;
  if (from >= universe_) return std::nullopt;
  std::uint64_t byte = from >> 3;
  // partial first byte
  std::uint8_t first = static_cast<std::uint8_t>(bits_[byte] & (0xFFU << (from & 7U)));
  if (first) return static_cast<Word>((byte << 3) + static_cast<unsigned>(std::countr_zero(first)));
  ++byte;
  const std::uint64_t nbytes = bits_.size();
  // scan 8 bytes at a time
  while (byte + 8 <= nbytes) {
    std::uint64_t w = 0;
    for (unsigned k = 0; k < 8; ++k) w |= static_cast<std::uint64_t>(bits_[byte + k]) << (8 * k);
    if (w) return static_cast<Word>((byte << 3) + static_cast<unsigned>(std::countr_zero(w)));
    byte += 8;
  }
  for (; byte < nbytes; ++byte)
    if (bits_[byte]) return static_cast<Word>((byte << 3) + static_cast<unsigned>(std::countr_zero(bits_[byte])));
  return std::nullopt;
}

std::uint64_t F2VectorList::size() const {
  std::uint64_t s = 0;
  for (auto b : bits_) s += static_cast<std::uint64_t>(std::popcount(b));
  return s;
}

std::vector<Orbit> orbits(const std::vector<F2Matrix>& gens, unsigned dim, unsigned max_dim) {
  if (dim > max_dim || dim > kMaxDim)
    throw CapacityError("orbit enumeration limited to dimension " + std::to_string(std::min(max_dim, kMaxDim)));
  for (const auto& g : gens)
    if (g.dim() != dim) throw ArgumentError("generator dimension mismatch");
  F2VectorList unmarked(dim, true);
  unmarked.erase(0);
  std::vector<Orbit> out;
  std::vector<Word> queue;
  std::uint64_t from = 1;
  while (auto rep = unmarked.find_min(from)) {
    const Word v = *rep;
    from = static_cast<std::uint64_t>(v) + 1;
    unmarked.erase(v);
    queue.clear();
    queue.push_back(v);
    std::uint64_t length = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Word w = queue[head];
      for (const auto& g : gens) {
        const Word u = matvec(g, w);
        if (unmarked.contains(u)) {
          unmarked.erase(u);
          queue.push_back(u);
          ++length;
        }
      }
    }
    out.push_back({v, length});
  }
  return out;
}

}  // namespace latkit::f2
