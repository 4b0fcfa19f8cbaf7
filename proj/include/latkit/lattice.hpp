#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "latkit/arith.hpp"

namespace latkit {

// Coordinates of a lattice vector with respect to a basis.
using LatticeVector = std::vector<std::int64_t>;

// Symmetric positive definite integral Gram matrix.
class GramMatrix {
 public:
  GramMatrix() = default;
  // Throws ArgumentError unless the matrix is square, symmetric and positive definite.
  explicit GramMatrix(IntMatrix entries);
  static GramMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows);

  std::size_t dim() const { return m_.rows(); }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  const IntMatrix& matrix() const { return m_; }

  std::int64_t norm(std::span<const std::int64_t> x) const;
  std::int64_t inner(std::span<const std::int64_t> x, std::span<const std::int64_t> y) const;
  // Gram matrix applied to x.
  std::vector<std::int64_t> apply(std::span<const std::int64_t> x) const;
  std::int64_t max_diagonal() const;

  bool operator==(const GramMatrix& o) const { return m_ == o.m_; }

 private:
  IntMatrix m_;
};

// Basis of a lattice as rows in an ambient space with a rational quadratic form.
class BasisMatrix {
 public:
  BasisMatrix() = default;
  // Standard inner product on the ambient space. Throws RankError if rows are dependent.
  explicit BasisMatrix(RatMatrix rows);
  BasisMatrix(RatMatrix rows, RatMatrix ambient_form);

  std::size_t dim() const { return rows_.rows(); }
  std::size_t ambient_dim() const { return rows_.cols(); }
  const RatMatrix& rows() const { return rows_; }
  const RatMatrix& ambient_form() const { return form_; }

 private:
  RatMatrix rows_;
  RatMatrix form_;
};

RatMatrix rational_gram(const BasisMatrix& b);
// Throws ArgumentError if the Gram matrix is not integral.
GramMatrix gram_of(const BasisMatrix& b);
std::optional<GramMatrix> to_gram(const RatMatrix& g);

Integer determinant(const GramMatrix& g);
bool is_even(const GramMatrix& g);
RatMatrix dual(const GramMatrix& g);
GramMatrix direct_sum(const GramMatrix& a, const GramMatrix& b);
GramMatrix rescale(const GramMatrix& g, std::int64_t c);
RatMatrix rescale(const RatMatrix& g, const Rational& c);
// Gram matrix of the basis given by the columns of t: t^T g t.
GramMatrix transform(const GramMatrix& g, const IntMatrix& t);
// Smallest nonzero norm (v,v); delegates to the enumeration engine.
std::int64_t minimum(const GramMatrix& g);

// Text format: first line n, then n rows. '#' starts a comment line.
// Lower triangular rows are accepted.
GramMatrix read_gram(std::istream& in);
GramMatrix parse_gram(const std::string& text);
void write_gram(std::ostream& out, const GramMatrix& g);
std::string format_gram(const GramMatrix& g);

// Standard Gram matrices used throughout.
GramMatrix identity_gram(std::size_t n);
GramMatrix root_lattice_a(std::size_t n);
GramMatrix root_lattice_d(std::size_t n);
GramMatrix root_lattice_e8();

}  // namespace latkit
