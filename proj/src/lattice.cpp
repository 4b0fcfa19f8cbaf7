#include "latkit/lattice.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

namespace latkit {

namespace {

bool positive_definite(const IntMatrix& m) {
  const std::size_t n = m.rows();
  RatMatrix a = to_rational(m);
  for (std::size_t k = 0; k < n; ++k) {
    if (a(k, k) <= 0) return false;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      Rational f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return true;
}

}  // namespace

GramMatrix::GramMatrix(IntMatrix entries) : m_(std::move(entries)) {
  if (m_.rows() != m_.cols()) throw ArgumentError("Gram matrix must be square");
  if (m_.rows() == 0) throw ArgumentError("Gram matrix must have positive dimension");
  for (std::size_t i = 0; i < m_.rows(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (m_(i, j) != m_(j, i)) throw ArgumentError("Gram matrix must be symmetric");
  if (!positive_definite(m_)) throw ArgumentError("Gram matrix must be positive definite");
}

GramMatrix GramMatrix::from_rows(const std::vector<std::vector<std::int64_t>>& rows) {
  return GramMatrix(IntMatrix::from_rows(rows));
}

std::int64_t GramMatrix::inner(std::span<const std::int64_t> x,
                               std::span<const std::int64_t> y) const {
  const std::size_t n = dim();
  if (x.size() != n || y.size() != n) throw ArgumentError("vector length does not match dimension");
  __int128 s = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] == 0) continue;
    __int128 row = 0;
    for (std::size_t j = 0; j < n; ++j) row += static_cast<__int128>(m_(i, j)) * y[j];
    s += row * x[i];
  }
  if (s > INT64_MAX || s < INT64_MIN) throw CapacityError("inner product overflows 64 bits");
  return static_cast<std::int64_t>(s);
}

std::int64_t GramMatrix::norm(std::span<const std::int64_t> x) const { return inner(x, x); }

std::vector<std::int64_t> GramMatrix::apply(std::span<const std::int64_t> x) const {
  const std::size_t n = dim();
  std::vector<std::int64_t> out(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    __int128 s = 0;
    for (std::size_t j = 0; j < n; ++j) s += static_cast<__int128>(m_(i, j)) * x[j];
    if (s > INT64_MAX || s < INT64_MIN) throw CapacityError("Gram product overflows 64 bits");
    out[i] = static_cast<std::int64_t>(s);
  }
  return out;
}

std::int64_t GramMatrix::max_diagonal() const {
  std::int64_t m = 0;
  for (std::size_t i = 0; i < dim(); ++i) m = std::max(m, m_(i, i));
  return m;
}

BasisMatrix::BasisMatrix(RatMatrix rows) : BasisMatrix(rows, RatMatrix::identity(rows.cols())) {}

BasisMatrix::BasisMatrix(RatMatrix rows, RatMatrix ambient_form)
    : rows_(std::move(rows)), form_(std::move(ambient_form)) {
  if (form_.rows() != rows_.cols() || form_.cols() != rows_.cols())
    throw ArgumentError("ambient form does not match basis width");
  if (rows_.rows() == 0) throw RankError("empty basis");
  if (rank(rows_) != rows_.rows()) throw RankError("basis rows are linearly dependent");
}

RatMatrix rational_gram(const BasisMatrix& b) {
  return multiply(multiply(b.rows(), b.ambient_form()), transpose(b.rows()));
}

GramMatrix gram_of(const BasisMatrix& b) {
  RatMatrix g = rational_gram(b);
  if (!is_integral(g)) throw ArgumentError("Gram matrix of basis is not integral");
  return GramMatrix(to_int(g));
}

std::optional<GramMatrix> to_gram(const RatMatrix& g) {
  if (!is_integral(g)) return std::nullopt;
  return GramMatrix(to_int(g));
}

Integer determinant(const GramMatrix& g) { return determinant(to_big(g.matrix())); }

bool is_even(const GramMatrix& g) {
  for (std::size_t i = 0; i < g.dim(); ++i)
    if (g(i, i) % 2 != 0) return false;
  return true;
}

RatMatrix dual(const GramMatrix& g) { return inverse(to_rational(g.matrix())); }

GramMatrix direct_sum(const GramMatrix& a, const GramMatrix& b) {
  const std::size_t n = a.dim() + b.dim();
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) m(a.dim() + i, a.dim() + j) = b(i, j);
  return GramMatrix(std::move(m));
}

GramMatrix rescale(const GramMatrix& g, std::int64_t c) {
  if (c <= 0) throw ArgumentError("scale factor must be positive");
  IntMatrix m = g.matrix();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      __int128 v = static_cast<__int128>(m(i, j)) * c;
      if (v > INT64_MAX || v < INT64_MIN) throw CapacityError("rescaled entry overflows");
      m(i, j) = static_cast<std::int64_t>(v);
    }
  return GramMatrix(std::move(m));
}

RatMatrix rescale(const RatMatrix& g, const Rational& c) {
  if (c <= 0) throw ArgumentError("scale factor must be positive");
  RatMatrix m = g;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) *= c;
  return m;
}

GramMatrix transform(const GramMatrix& g, const IntMatrix& t) {
  BigMatrix bt = to_big(t);
  return GramMatrix(to_int(multiply(multiply(transpose(bt), to_big(g.matrix())), bt)));
}

namespace {

struct Token {
  std::string text;
  std::size_t column;
};

std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r' || line[i] == ','))
      ++i;
    if (i >= line.size()) break;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' && line[i] != ',')
      ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

std::int64_t parse_int(const Token& t, std::size_t line) {
  std::int64_t v = 0;
  const char* b = t.text.data();
  const char* e = b + t.text.size();
  if (*b == '+') ++b;
  auto [p, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || p != e) throw ParseError(line, t.column, "expected integer, got '" + t.text + "'");
  return v;
}

}  // namespace

GramMatrix read_gram(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::size_t n = 0;
  bool have_n = false;
  std::vector<std::vector<std::int64_t>> rows;
  std::vector<std::size_t> row_lines;
  std::size_t last_line = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = tokenize(line);
    if (toks.empty() || toks[0].text[0] == '#') continue;
    last_line = lineno;
    if (!have_n) {
      if (toks.size() != 1) throw ParseError(lineno, toks[1].column, "dimension line must hold one integer");
      std::int64_t d = parse_int(toks[0], lineno);
      if (d <= 0) throw ParseError(lineno, toks[0].column, "dimension must be positive");
      n = static_cast<std::size_t>(d);
      have_n = true;
      continue;
    }
    if (rows.size() == n) throw ParseError(lineno, 1, "more rows than the declared dimension");
    const std::size_t i = rows.size();
    if (toks.size() != n && toks.size() != i + 1)
      throw ParseError(lineno, toks.back().column,
                       "row " + std::to_string(i + 1) + " must have " + std::to_string(n) + " or " +
                           std::to_string(i + 1) + " entries");
    std::vector<std::int64_t> r;
    for (const auto& t : toks) r.push_back(parse_int(t, lineno));
    rows.push_back(std::move(r));
    row_lines.push_back(lineno);
  }
  if (!have_n) throw ParseError(lineno + 1, 1, "missing dimension line");
  if (rows.size() != n)
    throw ParseError(last_line + 1, 1, "expected " + std::to_string(n) + " rows, found " + std::to_string(rows.size()));
  IntMatrix m(n, n);
  std::vector<bool> set(n * n, false);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      const std::int64_t v = rows[i][j];
      if (set[i * n + j] && m(i, j) != v)
        throw ParseError(row_lines[i], 1,
                         "matrix is not symmetric at (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
      m(i, j) = m(j, i) = v;
      set[i * n + j] = set[j * n + i] = true;
    }
  }
  return GramMatrix(std::move(m));
}

GramMatrix parse_gram(const std::string& text) {
  std::istringstream in(text);
  return read_gram(in);
}

void write_gram(std::ostream& out, const GramMatrix& g) {
  out << g.dim() << '\n';
  for (std::size_t i = 0; i < g.dim(); ++i) {
    for (std::size_t j = 0; j < g.dim(); ++j) {
      if (j) out << ' ';
      out << g(i, j);
    }
    out << '\n';
  }
}

std::string format_gram(const GramMatrix& g) {
  std::ostringstream out;
  write_gram(out, g);
  return out.str();
}

GramMatrix identity_gram(std::size_t n) { return GramMatrix(IntMatrix::identity(n)); }

GramMatrix root_lattice_a(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = 2;
    if (i + 1 < n) m(i, i + 1) = m(i + 1, i) = -1;
  }
  return GramMatrix(std::move(m));
}

GramMatrix root_lattice_d(std::size_t n) {
  if (n < 3) throw ArgumentError("D_n needs n >= 3");
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 2;
  for (std::size_t i = 0; i + 2 < n; ++i) m(i, i + 1) = m(i + 1, i) = -1;
  m(n - 3, n - 1) = m(n - 1, n - 3) = -1;
  return GramMatrix(std::move(m));
}

GramMatrix root_lattice_e8() {
  IntMatrix m(8, 8);
  for (std::size_t i = 0; i < 8; ++i) m(i, i) = 2;
  // chain 0-2-3-4-5-6-7 with node 1 attached to node 3
  const std::size_t edges[][2] = {{0, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {1, 3}};
  for (auto [a, b] : edges) m(a, b) = m(b, a) = -1;
  return GramMatrix(std::move(m));
}

}  // namespace latkit
