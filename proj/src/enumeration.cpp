#include "latkit/enumeration.hpp"

#include <algorithm>
#include <limits>

namespace latkit {

Enumerator::Enumerator(const GramMatrix& g) : n_(g.dim()), gram_(g), red_(lll_reduce_gram(g)) {
  tinv_ = to_int(inverse(to_rational(red_.transform)));
  q_.assign(n_ * n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) q_[i * n_ + j] = static_cast<double>(red_.reduced(i, j));
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      q_[j * n_ + i] = q_[i * n_ + j];
      q_[i * n_ + j] /= q_[i * n_ + i];
    }
    for (std::size_t k = i + 1; k < n_; ++k)
      for (std::size_t l = k; l < n_; ++l) q_[k * n_ + l] -= q_[k * n_ + i] * q_[i * n_ + l];
  }
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < i; ++j) q_[i * n_ + j] = 0.0;
}

LatticeVector Enumerator::to_original(std::span<const std::int64_t> y) const {
  LatticeVector x(n_, 0);
  const auto& t = red_.transform;
  for (std::size_t j = 0; j < n_; ++j) {
    if (y[j] == 0) continue;
    for (std::size_t i = 0; i < n_; ++i) x[i] += t(i, j) * y[j];
  }
  return x;
}

LatticeVector Enumerator::to_reduced(std::span<const std::int64_t> x) const {
  LatticeVector y(n_, 0);
  for (std::size_t j = 0; j < n_; ++j) {
    if (x[j] == 0) continue;
    for (std::size_t i = 0; i < n_; ++i) y[i] += tinv_(i, j) * x[j];
  }
  return y;
}

double Enumerator::closest(std::span<const double> t, std::span<std::int64_t> best) const {
  const std::size_t n = n_;
  std::vector<double> c(n), dist(n + 1, 0.0);
  std::vector<std::int64_t> y(n), dx(n), ddx(n);
  double best_d = std::numeric_limits<double>::infinity();

  auto centre = [&](std::size_t i) {
    double s = t[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= q_[i * n + j] * (static_cast<double>(y[j]) - t[j]);
    return s;
  };
  auto start = [&](std::size_t i) {
    c[i] = centre(i);
    y[i] = static_cast<std::int64_t>(std::llround(c[i]));
    dx[i] = ddx[i] = (c[i] >= static_cast<double>(y[i])) ? 1 : -1;
  };
  auto next = [&](std::size_t i) {
    y[i] += dx[i];
    ddx[i] = -ddx[i];
    dx[i] = ddx[i] - dx[i];
  };

  std::size_t i = n - 1;
  start(i);
  while (true) {
    const double diff = static_cast<double>(y[i]) - c[i];
    const double d = dist[i + 1] + q_[i * n + i] * diff * diff;
    if (d < best_d) {
      if (i == 0) {
        best_d = d;
        std::copy(y.begin(), y.end(), best.begin());
        next(0);
      } else {
        dist[i] = d;
        --i;
        start(i);
      }
    } else {
      ++i;
      if (i == n) break;
      next(i);
    }
  }
  return best_d;
}

namespace {

bool positive_representative(const LatticeVector& x) {
  for (auto v : x)
    if (v != 0) return v > 0;
  return false;
}

bool is_zero(std::span<const std::int64_t> y) {
  return std::all_of(y.begin(), y.end(), [](std::int64_t v) { return v == 0; });
}

}  // namespace

std::vector<ShortVector> short_vectors(const GramMatrix& g, std::int64_t bound, const EnumerationOptions& opt) {
  Enumerator e(g);
  std::vector<ShortVector> out;
  if (bound <= 0) return out;
  e.visit({}, static_cast<double>(bound), [&](std::span<const std::int64_t> y) {
    if (is_zero(y)) return true;
    const std::int64_t nrm = e.reduced().norm(y);
    if (nrm > bound) return true;
    LatticeVector x = e.to_original(y);
    if (!opt.both_signs && !positive_representative(x)) return true;
    if (out.size() >= opt.max_vectors)
      throw CapacityError("more than " + std::to_string(opt.max_vectors) + " short vectors");
    out.push_back({std::move(x), nrm});
    return true;
  });
  std::sort(out.begin(), out.end(), [](const ShortVector& a, const ShortVector& b) {
    if (a.norm != b.norm) return a.norm < b.norm;
    return a.coords < b.coords;
  });
  return out;
}

std::uint64_t count_short_vectors(const GramMatrix& g, std::int64_t bound) {
  std::uint64_t total = 0;
  for (const auto& [norm, count] : norm_histogram(g, bound)) total += count;
  return total;
}

std::map<std::int64_t, std::uint64_t> norm_histogram(const GramMatrix& g, std::int64_t bound) {
  Enumerator e(g);
  std::map<std::int64_t, std::uint64_t> hist;
  if (bound <= 0) return hist;
  e.visit({}, static_cast<double>(bound), [&](std::span<const std::int64_t> y) {
    if (is_zero(y)) return true;
    const std::int64_t nrm = e.reduced().norm(y);
    if (nrm <= bound) ++hist[nrm];
    return true;
  });
  return hist;
}

std::int64_t minimum(const GramMatrix& g) {
  Enumerator e(g);
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (std::size_t i = 0; i < g.dim(); ++i) best = std::min(best, e.reduced()(i, i));
  e.visit({}, static_cast<double>(best), [&](std::span<const std::int64_t> y) {
    if (is_zero(y)) return true;
    best = std::min(best, e.reduced().norm(y));
    return true;
  });
  return best;
}

ClosestVector closest_vector(const CosetTarget& target) {
  const GramMatrix& g = target.gram;
  const std::size_t n = g.dim();
  if (target.offset.size() != n) throw ArgumentError("offset length does not match dimension");
  Enumerator e(g);
  // Offset in reduced coordinates.
  std::vector<Rational> tr(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (e.inverse_transform()(i, j) != 0) tr[i] += static_cast<long>(e.inverse_transform()(i, j)) * target.offset[j];
  std::vector<double> td(n), shift(n);
  for (std::size_t i = 0; i < n; ++i) {
    td[i] = tr[i].get_d();
    shift[i] = -td[i];
  }
  std::vector<std::int64_t> approx(n);
  const double d0 = e.closest(td, approx);

  const RatMatrix gq = to_rational(g.matrix());
  auto exact_dist = [&](const LatticeVector& x) {
    std::vector<Rational> diff(n);
    for (std::size_t i = 0; i < n; ++i) diff[i] = Rational(static_cast<long>(x[i])) - target.offset[i];
    Rational s = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (diff[i] == 0) continue;
      Rational row = 0;
      for (std::size_t j = 0; j < n; ++j) row += gq(i, j) * diff[j];
      s += row * diff[i];
    }
    return s;
  };

  ClosestVector best{e.to_original(approx), exact_dist(e.to_original(approx))};
  e.visit(shift, d0, [&](std::span<const std::int64_t> y) {
    LatticeVector x = e.to_original(y);
    Rational d = exact_dist(x);
    if (d < best.distance || (d == best.distance && x < best.point)) best = {std::move(x), d};
    return true;
  });
  return best;
}

namespace {

struct CosetSearch {
  const Enumerator& e;
  std::vector<std::int64_t> v;
  std::vector<double> shift;  // half the reduced coordinates of v

  CosetSearch(const Enumerator& en, std::span<const std::int64_t> v0) : e(en), v(v0.begin(), v0.end()) {
    if (v.size() != e.dim()) throw ArgumentError("vector length does not match dimension");
    LatticeVector vr = e.to_reduced(v);
    shift.resize(vr.size());
    for (std::size_t i = 0; i < vr.size(); ++i) shift[i] = 0.5 * static_cast<double>(vr[i]);
  }

  // w = v + 2 T y
  std::int64_t norm_of(std::span<const std::int64_t> y) const {
    LatticeVector w = e.to_original(y);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = v[i] + 2 * w[i];
    return e.gram().norm(w);
  }

  std::int64_t minimum() const {
    std::vector<double> t(shift.size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = -shift[i];
    std::vector<std::int64_t> y(shift.size());
    const double d = e.closest(t, y);
    std::int64_t best = norm_of(y);
    e.visit(shift, d, [&](std::span<const std::int64_t> yy) {
      best = std::min(best, norm_of(yy));
      return true;
    });
    return best;
  }

  template <class F>
  void attaining(std::int64_t m, F&& f) const {
    e.visit(shift, static_cast<double>(m) / 4.0, [&](std::span<const std::int64_t> yy) {
      if (norm_of(yy) == m) f(yy);
      return true;
    });
  }
};

}  // namespace

std::int64_t coset_min(const GramMatrix& g, std::span<const std::int64_t> v) {
  Enumerator e(g);
  return CosetSearch(e, v).minimum();
}

std::uint64_t coset_min_count(const GramMatrix& g, std::span<const std::int64_t> v) {
  Enumerator e(g);
  CosetSearch s(e, v);
  const std::int64_t m = s.minimum();
  std::uint64_t count = 0;
  s.attaining(m, [&](std::span<const std::int64_t>) { ++count; });
  return count;
}

std::vector<std::int64_t> coset_minima(const GramMatrix& g, std::size_t max_dim) {
  const std::size_t n = g.dim();
  if (n > max_dim) throw CapacityError("coset table limited to dimension " + std::to_string(max_dim));
  Enumerator e(g);
  std::vector<std::int64_t> out(std::size_t{1} << n, 0);
  LatticeVector v(n, 0);
  for (std::uint64_t code = 1; code < out.size(); ++code) {
    for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<std::int64_t>((code >> i) & 1U);
    out[code] = CosetSearch(e, v).minimum();
  }
  return out;
}

std::vector<LatticeVector> relevant_vectors(const GramMatrix& g, std::size_t max_dim) {
  const std::size_t n = g.dim();
  if (n > max_dim) throw CapacityError("relevant vector search limited to dimension " + std::to_string(max_dim));
  Enumerator e(g);
  std::vector<LatticeVector> out;
  LatticeVector v(n, 0);
  for (std::uint64_t code = 1; code < (std::uint64_t{1} << n); ++code) {
    for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<std::int64_t>((code >> i) & 1U);
    CosetSearch s(e, v);
    const std::int64_t m = s.minimum();
    std::vector<LatticeVector> hits;
    s.attaining(m, [&](std::span<const std::int64_t> y) {
      if (hits.size() < 3) {
        LatticeVector w = s.e.to_original(y);
        for (std::size_t i = 0; i < n; ++i) w[i] = v[i] + 2 * w[i];
        hits.push_back(std::move(w));
      }
    });
    if (hits.size() == 2) {
      out.push_back(hits[0]);
      out.push_back(hits[1]);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace latkit
