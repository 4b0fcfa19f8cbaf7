#include "latkit/quantizer.hpp"

#include <cmath>
#include <thread>

#include "latkit/enumeration.hpp"

namespace latkit {

namespace {

std::uint64_t splitmix(std::uint64_t& s) {
  std::uint64_t z = (s += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t kBlock = 4096;

}  // namespace

SampleStream::SampleStream(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t s = seed;
  std::uint64_t a = splitmix(s);
  std::uint64_t t = index ^ 0xD1B54A32D192ED03ULL;
  std::uint64_t b = splitmix(t);
  state_ = a ^ (b * 0xFF51AFD7ED558CCDULL);
}

std::uint64_t SampleStream::next() { return splitmix(state_); }

double SampleStream::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

struct UniformCellSampler::Impl {
  std::size_t n;
  Integer scale;  // scale * gram is integral
  GramMatrix scaled;
  Enumerator e;
  RatMatrix tinv;
  double det;

  static GramMatrix make_scaled(const RatMatrix& gram, Integer& scale) {
    scale = 1;
    for (const auto& x : gram.data()) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), x.get_den_mpz_t());
    RatMatrix s = rescale(gram, Rational(scale));
    return GramMatrix(to_int(s));
  }

  explicit Impl(const RatMatrix& gram)
      : n(gram.rows()), scaled(make_scaled(gram, scale)), e(scaled), tinv(to_rational(e.inverse_transform())),
        det(determinant(gram).get_d()) {}
};

UniformCellSampler::UniformCellSampler(const RatMatrix& gram) : impl_(std::make_unique<Impl>(gram)) {}
UniformCellSampler::~UniformCellSampler() = default;
UniformCellSampler::UniformCellSampler(UniformCellSampler&&) noexcept = default;

std::size_t UniformCellSampler::dim() const { return impl_->n; }
double UniformCellSampler::det() const { return impl_->det; }

double UniformCellSampler::distance(const double* t) const {
  std::vector<std::int64_t> y(impl_->n);
  return impl_->e.closest(std::span<const double>(t, impl_->n), y) / impl_->scale.get_d();
}

UniformCellSampler::Sample UniformCellSampler::draw(std::uint64_t seed, std::uint64_t index) const {
  Sample s;
  SampleStream rng(seed, index);
  s.point.resize(impl_->n);
  for (auto& x : s.point) x = rng.uniform();
  s.nearest.resize(impl_->n);
  s.distance = impl_->e.closest(s.point, s.nearest) / impl_->scale.get_d();
  return s;
}

std::vector<double> UniformCellSampler::to_reduced(const std::vector<Rational>& x) const {
  if (x.size() != impl_->n) throw ArgumentError("offset length does not match dimension");
  std::vector<double> out(impl_->n);
  for (std::size_t i = 0; i < impl_->n; ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < impl_->n; ++j) s += impl_->tinv(i, j) * x[j];
    out[i] = s.get_d();
  }
  return out;
}

namespace {

QuantizerEstimate run(const UniformCellSampler& sampler, const std::vector<std::vector<double>>& shifts,
                      const Rational& det_used, const QuantizerOptions& opt) {
  const std::size_t n = sampler.dim();
  const std::uint64_t t = opt.samples;
  if (t < 2) throw ArgumentError("need at least two samples");
  const std::uint64_t blocks = (t + kBlock - 1) / kBlock;
  std::vector<long double> sum(blocks, 0.0L), sumsq(blocks, 0.0L);

  auto work = [&](std::uint64_t first_block, std::uint64_t stride) {
    std::vector<double> x(n), y(n);
    for (std::uint64_t b = first_block; b < blocks; b += stride) {
      long double s1 = 0.0L, s2 = 0.0L;
      const std::uint64_t hi = std::min(t, (b + 1) * kBlock);
      for (std::uint64_t i = b * kBlock; i < hi; ++i) {
        SampleStream rng(opt.seed, i);
        for (auto& v : x) v = rng.uniform();
        double best = INFINITY;
        for (const auto& c : shifts) {
          for (std::size_t k = 0; k < n; ++k) y[k] = x[k] - c[k];
          best = std::min(best, sampler.distance(y.data()));
        }
        s1 += best;
        s2 += static_cast<long double>(best) * best;
      }
      sum[b] = s1;
      sumsq[b] = s2;
    }
  };

  const std::size_t workers = std::max<std::size_t>(1, std::min<std::uint64_t>(opt.workers, blocks));
  if (workers == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> threads;
    for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(work, w, workers);
    for (auto& th : threads) th.join();
  }
  long double s1 = 0.0L, s2 = 0.0L;
  for (std::uint64_t b = 0; b < blocks; ++b) {
    s1 += sum[b];
    s2 += sumsq[b];
  }
  const long double tt = static_cast<long double>(t);
  const long double mean = s1 / tt;
  long double var = (s2 - s1 * s1 / tt) / (tt - 1.0L);
  if (var < 0) var = 0;
  const double dn = static_cast<double>(n);
  const double norm = std::pow(det_used.get_d(), -1.0 / dn) / dn;
  QuantizerEstimate q;
  q.samples = t;
  q.seed = opt.seed;
  q.det_used = det_used;
  q.mean_distance = static_cast<double>(mean);
  q.g = norm * static_cast<double>(mean);
  q.sigma = norm * static_cast<double>(std::sqrt(var) / std::sqrt(tt));
  return q;
}

}  // namespace

QuantizerEstimate estimate_g(const RatMatrix& gram, const QuantizerOptions& opt) {
  UniformCellSampler sampler(gram);
  return run(sampler, {std::vector<double>(sampler.dim(), 0.0)}, determinant(gram), opt);
}

QuantizerEstimate estimate_g(const BasisMatrix& basis, const QuantizerOptions& opt) {
  return estimate_g(rational_gram(basis), opt);
}

QuantizerEstimate estimate_g(const GramMatrix& gram, const QuantizerOptions& opt) {
  return estimate_g(to_rational(gram.matrix()), opt);
}

QuantizerEstimate estimate_g_cosets(const RatMatrix& gram, const std::vector<std::vector<Rational>>& offsets,
                                    const QuantizerOptions& opt, bool include_base) {
  const std::size_t n = gram.rows();
  std::vector<std::vector<Rational>> all;
  if (include_base) all.emplace_back(n, Rational(0));
  for (const auto& c : offsets) {
    if (c.size() != n) throw ArgumentError("offset length does not match dimension");
    all.push_back(c);
  }
  if (all.empty()) throw ArgumentError("no cosets given");
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      bool same = true;
      for (std::size_t k = 0; k < n && same; ++k) same = Rational(all[i][k] - all[j][k]).get_den() == 1;
      if (same) throw ArgumentError("offsets " + std::to_string(j) + " and " + std::to_string(i) + " agree modulo L");
    }
  UniformCellSampler sampler(gram);
  std::vector<std::vector<double>> shifts;
  for (const auto& c : all) shifts.push_back(sampler.to_reduced(c));
  const Rational m(static_cast<unsigned long>(all.size()));
  Rational det_used = determinant(gram) / (m * m);
  det_used.canonicalize();
  return run(sampler, shifts, det_used, opt);
}

}  // namespace latkit
