#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "latkit/analysis.hpp"
#include "latkit/basis_builder.hpp"
#include "latkit/enumeration.hpp"
#include "latkit/errors.hpp"
#include "latkit/genus.hpp"
#include "latkit/isometry.hpp"
#include "latkit/neighbor.hpp"
#include "latkit/quantizer.hpp"

namespace py = pybind11;
using namespace latkit;

namespace {

using Rows = std::vector<std::vector<std::int64_t>>;

GramMatrix gram(const Rows& rows) { return GramMatrix::from_rows(rows); }

Rows rows_of(const IntMatrix& m) {
  Rows out(m.rows(), std::vector<std::int64_t>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
  return out;
}

std::vector<std::vector<std::string>> rows_of(const RatMatrix& m) {
  std::vector<std::vector<std::string>> out(m.rows(), std::vector<std::string>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = to_string(m(i, j));
  return out;
}

// Rationals travel as strings "p/q" or "p".
Rational rational(const std::string& s) {
  Rational q(s);
  q.canonicalize();
  return q;
}

std::vector<Rational> rational_vector(const std::vector<std::string>& v) {
  std::vector<Rational> out;
  for (const auto& s : v) out.push_back(rational(s));
  return out;
}

const char* parity_name(Parity p) {
  switch (p) {
    case Parity::Even:
      return "even";
    case Parity::Odd:
      return "odd";
    default:
      return "nonintegral";
  }
}

py::dict step_dict(const NeighborStep& s) {
  py::dict d;
  d["adjusted"] = s.adjusted;
  d["transition"] = rows_of(s.transition);
  d["gram"] = rows_of(s.gram);
  d["parity"] = parity_name(s.parity);
  if (s.reduced) d["reduced"] = rows_of(s.reduced->matrix());
  return d;
}

std::vector<BigVector> big_vectors(const std::vector<std::vector<std::int64_t>>& v) {
  std::vector<BigVector> out;
  for (const auto& r : v) {
    BigVector b;
    for (auto x : r) b.emplace_back(static_cast<long>(x));
    out.push_back(std::move(b));
  }
  return out;
}

std::vector<std::vector<std::string>> big_rows(const std::vector<BigVector>& v) {
  std::vector<std::vector<std::string>> out;
  for (const auto& r : v) {
    std::vector<std::string> row;
    for (const auto& x : r) row.push_back(x.get_str());
    out.push_back(std::move(row));
  }
  return out;
}

py::dict estimate_dict(const QuantizerEstimate& q) {
  py::dict d;
  d["g"] = q.g;
  d["sigma"] = q.sigma;
  d["mean_distance"] = q.mean_distance;
  d["samples"] = q.samples;
  d["seed"] = q.seed;
  d["det_used"] = to_string(q.det_used);
  return d;
}

}  // namespace

PYBIND11_MODULE(_latkit, m) {
  m.doc() = "Integral lattices: enumeration, isometries, neighbours, genera, quantizers";

  auto base = py::register_exception<LatticeError>(m, "LatticeError", PyExc_ValueError);
  py::register_exception<ArgumentError>(m, "ArgumentError", base.ptr());
  py::register_exception<RankError>(m, "RankError", base.ptr());
  py::register_exception<CapacityError>(m, "CapacityError", base.ptr());
  py::register_exception<EmptyError>(m, "EmptyError", base.ptr());
  py::register_exception<NormObstruction>(m, "NormObstruction", base.ptr());
  py::register_exception<NotANeighborError>(m, "NotANeighborError", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());

  m.def("parse_gram", [](const std::string& text) { return rows_of(parse_gram(text).matrix()); });
  m.def("format_gram", [](const Rows& g) { return format_gram(gram(g)); });
  m.def("root_lattice", [](const std::string& kind, std::size_t n) {
    if (kind == "A") return rows_of(root_lattice_a(n).matrix());
    if (kind == "D") return rows_of(root_lattice_d(n).matrix());
    if (kind == "E" && n == 8) return rows_of(root_lattice_e8().matrix());
    throw ArgumentError("unknown root lattice " + kind + std::to_string(n));
  });

  m.def("info", [](const Rows& g) {
    const auto gm = gram(g);
    py::dict d;
    d["n"] = gm.dim();
    d["det"] = determinant(gm).get_str();
    d["min"] = minimum(gm);
    d["even"] = is_even(gm);
    return d;
  });

  m.def(
      "short_vectors",
      [](const Rows& g, std::int64_t bound, bool both_signs) {
        EnumerationOptions opt;
        opt.both_signs = both_signs;
        std::vector<std::pair<std::int64_t, LatticeVector>> out;
        for (const auto& v : short_vectors(gram(g), bound, opt)) out.emplace_back(v.norm, v.coords);
        return out;
      },
      py::arg("gram"), py::arg("bound"), py::arg("both_signs") = false);

  m.def("closest_vector", [](const Rows& g, const std::vector<std::string>& target) {
    const auto r = closest_vector({gram(g), rational_vector(target)});
    return std::make_pair(r.point, to_string(r.distance));
  });

  m.def("relevant_vectors", [](const Rows& g) { return relevant_vectors(gram(g)); });

  m.def("automorphism_group", [](const Rows& g) {
    const auto aut = automorphism_group(gram(g));
    py::dict d;
    d["order"] = aut.order.get_str();
    d["orbit_lengths"] = aut.orbit_lengths;
    std::vector<Rows> gens;
    for (const auto& s : aut.generators) gens.push_back(rows_of(s));
    d["generators"] = gens;
    return d;
  });

  m.def("find_isometry", [](const Rows& a, const Rows& b) -> std::optional<Rows> {
    auto t = find_isometry(gram(a), gram(b));
    if (!t) return std::nullopt;
    return rows_of(*t);
  });
  m.def("is_isometric", [](const Rows& a, const Rows& b) { return is_isometric(gram(a), gram(b)); });

  m.def(
      "decompose",
      [](const Rows& g, const std::string& method) {
        const auto d = method == "sieve" ? kneser_sieve(gram(g)) : decompose(gram(g));
        std::vector<Rows> comps;
        for (const auto& c : d.components) comps.push_back(rows_of(c.gram.matrix()));
        return comps;
      },
      py::arg("gram"), py::arg("method") = "generators");

  m.def(
      "basis_from_generators",
      [](const Rows& vectors, const std::string& algorithm, std::size_t workers) {
        const auto gens = big_vectors(vectors);
        GeneratedBasis r;
        if (algorithm == "incremental")
          r = incremental_mlll(gens);
        else if (algorithm == "parallel")
          r = basis_from_generators_parallel(gens, workers);
        else
          r = basis_from_generators(gens);
        py::dict d;
        d["basis"] = big_rows(r.basis);
        d["update_count"] = r.stats.update_count;
        return d;
      },
      py::arg("vectors"), py::arg("algorithm") = "covering", py::arg("workers") = 1);

  m.def("neighbor", [](const Rows& g, const LatticeVector& v) { return step_dict(neighbor_lattice(gram(g), v)); });
  m.def("even_neighbor", [](const Rows& g, const LatticeVector& v) { return step_dict(even_neighbor_basis(gram(g), v)); });
  m.def("odd_partner", [](const Rows& g, const LatticeVector& v) { return step_dict(odd_partner(gram(g), v)); });

  m.def(
      "explore_genus",
      [](const Rows& g, std::size_t workers, std::size_t max_classes) {
        GenusOptions opt;
        opt.workers = workers;
        opt.max_classes = max_classes;
        GenusReport r;
        {
          py::gil_scoped_release release;
          r = explore_genus(gram(g), opt);
        }
        return report_json(r);
      },
      py::arg("gram"), py::arg("workers") = 1, py::arg("max_classes") = 1000);
  m.def("even_unimodular_mass", [](std::size_t n) { return to_string(even_unimodular_mass(n)); });
  m.def("modular_seed", [](std::size_t n, std::int64_t level) { return rows_of(modular_seed(n, level).matrix()); });

  m.def("length_function", [](const Rows& g) { return length_function(gram(g)); });
  m.def("length_spectrum", [](const Rows& g) { return length_spectrum(gram(g)); });
  m.def("spectrum_histogram", [](const std::vector<std::int64_t>& values) {
    std::vector<std::pair<std::int64_t, std::uint64_t>> out;
    for (const auto& [value, count] : spectrum_histogram(values)) out.emplace_back(value, count);
    return out;
  });
  m.def("walsh_hadamard", [](std::vector<std::int64_t> f) {
    walsh_hadamard(f);
    return f;
  });

  m.def(
      "estimate_g",
      [](const std::vector<std::vector<std::string>>& g, std::uint64_t samples, std::uint64_t seed, std::size_t workers,
         const std::vector<std::vector<std::string>>& cosets) {
        RatMatrix gm(g.size(), g.size());
        for (std::size_t i = 0; i < g.size(); ++i) {
          if (g[i].size() != g.size()) throw ArgumentError("Gram matrix must be square");
          for (std::size_t j = 0; j < g.size(); ++j) gm(i, j) = rational(g[i][j]);
        }
        QuantizerOptions opt;
        opt.samples = samples;
        opt.seed = seed;
        opt.workers = workers;
        QuantizerEstimate q;
        py::gil_scoped_release release;
        if (cosets.empty()) {
          q = estimate_g(gm, opt);
        } else {
          std::vector<std::vector<Rational>> offs;
          for (const auto& c : cosets) offs.push_back(rational_vector(c));
          q = estimate_g_cosets(gm, offs, opt);
        }
        py::gil_scoped_acquire acquire;
        return estimate_dict(q);
      },
      py::arg("gram"), py::arg("samples") = 1'000'000, py::arg("seed") = 0, py::arg("workers") = 1,
      py::arg("cosets") = std::vector<std::vector<std::string>>{});
}
