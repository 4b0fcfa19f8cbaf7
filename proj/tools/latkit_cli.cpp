#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "latkit/analysis.hpp"
#include "latkit/basis_builder.hpp"
#include "latkit/enumeration.hpp"
#include "latkit/errors.hpp"
#include "latkit/genus.hpp"
#include "latkit/isometry.hpp"
#include "latkit/lattice.hpp"
#include "latkit/quantizer.hpp"

using namespace latkit;
using json = nlohmann::json;

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kVerification = 2, kCapacity = 3 };

struct Config {
  std::size_t workers = 1;
  std::uint64_t seed = 0;
  std::string format = "text";
  std::size_t max_vectors = 5'000'000;
  unsigned f2_dim = f2::kDefaultOrbitDim;
};

GramMatrix load_gram(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open " + path);
  try {
    return read_gram(in);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.column(), path + ": " + std::string(e.what()));
  }
}

// Whitespace separated tokens of the non-comment lines of a file.
std::vector<std::vector<std::string>> load_rows(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open " + path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream s(line);
    std::vector<std::string> toks;
    for (std::string t; s >> t;) toks.push_back(t);
    if (toks.empty() || toks[0][0] == '#') continue;
    rows.push_back(std::move(toks));
  }
  return rows;
}

Rational parse_rational(const std::string& text) {
  try {
    Rational q(text);
    if (q.get_den() == 0) throw ArgumentError("zero denominator in " + text);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw ArgumentError("not a rational number: " + text);
  }
}

std::string vec_str(const std::vector<std::int64_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

json gram_json(const GramMatrix& g) {
  json rows = json::array();
  for (std::size_t i = 0; i < g.dim(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < g.dim(); ++j) row.push_back(g(i, j));
    rows.push_back(row);
  }
  return rows;
}

json int_matrix_json(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

void write_matrix(std::ostream& out, const IntMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? " " : "") << m(i, j);
    out << "\n";
  }
}

// ---------------------------------------------------------------------------

int cmd_info(const Config& cfg, const std::string& file) {
  const auto g = load_gram(file);
  const auto det = determinant(g);
  const auto min = minimum(g);
  const bool even = is_even(g);
  if (cfg.format == "json") {
    std::cout << json{{"n", g.dim()}, {"det", det.get_str()}, {"min", min}, {"even", even}}.dump() << "\n";
  } else if (cfg.format == "csv") {
    std::cout << "n,det,min,even\n" << g.dim() << "," << det << "," << min << "," << (even ? "true" : "false") << "\n";
  } else {
    std::cout << "n=" << g.dim() << " det=" << det << " min=" << min << " even=" << (even ? "true" : "false") << "\n";
  }
  return kOk;
}

int cmd_shortvec(const Config& cfg, const std::string& file, std::int64_t bound, bool both) {
  const auto g = load_gram(file);
  EnumerationOptions opt;
  opt.both_signs = both;
  opt.max_vectors = cfg.max_vectors;
  const auto sv = short_vectors(g, bound, opt);
  if (cfg.format == "json") {
    json arr = json::array();
    for (const auto& v : sv) arr.push_back({{"norm", v.norm}, {"coords", v.coords}});
    std::cout << json{{"bound", bound}, {"count", sv.size()}, {"vectors", arr}}.dump() << "\n";
  } else if (cfg.format == "csv") {
    std::cout << "norm,coords\n";
    for (const auto& v : sv) std::cout << v.norm << "," << vec_str(v.coords) << "\n";
  } else {
    std::cout << "count=" << sv.size() << "\n";
    for (const auto& v : sv) std::cout << v.norm << ": " << vec_str(v.coords) << "\n";
  }
  return kOk;
}

int cmd_isom(const Config& cfg, const std::string& fa, const std::string& fb) {
  const auto a = load_gram(fa);
  const auto b = load_gram(fb);
  const auto t = find_isometry(a, b);
  if (cfg.format == "json") {
    json j{{"isometric", t.has_value()}};
    if (t) j["transform"] = int_matrix_json(*t);
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "isometric=" << (t ? "true" : "false") << "\n";
    if (t) write_matrix(std::cout, *t);
  }
  return kOk;
}

int cmd_autom(const Config& cfg, const std::string& file) {
  const auto g = load_gram(file);
  const auto aut = automorphism_group(g);
  if (cfg.format == "json") {
    json gens = json::array();
    for (const auto& s : aut.generators) gens.push_back(int_matrix_json(s));
    std::cout << json{{"order", aut.order.get_str()}, {"orbit_lengths", aut.orbit_lengths}, {"generators", gens}}.dump()
              << "\n";
  } else {
    std::cout << "order=" << aut.order << "\n";
    std::cout << "orbit_lengths=" << vec_str(std::vector<std::int64_t>(aut.orbit_lengths.begin(), aut.orbit_lengths.end()))
              << "\n";
    std::cout << "generators=" << aut.generators.size() << "\n";
    for (const auto& s : aut.generators) {
      write_matrix(std::cout, s);
      std::cout << "\n";
    }
  }
  return kOk;
}

int cmd_decompose(const Config& cfg, const std::string& file, const std::string& method) {
  const auto g = load_gram(file);
  const auto d = method == "sieve" ? kneser_sieve(g) : decompose(g);
  if (cfg.format == "json") {
    json comps = json::array();
    for (const auto& c : d.components) comps.push_back({{"basis", int_matrix_json(c.basis)}, {"gram", gram_json(c.gram)}});
    std::cout << json{{"components", comps}, {"examined", d.stats.examined}, {"early_exit", d.early_exit}}.dump() << "\n";
  } else {
    std::cout << "components=" << d.components.size() << "\n";
    for (const auto& c : d.components) {
      std::cout << "# dim " << c.gram.dim() << " det " << determinant(c.gram) << "\n";
      write_gram(std::cout, c.gram);
    }
  }
  return kOk;
}

int cmd_genbasis(const Config& cfg, const std::string& file, const std::string& algorithm) {
  std::vector<BigVector> gens;
  for (const auto& row : load_rows(file)) {
    BigVector v;
    for (const auto& t : row) {
      Integer x;
      if (x.set_str(t, 10) != 0) throw ArgumentError("not an integer: " + t);
      v.push_back(x);
    }
    if (!gens.empty() && v.size() != gens[0].size()) throw ArgumentError("generators have different lengths");
    gens.push_back(std::move(v));
  }
  if (gens.empty()) throw EmptyError("no generators");
  const auto start = std::chrono::steady_clock::now();
  GeneratedBasis r;
  if (algorithm == "incremental")
    r = incremental_mlll(gens);
  else if (algorithm == "parallel")
    r = basis_from_generators_parallel(gens, cfg.workers);
  else
    r = basis_from_generators(gens);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (cfg.format == "json") {
    json rows = json::array();
    for (const auto& v : r.basis) {
      json row = json::array();
      for (const auto& x : v) row.push_back(x.get_str());
      rows.push_back(row);
    }
    std::cout << json{{"basis", rows}, {"update_count", r.stats.update_count}, {"seconds", secs}}.dump() << "\n";
  } else if (cfg.format == "csv") {
    std::cout << "generators,rank,update_count,seconds\n"
              << gens.size() << "," << r.basis.size() << "," << r.stats.update_count << "," << secs << "\n";
  } else {
    std::cout << "rank=" << r.basis.size() << " update_count=" << r.stats.update_count << "\n";
    for (const auto& v : r.basis) {
      for (std::size_t j = 0; j < v.size(); ++j) std::cout << (j ? " " : "") << v[j];
      std::cout << "\n";
    }
  }
  return kOk;
}

int cmd_genus(const Config& cfg, const std::string& file, const std::string& expected, std::size_t max_classes,
              const std::string& out) {
  const auto g = load_gram(file);
  GenusOptions opt;
  opt.workers = cfg.workers;
  opt.max_classes = max_classes;
  opt.max_orbit_dim = cfg.f2_dim;
  const auto r = explore_genus(g, opt);
  const std::string report = report_json(r);
  if (!out.empty()) {
    std::ofstream f(out);
    if (!f) throw ArgumentError("cannot write " + out);
    f << report << "\n";
  }
  if (cfg.format == "json") {
    std::cout << report << "\n";
  } else {
    std::cout << "classes=" << r.classes.size() << " mass=" << to_string(r.mass)
              << " skipped_orbits=" << r.skipped_orbits << " complete=" << (r.complete ? "true" : "false") << "\n";
    for (std::size_t i = 0; i < r.classes.size(); ++i)
      std::cout << "K" << i + 1 << ": min=" << r.classes[i].min << " aut_order=" << r.classes[i].aut.order << "\n";
    for (const auto& row : r.incidence)
      std::cout << vec_str(std::vector<std::int64_t>(row.begin(), row.end())) << "\n";
  }
  if (!expected.empty()) {
    const auto check = mass_check(r, parse_rational(expected));
    std::cerr << "mass check: " << (check.ok ? "ok" : "mismatch") << " discrepancy=" << to_string(check.discrepancy)
              << "\n";
    if (!check.ok) return kVerification;
  }
  return kOk;
}

int cmd_dft(const Config& cfg, const std::string& file, bool full, const std::string& out) {
  const auto g = load_gram(file);
  const auto s = length_spectrum(g);
  const auto h = spectrum_histogram(s);
  std::ostringstream csv;
  csv << "coefficient,multiplicity\n";
  for (const auto& [v, m] : h) csv << v << "," << m << "\n";
  if (!out.empty()) {
    std::ofstream f(out);
    if (!f) throw ArgumentError("cannot write " + out);
    f << csv.str();
  }
  if (cfg.format == "json") {
    json hist = json::array();
    for (const auto& [v, m] : h) hist.push_back({v, m});
    json j{{"histogram", hist}};
    if (full) j["coefficients"] = s;
    std::cout << j.dump() << "\n";
  } else if (cfg.format == "csv") {
    std::cout << csv.str();
  } else {
    if (full)
      for (std::size_t i = 0; i < s.size(); ++i) std::cout << i << " " << s[i] << "\n";
    else
      for (const auto& [v, m] : h) std::cout << v << ": " << m << "\n";
  }
  return kOk;
}

int cmd_quantize(const Config& cfg, const std::string& file, std::uint64_t samples, const std::string& cosets) {
  const auto g = load_gram(file);
  QuantizerOptions opt;
  opt.samples = samples;
  opt.seed = cfg.seed;
  opt.workers = cfg.workers;
  QuantizerEstimate q;
  if (cosets.empty()) {
    q = estimate_g(g, opt);
  } else {
    std::vector<std::vector<Rational>> offsets;
    for (const auto& row : load_rows(cosets)) {
      std::vector<Rational> c;
      for (const auto& t : row) c.push_back(parse_rational(t));
      offsets.push_back(std::move(c));
    }
    q = estimate_g_cosets(to_rational(g.matrix()), offsets, opt);
  }
  if (cfg.format == "json") {
    std::cout << json{{"g_value", q.g},    {"sigma_hat", q.sigma}, {"t", q.samples},
                      {"seed", q.seed}, {"det_used", to_string(q.det_used)}}
                     .dump()
              << "\n";
  } else if (cfg.format == "csv") {
    std::cout << "g_value,sigma_hat,t,seed\n" << q.g << "," << q.sigma << "," << q.samples << "," << q.seed << "\n";
  } else {
    std::cout.precision(8);
    std::cout << "g_value=" << q.g << " sigma_hat=" << q.sigma << " t=" << q.samples << " seed=" << q.seed << "\n";
  }
  return kOk;
}

int cmd_relevant(const Config& cfg, const std::string& file) {
  const auto g = load_gram(file);
  const auto rel = relevant_vectors(g);
  if (cfg.format == "json") {
    std::cout << json{{"count", rel.size()}, {"vectors", rel}}.dump() << "\n";
  } else if (cfg.format == "csv") {
    std::cout << "norm,coords\n";
    for (const auto& v : rel) std::cout << g.norm(v) << "," << vec_str(v) << "\n";
  } else {
    std::cout << "count=" << rel.size() << "\n";
    for (const auto& v : rel) std::cout << g.norm(v) << ": " << vec_str(v) << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Integral lattice toolkit"};
  app.require_subcommand(1);
  Config cfg;
  app.add_option("--workers", cfg.workers, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "random seed");
  app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--max-vectors", cfg.max_vectors, "enumeration cap")->check(CLI::PositiveNumber);
  app.add_option("--f2-dim", cfg.f2_dim, "largest dimension for orbit computations on L/2L")
      ->check(CLI::Range(1U, f2::kMaxDim));

  std::string file, file2, method = "generators", algorithm = "covering", expected, out, cosets;
  std::int64_t bound = 0;
  bool both = false, full = false, histogram = false;
  std::size_t max_classes = 1000;
  std::uint64_t samples = 1'000'000;
  int code = kOk;

  auto* info = app.add_subcommand("info", "dimension, determinant, minimum and parity");
  info->add_option("gram", file)->required();
  info->callback([&] { code = cmd_info(cfg, file); });

  auto* sv = app.add_subcommand("shortvec", "vectors of norm at most the bound");
  sv->add_option("gram", file)->required();
  sv->add_option("--bound", bound)->required();
  sv->add_flag("--both-signs", both);
  sv->callback([&] { code = cmd_shortvec(cfg, file, bound, both); });

  auto* isom = app.add_subcommand("isom", "isometry test");
  isom->add_option("a", file)->required();
  isom->add_option("b", file2)->required();
  isom->callback([&] { code = cmd_isom(cfg, file, file2); });

  auto* autom = app.add_subcommand("autom", "automorphism group");
  autom->add_option("gram", file)->required();
  autom->callback([&] { code = cmd_autom(cfg, file); });

  auto* dec = app.add_subcommand("decompose", "orthogonal decomposition");
  dec->add_option("gram", file)->required();
  dec->add_option("--method", method)->check(CLI::IsMember({"generators", "sieve"}));
  dec->callback([&] { code = cmd_decompose(cfg, file, method); });

  auto* gb = app.add_subcommand("genbasis", "basis of the lattice generated by the vectors in a file");
  gb->add_option("vectors", file)->required();
  gb->add_option("--algorithm", algorithm)->check(CLI::IsMember({"covering", "incremental", "parallel"}));
  gb->callback([&] { code = cmd_genbasis(cfg, file, algorithm); });

  auto* genus = app.add_subcommand("genus", "classes of the genus by 2-neighbours");
  genus->add_option("seed", file)->required();
  genus->add_option("--expected-mass", expected, "p/q");
  genus->add_option("--max-classes", max_classes)->check(CLI::PositiveNumber);
  genus->add_option("--out", out, "report file");
  genus->callback([&] { code = cmd_genus(cfg, file, expected, max_classes, out); });

  auto* dft = app.add_subcommand("dft", "transform of the length function on L/2L");
  dft->add_option("gram", file)->required();
  auto* full_flag = dft->add_flag("--full", full, "all coefficients");
  dft->add_flag("--histogram", histogram, "coefficient multiplicities (default)")->excludes(full_flag);
  dft->add_option("--out", out, "histogram as csv");
  dft->callback([&] { code = cmd_dft(cfg, file, full, out); });

  auto* quant = app.add_subcommand("quantize", "normalised second moment by sampling");
  quant->add_option("gram", file)->required();
  quant->add_option("--samples", samples)->check(CLI::Range(std::uint64_t{2}, std::uint64_t{1} << 40));
  quant->add_option("--cosets", cosets, "offset file, one rational vector per line");
  quant->callback([&] { code = cmd_quantize(cfg, file, samples, cosets); });

  auto* rel = app.add_subcommand("relevant", "Voronoi-relevant vectors");
  rel->add_option("gram", file)->required();
  rel->callback([&] { code = cmd_relevant(cfg, file); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  } catch (const CapacityError& e) {
    std::cerr << "capacity exceeded: " << e.what() << "\n";
    return kCapacity;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return code;
}
