#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <memory>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

#include "complex_parse.hpp"
#include "report.hpp"
#include "resonance/analysis.hpp"
#include "resonance/blaschke.hpp"
#include "resonance/composition_operator.hpp"
#include "resonance/eigensolver.hpp"
#include "resonance/lattice.hpp"
#include "resonance/matrix.hpp"
#include "resonance/spectral.hpp"

namespace resonance::cli {

namespace {

// Validation problems are gathered and reported together.
class Problems {
 public:
  void add(std::string msg) { items_.push_back(std::move(msg)); }

  template <class F>
  auto attempt(F&& f) -> std::optional<decltype(f())> {
    try {
      return f();
    } catch (const std::exception& e) {
      add(e.what());
      return std::nullopt;
    }
  }

  bool empty() const { return items_.empty(); }

  std::string message() const {
    std::string s = "invalid arguments:";
    for (const auto& i : items_) s += "\n  - " + i;
    return s;
  }

 private:
  std::vector<std::string> items_;
};

struct MapArgs {
  std::string kind;
  std::string lambda;
  std::string mu;
  int K = 1;
};

struct SpaceArgs {
  std::string weights = "deg1";
  double a = 0.5;
  std::optional<double> phi;
};

struct OutputArgs {
  std::string json_path;
  std::string csv_path;
  std::string format = "json";
};

void add_map_options(CLI::App* cmd, MapArgs& m) {
  cmd->add_option("--map", m.kind, "b, t, bk, tk or tt (T_lambda o T_mu)")->required();
  cmd->add_option("--lambda", m.lambda, "RE+IMi, r@THETArad or r@Xpi")->required();
  cmd->add_option("--mu", m.mu, "second parameter for --map tt");
  cmd->add_option("--K", m.K, "exponent K for bk and tk");
}

void add_space_options(CLI::App* cmd, SpaceArgs& s) {
  cmd->add_option("--weights", s.weights, "deg1 (alias symmetric), degphi (alias anisotropic) or fr");
  cmd->add_option("--a", s.a, "weight exponent a > 0");
  cmd->add_option("--phi", s.phi, "anisotropy phi >= 1");
}

void add_output_options(CLI::App* cmd, OutputArgs& o) {
  cmd->add_option("--json", o.json_path, "write the JSON report to this file");
  cmd->add_option("--csv", o.csv_path, "write the CSV table to this file");
  cmd->add_option("--format", o.format, "stdout format when no file is named: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
}

std::optional<MapSpec> build_map(const MapArgs& m, Problems& problems) {
  static const std::vector<std::string> kinds{"b", "t", "bk", "tk", "tt"};
  if (std::find(kinds.begin(), kinds.end(), m.kind) == kinds.end()) {
    problems.add("unknown --map '" + m.kind + "' (expected b, t, bk, tk or tt)");
  }
  const auto lambda = problems.attempt([&] { return BlaschkeParam(parse_complex(m.lambda)); });
  std::optional<BlaschkeParam> mu;
  if (m.kind == "tt") {
    if (m.mu.empty()) {
      problems.add("--map tt needs --mu");
    } else {
      mu = problems.attempt([&] { return BlaschkeParam(parse_complex(m.mu)); });
    }
  } else if (!m.mu.empty()) {
    problems.add("--mu is only used with --map tt");
  }
  if (m.K < 1) problems.add("--K must be >= 1");
  if (m.K != 1 && m.kind != "bk" && m.kind != "tk") problems.add("--K is only used with --map bk or tk");
  if (!lambda || m.K < 1) return std::nullopt;
  if (m.kind == "b") return MapSpec::b(*lambda);
  if (m.kind == "t") return MapSpec::t(*lambda);
  if (m.kind == "bk") return MapSpec::bk(*lambda, m.K);
  if (m.kind == "tk") return MapSpec::tk(*lambda, m.K);
  if (m.kind == "tt") {
    if (!mu) return std::nullopt;
    return MapSpec::compose({MapSpec::t(*lambda), MapSpec::t(*mu)});
  }
  return std::nullopt;
}

std::optional<SpaceConfig> build_space(const SpaceArgs& s, Problems& problems) {
  const std::string name = s.weights == "symmetric" ? "deg1" : s.weights;
  const auto family = problems.attempt([&] { return parse_weight_family(name); });
  if (!family) return std::nullopt;
  const double phi = s.phi.value_or(*family == WeightFamily::kDegPhi ? 1.2 : 1.0);
  return problems.attempt([&] { return SpaceConfig::make(*family, s.a, phi); });
}

Json map_json(const MapSpec& spec) {
  Json j;
  const MapSpec& first = spec.atomic() ? spec : spec.factors.front();
  switch (spec.kind) {
    case MapKind::kB: j["kind"] = "b"; break;
    case MapKind::kT: j["kind"] = "t"; break;
    case MapKind::kBK: j["kind"] = "bk"; break;
    case MapKind::kTK: j["kind"] = "tk"; break;
    case MapKind::kCompose: j["kind"] = "tt"; break;
  }
  j["lambda"] = complex_json(first.param.value());
  if (!spec.atomic()) j["mu"] = complex_json(spec.factors.back().param.value());
  if (spec.kind == MapKind::kBK || spec.kind == MapKind::kTK) j["K"] = spec.K;
  j["description"] = describe(spec);
  return j;
}

Json space_json(const SpaceConfig& cfg) {
  Json j;
  j["family"] = to_string(cfg.family());
  j["a"] = cfg.a();
  j["phi"] = cfg.phi();
  return j;
}

Json header(const char* command) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["command"] = command;
  return j;
}

std::string legend_param(const char* name, std::complex<double> z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s = %.6g e^{%.6g i pi}", name, std::abs(z), std::arg(z) / std::numbers::pi);
  return buf;
}

// Writes to a file, reporting failure as a validation problem.
bool write_file(const std::string& path, const std::function<void(std::ostream&)>& emit, std::ostream& err,
                std::ios::openmode mode = std::ios::out) {
  std::ofstream f(path, mode);
  if (!f) {
    err << "error: cannot open '" << path << "' for writing\n";
    return false;
  }
  emit(f);
  f.flush();
  if (!f) {
    err << "error: failed writing '" << path << "'\n";
    return false;
  }
  return true;
}

// Emits the JSON document and CSV table to the requested destinations.
int emit(const OutputArgs& o, const Json& doc, const std::function<void(std::ostream&)>& csv, std::ostream& out,
         std::ostream& err) {
  if (!o.json_path.empty() && !write_file(o.json_path, [&](std::ostream& f) { write_json(f, doc); }, err)) {
    return kExitValidation;
  }
  if (!o.csv_path.empty() && !write_file(o.csv_path, csv, err)) return kExitValidation;
  if (o.json_path.empty() && o.csv_path.empty()) {
    if (o.format == "csv") {
      csv(out);
    } else {
      write_json(out, doc);
    }
  }
  return kExitOk;
}

// ---- spectrum ----------------------------------------------------------------

struct SpectrumArgs {
  MapArgs map;
  SpaceArgs space;
  OutputArgs output;
  std::optional<int> k_min;
  int k_max = 12;
  double floor = 1e-6;
  double tol = 1e-10;
  unsigned threads = 0;
  std::string svg_path;
  std::string dump_path;
};

int cmd_spectrum(const SpectrumArgs& args, std::ostream& out, std::ostream& err) {
  Problems problems;
  const auto spec = build_map(args.map, problems);
  const auto cfg = build_space(args.space, problems);
  const int k_min = args.k_min.value_or(-args.k_max);
  if (k_min > args.k_max) problems.add("--kmin must not exceed --kmax");
  if (!(args.floor >= 0.0)) problems.add("--floor must be >= 0");
  if (!(args.tol > 0.0)) problems.add("--tol must be positive");
  if (!problems.empty()) {
    err << "error: " << problems.message() << "\n";
    return kExitValidation;
  }

  const SpectrumMultiset computed = spectrum(*spec, {k_min, args.k_max, args.floor, args.threads});
  SpectrumMultiset theory;
  std::optional<MatchReport> report;
  std::string theory_note;
  try {
    theory = theoretical_spectrum(*spec, args.floor, LevelRange{k_min, args.k_max});
    report = match(computed, theory, args.tol);
  } catch (const std::invalid_argument& e) {
    theory_note = e.what();
  }

  Json doc = header("spectrum");
  doc["map"] = map_json(*spec);
  doc["space"] = space_json(*cfg);
  doc["range"] = {{"k_min", k_min}, {"k_max", args.k_max}};
  doc["modulus_floor"] = args.floor;
  doc["computed"] = spectrum_json(computed);
  doc["theoretical"] = spectrum_json(theory);
  doc["match"] = report ? match_json(*report, args.tol) : Json{{"note", theory_note}};
  doc["completeness"] = {{"omitted_modulus_bound", computed.omitted_modulus_bound}, {"complete", computed.complete}};

  if (!args.svg_path.empty()) {
    std::vector<std::string> legend{describe(*spec), legend_param("lambda", spec->atomic() ? spec->param.value()
                                                                                           : spec->factors.front().param.value())};
    if (!spec->atomic()) legend.push_back(legend_param("mu", spec->factors.back().param.value()));
    if (!write_file(args.svg_path, [&](std::ostream& f) { write_spectrum_svg(f, computed, theory, legend); }, err)) {
      return kExitValidation;
    }
  }
  if (!args.dump_path.empty()) {
    CMatrix window;
    try {
      window = windowed_matrix(*spec, k_min, args.k_max);
    } catch (const std::invalid_argument& e) {
      err << "error: --dump-matrix: " << e.what() << "\n";
      return kExitValidation;
    }
    const bool csv = args.dump_path.size() >= 4 && args.dump_path.substr(args.dump_path.size() - 4) == ".csv";
    const bool ok = csv ? write_file(args.dump_path, [&](std::ostream& f) { write_matrix_csv(f, window); }, err)
                        : write_file(args.dump_path, [&](std::ostream& f) { write_matrix_binary(f, window); }, err,
                                     std::ios::out | std::ios::binary);
    if (!ok) return kExitValidation;
  }

  const int rc = emit(args.output, doc, [&](std::ostream& f) { write_spectrum_csv(f, computed, theory); }, out, err);
  if (rc != kExitOk) return rc;
  if (report && !report->ok()) {
    err << "mismatch: " << report->missing_theoretical.size() << " missing theoretical, "
        << report->spurious_computed.size() << " spurious computed values\n";
    return kExitMismatch;
  }
  return kExitOk;
}

// ---- hsnorm -------------------------------------------------------------------

struct HsArgs {
  MapArgs map;
  SpaceArgs space;
  OutputArgs output;
  int radius = 30;
  std::optional<int> order;
};

int cmd_hsnorm(HsArgs args, std::ostream& out, std::ostream& err) {
  Problems problems;
  const auto spec = build_map(args.map, problems);
  const auto cfg = build_space(args.space, problems);
  if (args.radius < 0) problems.add("--radius must be >= 0");
  if (args.order && *args.order < 0) problems.add("--order must be >= 0");
  if (!problems.empty()) {
    err << "error: " << problems.message() << "\n";
    return kExitValidation;
  }
  const int order = args.order.value_or(8 * args.radius + 64);
  const HsNormResult hs = hs_norm(*spec, *cfg, args.radius, order);

  Json doc = header("hsnorm");
  doc["map"] = map_json(*spec);
  doc["space"] = space_json(*cfg);
  doc["radius"] = args.radius;
  doc["order"] = order;
  doc["value"] = hs.value;
  doc["delta"] = hs.delta ? Json(*hs.delta) : Json(nullptr);
  doc["delta_bound"] = hs.delta_bound ? Json(*hs.delta_bound) : Json(nullptr);
  std::size_t violations = 0;
  if (hs.delta) {
    for (const auto& [idx, r2] : hs.per_column) {
      if (r2 > std::exp(-*hs.delta * (std::abs(idx.m) + std::abs(idx.n)))) ++violations;
    }
  }
  doc["column_bound_violations"] = violations;
  doc["warnings"] = hs.warnings;
  for (const auto& w : hs.warnings) err << "warning: " << w << "\n";

  const auto csv = [&](std::ostream& f) {
    f << "m,n,ratio_sq,delta_bound\n";
    for (const auto& [idx, r2] : hs.per_column) {
      f << idx.m << ',' << idx.n << ',' << format_double(r2) << ','
        << (hs.delta ? format_double(std::exp(-*hs.delta * (std::abs(idx.m) + std::abs(idx.n)))) : "") << '\n';
    }
  };
  return emit(args.output, doc, csv, out, err);
}

// ---- compactness --------------------------------------------------------------

struct CompactnessArgs {
  std::string lambda;
  SpaceArgs space{"symmetric", 0.5, std::nullopt};
  OutputArgs output;
  int m = 1;
  int n_min = 1;
  int n_max = 100;
  int order = 200;
};

int cmd_compactness(const CompactnessArgs& args, std::ostream& out, std::ostream& err) {
  Problems problems;
  const auto lambda = problems.attempt([&] { return BlaschkeParam(parse_complex(args.lambda)); });
  const auto cfg = build_space(args.space, problems);
  if (lambda && lambda->is_zero()) problems.add("--lambda must be nonzero");
  if (args.m < 1) problems.add("--m must be >= 1");
  if (args.n_min > args.n_max) problems.add("--nmin must not exceed --nmax");
  if (args.order < 0) problems.add("--order must be >= 0");
  if (!problems.empty()) {
    err << "error: " << problems.message() << "\n";
    return kExitValidation;
  }
  std::vector<int> ns;
  for (int n = args.n_min; n <= args.n_max; ++n) ns.push_back(n);
  const CompactnessReport rep = compactness_violation(*lambda, args.m, ns, *cfg, args.order);
  double min_ratio = std::numeric_limits<double>::infinity();
  Json ratios = Json::array();
  for (const auto& [n, r] : rep.ratios) {
    min_ratio = std::min(min_ratio, r);
    ratios.push_back({{"n", n}, {"ratio", r}});
  }

  Json doc = header("compactness");
  doc["lambda"] = complex_json(lambda->value());
  doc["m"] = args.m;
  doc["space"] = space_json(*cfg);
  doc["lower_bound"] = rep.lower_bound;
  doc["swap_symmetric"] = rep.swap_symmetric;
  doc["min_ratio"] = min_ratio;
  doc["ratios"] = std::move(ratios);
  const auto csv = [&](std::ostream& f) {
    f << "n,ratio\n";
    for (const auto& [n, r] : rep.ratios) f << n << ',' << format_double(r) << '\n';
  };
  const int rc = emit(args.output, doc, csv, out, err);
  if (rc != kExitOk) return rc;
  if (!rep.swap_symmetric) {
    err << "note: weights are not swap-symmetric; the |lambda|^m lower bound does not apply\n";
  } else if (min_ratio < rep.lower_bound) {
    err << "mismatch: a column ratio fell below |lambda|^m\n";
    return kExitMismatch;
  }
  return kExitOk;
}

// ---- correlate ----------------------------------------------------------------

struct CorrelateArgs {
  MapArgs map;
  OutputArgs output;
  int m_max = 20;
  int radius = 40;
  int order = 60;
  double drop_tol = 1e-16;
  double a = 0.1;
  std::vector<int> window;
  std::uint64_t seed = 1;
};

int cmd_correlate(const CorrelateArgs& args, std::ostream& out, std::ostream& err) {
  Problems problems;
  const auto spec = build_map(args.map, problems);
  const auto cfg = problems.attempt([&] { return SpaceConfig::deg1(args.a); });
  if (args.m_max < 0) problems.add("--mmax must be >= 0");
  if (args.radius < 0) problems.add("--radius must be >= 0");
  if (args.order < 0) problems.add("--order must be >= 0");
  if (!(args.drop_tol >= 0.0)) problems.add("--drop-tol must be >= 0");
  if (!args.window.empty() && (args.window.size() != 2 || args.window[0] > args.window[1])) {
    problems.add("--window takes two increasing integers");
  }
  if (!problems.empty()) {
    err << "error: " << problems.message() << "\n";
    return kExitValidation;
  }
  CorrelationOptions opts;
  opts.max_radius = args.radius;
  opts.order = args.order;
  opts.drop_tol = args.drop_tol;
  opts.cfg = *cfg;
  if (!args.window.empty()) opts.window = std::pair{args.window[0], args.window[1]};
  std::mt19937_64 rng(args.seed);
  const LaurentPolynomial f = generic_observable(rng);
  const LaurentPolynomial g = generic_observable(rng);
  const CorrelationRun run_result = correlate(*spec, f, g, args.m_max, opts);

  Json doc = header("correlate");
  doc["map"] = map_json(*spec);
  doc["space"] = space_json(*cfg);
  doc["truncation"] = {{"max_radius", args.radius}, {"order", args.order}, {"drop_tol", args.drop_tol}};
  doc["seed"] = args.seed;
  Json samples = Json::array();
  for (const auto& s : run_result.samples) {
    samples.push_back({{"m", s.m},
                       {"re", s.value.real()},
                       {"im", s.value.imag()},
                       {"abs", std::abs(s.value)},
                       {"tail_weight", s.tail_weight},
                       {"starved", s.starved}});
  }
  doc["samples"] = std::move(samples);
  if (run_result.fit) {
    const DecayFit& fit = *run_result.fit;
    doc["fit"] = {{"window", {fit.window_begin, fit.window_end}},
                  {"points_used", fit.points_used},
                  {"fitted_log_slope", fit.fitted_log_slope},
                  {"fitted_rate", fit.fitted_rate},
                  {"residual", fit.residual}};
  } else {
    doc["fit"] = {{"error", run_result.fit_error}};
  }
  const auto csv = [&](std::ostream& f) {
    f << "m,re,im,abs,tail_weight\n";
    for (const auto& s : run_result.samples) {
      f << s.m << ',' << format_double(s.value.real()) << ',' << format_double(s.value.imag()) << ','
        << format_double(std::abs(s.value)) << ',' << format_double(s.tail_weight) << '\n';
    }
  };
  return emit(args.output, doc, csv, out, err);
}

// ---- coeffs -------------------------------------------------------------------

struct CoeffsArgs {
  std::string lambda;
  long long power = 1;
  int order = 50;
  OutputArgs output{"", "", "csv"};
};

int cmd_coeffs(const CoeffsArgs& args, std::ostream& out, std::ostream& err) {
  Problems problems;
  const auto lambda = problems.attempt([&] { return BlaschkeParam(parse_complex(args.lambda)); });
  if (args.power < 0) problems.add("--power must be >= 0");
  if (args.order < 0) problems.add("--order must be >= 0");
  if (!problems.empty()) {
    err << "error: " << problems.message() << "\n";
    return kExitValidation;
  }
  const BlaschkeCoefficients c = blaschke_coefficients(*lambda, args.power, args.order);
  Json doc = header("coeffs");
  doc["lambda"] = complex_json(lambda->value());
  doc["power"] = args.power;
  doc["order"] = args.order;
  Json rows = Json::array();
  for (std::size_t k = 0; k < c.coeffs.size(); ++k) {
    rows.push_back({{"k", k}, {"re", c.coeffs[k].real()}, {"im", c.coeffs[k].imag()}});
  }
  doc["coefficients"] = std::move(rows);
  const auto csv = [&](std::ostream& f) {
    f << "k,re,im\n";
    for (std::size_t k = 0; k < c.coeffs.size(); ++k) {
      f << k << ',' << format_double(c.coeffs[k].real()) << ',' << format_double(c.coeffs[k].imag()) << '\n';
    }
  };
  return emit(args.output, doc, csv, out, err);
}

// ---- lattice ------------------------------------------------------------------

struct LatticeArgs {
  SpaceArgs space;
  OutputArgs output;
  int k_min = 0;
  int k_max = 3;
};

int cmd_lattice(const LatticeArgs& args, std::ostream& out, std::ostream& err) {
  Problems problems;
  const auto cfg = build_space(args.space, problems);
  if (args.k_min > args.k_max) problems.add("--kmin must not exceed --kmax");
  if (!problems.empty()) {
    err << "error: " << problems.message() << "\n";
    return kExitValidation;
  }
  Json blocks = Json::array();
  for (int k = args.k_min; k <= args.k_max; ++k) {
    Json idx = Json::array();
    for (const auto& i : block_indices(k).indices) {
      idx.push_back({{"m", i.m}, {"n", i.n}, {"degphi", degphi(i, cfg->phi())}, {"weight", weight(i, *cfg)}});
    }
    blocks.push_back({{"k", k}, {"size", block_size(k)}, {"indices", std::move(idx)}});
  }
  Json doc = header("lattice");
  doc["space"] = space_json(*cfg);
  doc["blocks"] = std::move(blocks);
  const auto csv = [&](std::ostream& f) {
    f << "k,m,n,degphi,weight\n";
    for (int k = args.k_min; k <= args.k_max; ++k) {
      for (const auto& i : block_indices(k).indices) {
        f << k << ',' << i.m << ',' << i.n << ',' << format_double(degphi(i, cfg->phi())) << ','
          << format_double(weight(i, *cfg)) << '\n';
      }
    }
  };
  return emit(args.output, doc, csv, out, err);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ruelle-Pollicott resonances of Blaschke-product torus maps", "resonance"};
  app.require_subcommand(1);

  SpectrumArgs spectrum_args;
  auto* sp = app.add_subcommand("spectrum", "block spectra, closed forms and their match");
  add_map_options(sp, spectrum_args.map);
  add_space_options(sp, spectrum_args.space);
  add_output_options(sp, spectrum_args.output);
  sp->add_option("--kmin", spectrum_args.k_min, "lowest block level (default -kmax)");
  sp->add_option("--kmax", spectrum_args.k_max, "highest block level");
  sp->add_option("--floor", spectrum_args.floor, "omit eigenvalues below this modulus");
  sp->add_option("--tol", spectrum_args.tol, "matching tolerance");
  sp->add_option("--threads", spectrum_args.threads, "worker threads (default RESONANCE_THREADS)");
  sp->add_option("--svg", spectrum_args.svg_path, "write a scatter plot");
  sp->add_option("--dump-matrix", spectrum_args.dump_path, "write the windowed matrix (binary, or CSV for .csv)");

  HsArgs hs_args;
  auto* hs = app.add_subcommand("hsnorm", "Hilbert-Schmidt norm estimate");
  add_map_options(hs, hs_args.map);
  add_space_options(hs, hs_args.space);
  add_output_options(hs, hs_args.output);
  hs->add_option("--radius", hs_args.radius, "columns with |m|, |n| <= radius");
  hs->add_option("--order", hs_args.order, "expansion terms per column (default 8 radius + 64)");

  CompactnessArgs compact_args;
  auto* cp = app.add_subcommand("compactness", "column ratios of C_T along e_{m,n}");
  cp->add_option("--lambda", compact_args.lambda, "Blaschke parameter")->required();
  add_space_options(cp, compact_args.space);
  add_output_options(cp, compact_args.output);
  cp->add_option("--m", compact_args.m, "fixed first index");
  cp->add_option("--nmin", compact_args.n_min, "first n");
  cp->add_option("--nmax", compact_args.n_max, "last n");
  cp->add_option("--order", compact_args.order, "expansion terms per column");

  CorrelateArgs corr_args;
  auto* cr = app.add_subcommand("correlate", "correlation decay of seeded generic observables");
  add_map_options(cr, corr_args.map);
  add_output_options(cr, corr_args.output);
  cr->add_option("--mmax", corr_args.m_max, "iterations");
  cr->add_option("--radius", corr_args.radius, "drop indices with |m| + |n| above this");
  cr->add_option("--order", corr_args.order, "expansion terms per column");
  cr->add_option("--drop-tol", corr_args.drop_tol, "drop entries with smaller weighted magnitude");
  cr->add_option("--a", corr_args.a, "deg1 weight exponent used for drops and tails");
  cr->add_option("--window", corr_args.window, "fit window: two integers")->expected(2);
  cr->add_option("--seed", corr_args.seed, "observable seed");

  CoeffsArgs coeff_args;
  auto* co = app.add_subcommand("coeffs", "Taylor coefficients of b(z)^p");
  co->add_option("--lambda", coeff_args.lambda, "Blaschke parameter")->required();
  co->add_option("--power", coeff_args.power, "p >= 0");
  co->add_option("--order", coeff_args.order, "last coefficient index");
  add_output_options(co, coeff_args.output);

  LatticeArgs lattice_args;
  auto* la = app.add_subcommand("lattice", "block indices and weights");
  add_space_options(la, lattice_args.space);
  add_output_options(la, lattice_args.output);
  la->add_option("--kmin", lattice_args.k_min, "lowest level");
  la->add_option("--kmax", lattice_args.k_max, "highest level");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitValidation;
  }

  try {
    if (sp->parsed()) return cmd_spectrum(spectrum_args, out, err);
    if (hs->parsed()) {
      if (hs->get_option("--weights")->count() == 0) {
        const std::string& k = hs_args.map.kind;
        hs_args.space.weights = (k == "t" || k == "tk" || k == "tt") ? "degphi" : "deg1";
      }
      return cmd_hsnorm(hs_args, out, err);
    }
    if (cp->parsed()) return cmd_compactness(compact_args, out, err);
    if (cr->parsed()) return cmd_correlate(corr_args, out, err);
    if (co->parsed()) return cmd_coeffs(coeff_args, out, err);
    if (la->parsed()) return cmd_lattice(lattice_args, out, err);
  } catch (const EigensolverError& e) {
    err << "error: " << e.what() << "\n";
    return kExitEigensolver;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitValidation;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"resonance"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace resonance::cli
