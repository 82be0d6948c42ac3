#include "cli_core.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "normlab/constants.hpp"
#include "normlab/norms.hpp"
#include "normlab/operators.hpp"
#include "normlab/parallel.hpp"
#include "normlab/version.hpp"
#include "normlab/witness.hpp"

namespace normlab::cli {

namespace {

constexpr double kMinP = 1.05;
constexpr double kMaxP = 50.0;

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

nlohmann::json poly_to_json(const TrigPoly& f) {
  nlohmann::json arr = nlohmann::json::array();
  if (f.is_zero()) return arr;
  for (int k = f.k_min(); k <= f.k_max(); ++k)
    arr.push_back({f.coeff(k).real(), f.coeff(k).imag()});
  return arr;
}

EstimateOptions options_from(const RunConfig& cfg, int threads = 0) {
  EstimateOptions opts;
  opts.restarts = cfg.restarts;
  opts.seed = cfg.seed;
  opts.tol = cfg.tol;
  opts.ladder = true;
  opts.threads = threads;
  return opts;
}

nlohmann::json estimate_to_json(const NormEstimate& est) {
  nlohmann::json j;
  j["value"] = est.value;
  j["upper_bound"] = est.upper_bound;
  j["bound_source"] = est.bound_source;
  j["converged"] = est.converged;
  j["iterations"] = est.iterations;
  j["restarts_used"] = est.restarts_used;
  return j;
}

nlohmann::json make_estimate_report(const RunConfig& cfg) {
  const OperatorBinder binder = parse_operator(cfg.operator_spec);
  const double p = cfg.ps.at(0);
  const int degree = cfg.degrees.at(0);
  const OperatorSpec op = binder.make(degree, p);
  const NormEstimate est = estimate_norm(op, PNorm(p), options_from(cfg));

  nlohmann::json j;
  j["command"] = "estimate";
  j["operator"] = binder.canonical;
  j["p"] = p;
  j["degree"] = degree;
  j["restarts"] = cfg.restarts;
  j["seed"] = cfg.seed;
  j["tol"] = cfg.tol;
  j["value"] = est.value;
  j["upper_bound"] = est.upper_bound;
  j["bound_source"] = est.bound_source;
  j["maximizer"] = poly_to_json(est.maximizer);
  j["maximizer_k_min"] = est.maximizer.is_zero() ? 0 : est.maximizer.k_min();
  j["converged"] = est.converged;
  j["iterations"] = est.iterations;
  j["library_version"] = library_version;
  j["consistency_ok"] = consistency_ok(est);
  return j;
}

nlohmann::json make_constants_report(const RunConfig& cfg) {
  nlohmann::json rows = nlohmann::json::array();
  for (double p : cfg.ps) {
    const ConstantsRow row = reference_constants(p);
    rows.push_back({{"p", row.p},
                    {"p_conjugate", row.p_conjugate},
                    {"riesz", row.riesz},
                    {"two_power", row.two_power},
                    {"c_p", row.c_p}});
  }
  nlohmann::json j;
  j["command"] = "constants";
  j["p"] = cfg.ps;
  j["rows"] = rows;
  j["library_version"] = library_version;
  return j;
}

nlohmann::json make_sweep_report(const RunConfig& cfg) {
  const OperatorBinder binder = parse_operator(cfg.operator_spec);
  struct Cell {
    double p;
    int degree;
  };
  std::vector<Cell> cells;
  for (double p : cfg.ps)
    for (int d : cfg.degrees) cells.push_back({p, d});
  // rows are emitted sorted by (p, degree) no matter the input order
  std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
    return a.p != b.p ? a.p < b.p : a.degree < b.degree;
  });
  std::vector<nlohmann::json> rows(cells.size());
  // independent jobs on a bounded pool; rows land in (p, degree) order
  parallel_for_index(static_cast<int>(cells.size()), 0, [&](int i) {
    const Cell& cell = cells[static_cast<std::size_t>(i)];
    const OperatorSpec op = binder.make(cell.degree, cell.p);
    const NormEstimate est =
        estimate_norm(op, PNorm(cell.p), options_from(cfg, 1));
    rows[static_cast<std::size_t>(i)] = {{"p", cell.p},
                                         {"degree", cell.degree},
                                         {"lower_bound", est.value},
                                         {"upper_bound", est.upper_bound},
                                         {"bound_source", est.bound_source},
                                         {"consistency_ok", consistency_ok(est)}};
  });
  nlohmann::json j;
  j["command"] = "sweep";
  j["operator"] = binder.canonical;
  j["restarts"] = cfg.restarts;
  j["seed"] = cfg.seed;
  j["tol"] = cfg.tol;
  j["rows"] = rows;
  j["library_version"] = library_version;
  return j;
}

nlohmann::json make_fejer_report(const RunConfig& cfg) {
  nlohmann::json rows = nlohmann::json::array();
  const int degree = cfg.degrees.at(0);
  for (int n : cfg.fejer_ns) {
    const std::size_t grid_size =
        std::max<std::size_t>(256, std::bit_ceil(4u * static_cast<unsigned>(n) + 4u));
    const GridConfig g{grid_size, 1.0};
    const std::vector<double> kernel = fejer_kernel(n, g);
    double kmin = kernel[0];
    double mass = 0.0;
    for (double v : kernel) {
      kmin = std::min(kmin, v);
      mass += v;
    }
    mass *= 2.0 * std::numbers::pi / static_cast<double>(g.size);
    for (double p : cfg.ps) {
      const OperatorSpec op = OperatorSpec::id_minus_fejer(n, degree);
      const NormEstimate est = estimate_norm(op, PNorm(p), options_from(cfg));
      rows.push_back({{"n", n},
                      {"p", p},
                      {"degree", degree},
                      {"lower_bound", est.value},
                      {"upper_bound", est.upper_bound},
                      {"bound_source", est.bound_source},
                      {"kernel_min", kmin},
                      {"kernel_mass_error", std::abs(mass - 1.0)}});
    }
  }
  nlohmann::json j;
  j["command"] = "fejer-table";
  j["degree"] = degree;
  j["restarts"] = cfg.restarts;
  j["seed"] = cfg.seed;
  j["tol"] = cfg.tol;
  j["rows"] = rows;
  j["library_version"] = library_version;
  return j;
}

nlohmann::json certificate_to_json(const CertificateReport& c) {
  return {{"ok", c.ok},
          {"failing_index", c.failing_index},
          {"dual_norm", c.dual_norm},
          {"pairing", c.pairing},
          {"off_support_mass", c.off_support_mass},
          {"max_periodicity_defect", c.max_periodicity_defect},
          {"candidate_pairings", c.candidate_pairings}};
}

nlohmann::json make_witness_report(const RunConfig& cfg) {
  const double p = cfg.ps.at(0);
  const int degree = cfg.degrees.at(0);
  std::vector<TrigPoly> candidates;
  if (!cfg.candidates_path.empty())
    candidates = load_candidates(cfg.candidates_path);

  const OperatorSpec op = OperatorSpec::toeplitz(Symbol::e(-1), degree);
  const NormEstimate est = estimate_norm(op, PNorm(p), options_from(cfg));
  const WitnessReport rep = build_witness(PNorm(p), cfg.epsilon, candidates, est);

  nlohmann::json j;
  j["command"] = "witness";
  j["operator"] = "toeplitz:e-1";
  j["p"] = p;
  j["degree"] = degree;
  j["restarts"] = cfg.restarts;
  j["seed"] = cfg.seed;
  j["tol"] = cfg.tol;
  j["epsilon"] = cfg.epsilon;
  j["estimate"] = estimate_to_json(est);
  j["N"] = rep.N;
  j["floor"] = rep.floor;
  j["weak_floor"] = rep.weak_floor;
  j["distances"] = rep.distances;
  j["witness_norm"] = rep.witness_norm;
  j["image_norm"] = rep.image_norm;
  j["witness"] = poly_to_json(rep.witness);
  j["witness_k_min"] = rep.witness.is_zero() ? 0 : rep.witness.k_min();
  j["certificate"] = certificate_to_json(rep.certificate);
  j["certificate_ok"] = rep.certificate_ok;
  j["candidates_file"] = cfg.candidates_path;
  j["library_version"] = library_version;
  return j;
}

std::string to_csv(const RunConfig& cfg, const nlohmann::json& j) {
  std::ostringstream os;
  if (cfg.command == RunConfig::Command::Constants) {
    os << "p,p_conjugate,riesz,two_power,c_p\n";
    for (const auto& r : j.at("rows"))
      os << fmt_double(r.at("p").get<double>()) << ','
         << fmt_double(r.at("p_conjugate").get<double>()) << ','
         << fmt_double(r.at("riesz").get<double>()) << ','
         << fmt_double(r.at("two_power").get<double>()) << ','
         << fmt_double(r.at("c_p").get<double>()) << '\n';
    return os.str();
  }
  if (cfg.command == RunConfig::Command::FejerTable) {
    os << "n,p,degree,lower_bound,upper_bound,bound_source,kernel_min,kernel_mass_error\n";
    for (const auto& r : j.at("rows"))
      os << r.at("n").get<int>() << ',' << fmt_double(r.at("p").get<double>())
         << ',' << r.at("degree").get<int>() << ','
         << fmt_double(r.at("lower_bound").get<double>()) << ','
         << fmt_double(r.at("upper_bound").get<double>()) << ','
         << r.at("bound_source").get<std::string>() << ','
         << fmt_double(r.at("kernel_min").get<double>()) << ','
         << fmt_double(r.at("kernel_mass_error").get<double>()) << '\n';
    return os.str();
  }
  // estimate (single row) and sweep share the row schema
  os << "p,degree,lower_bound,upper_bound,bound_source\n";
  const auto emit_row = [&](double p, int degree, double lower, double upper,
                            const std::string& source) {
    os << fmt_double(p) << ',' << degree << ',' << fmt_double(lower) << ','
       << fmt_double(upper) << ',' << source << '\n';
  };
  if (cfg.command == RunConfig::Command::Estimate) {
    emit_row(j.at("p").get<double>(), j.at("degree").get<int>(),
             j.at("value").get<double>(), j.at("upper_bound").get<double>(),
             j.at("bound_source").get<std::string>());
  } else {
    for (const auto& r : j.at("rows"))
      emit_row(r.at("p").get<double>(), r.at("degree").get<int>(),
               r.at("lower_bound").get<double>(),
               r.at("upper_bound").get<double>(),
               r.at("bound_source").get<std::string>());
  }
  return os.str();
}

bool gate_violated(const RunConfig& cfg, const nlohmann::json& j) {
  if (cfg.command == RunConfig::Command::Estimate)
    return !j.at("consistency_ok").get<bool>();
  if (cfg.command == RunConfig::Command::Sweep) {
    for (const auto& r : j.at("rows"))
      if (!r.at("consistency_ok").get<bool>()) return true;
    return false;
  }
  if (cfg.command == RunConfig::Command::Witness)
    return j.at("estimate").at("value").get<double>() >
           j.at("estimate").at("upper_bound").get<double>() + 1e-6;
  return false;
}

}  // namespace

OperatorSpec OperatorBinder::make(int degree, double p) const {
  switch (kind) {
    case Kind::Identity:
      return OperatorSpec::identity(degree);
    case Kind::Riesz:
      return OperatorSpec::riesz_projection(degree);
    case Kind::Fejer:
      return OperatorSpec::fejer(arg, degree);
    case Kind::IdMinusFejer:
      return OperatorSpec::id_minus_fejer(arg, degree);
    case Kind::ToeplitzE:
      return OperatorSpec::toeplitz(Symbol::e(arg), degree);
    case Kind::ToeplitzGk:
      return OperatorSpec::toeplitz(Symbol::gk(p, gk_sign), degree);
    case Kind::ToeplitzCph: {
      std::vector<cd> c(cph_h.size());
      for (std::size_t i = 0; i < cph_h.size(); ++i) c[i] = cph_h[i];
      return OperatorSpec::toeplitz(
          Symbol::cph(arg, TrigPoly::from_range(0, std::move(c))), degree);
    }
  }
  throw ArgumentError("OperatorBinder: unreachable");
}

OperatorBinder parse_operator(const std::string& spec) {
  OperatorBinder b;
  b.canonical = spec;
  const auto parse_int = [&](const std::string& s) {
    std::size_t pos = 0;
    const int v = std::stoi(s, &pos);
    if (pos != s.size()) throw ArgumentError("operator spec: bad integer in '" + spec + "'");
    return v;
  };
  try {
    if (spec == "identity") {
      b.kind = OperatorBinder::Kind::Identity;
      return b;
    }
    if (spec == "riesz") {
      b.kind = OperatorBinder::Kind::Riesz;
      return b;
    }
    if (spec.rfind("fejer:", 0) == 0) {
      b.kind = OperatorBinder::Kind::Fejer;
      b.arg = parse_int(spec.substr(6));
      if (b.arg < 0) throw ArgumentError("fejer: n must be nonnegative");
      return b;
    }
    if (spec.rfind("id-minus-fejer:", 0) == 0) {
      b.kind = OperatorBinder::Kind::IdMinusFejer;
      b.arg = parse_int(spec.substr(15));
      if (b.arg < 0) throw ArgumentError("id-minus-fejer: n must be nonnegative");
      return b;
    }
    if (spec.rfind("toeplitz:e", 0) == 0 && spec.size() > 10 &&
        (std::isdigit(static_cast<unsigned char>(spec[10])) || spec[10] == '-' ||
         spec[10] == '+')) {
      b.kind = OperatorBinder::Kind::ToeplitzE;
      b.arg = parse_int(spec.substr(10));
      return b;
    }
    if (spec == "toeplitz:gk:+" || spec == "toeplitz:gk:-") {
      b.kind = OperatorBinder::Kind::ToeplitzGk;
      b.gk_sign = spec.back() == '+' ? +1 : -1;
      return b;
    }
    if (spec.rfind("toeplitz:cph:", 0) == 0) {
      b.kind = OperatorBinder::Kind::ToeplitzCph;
      const std::string rest = spec.substr(13);
      const std::size_t colon = rest.find(':');
      if (colon == std::string::npos)
        throw ArgumentError("toeplitz:cph needs n and coefficients");
      b.arg = parse_int(rest.substr(0, colon));
      if (b.arg < 0) throw ArgumentError("toeplitz:cph: n must be nonnegative");
      std::stringstream ss(rest.substr(colon + 1));
      std::string item;
      while (std::getline(ss, item, ',')) b.cph_h.push_back(std::stod(item));
      if (b.cph_h.empty()) throw ArgumentError("toeplitz:cph: empty coefficient list");
      return b;
    }
  } catch (const std::invalid_argument&) {
    throw ArgumentError("unknown operator spec '" + spec + "'");
  } catch (const std::out_of_range&) {
    throw ArgumentError("unknown operator spec '" + spec + "'");
  }
  throw ArgumentError("unknown operator spec '" + spec + "'");
}

std::vector<TrigPoly> load_candidates(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open candidates file '" + path + "'");
  nlohmann::json j;
  in >> j;
  if (!j.is_array()) throw Error("candidates file: expected a JSON array");
  std::vector<TrigPoly> out;
  for (const auto& poly : j) {
    std::vector<cd> coeffs;
    for (const auto& pair : poly) {
      if (!pair.is_array() || pair.size() != 2)
        throw Error("candidates file: coefficients must be [re, im] pairs");
      coeffs.emplace_back(pair.at(0).get<double>(), pair.at(1).get<double>());
    }
    out.push_back(TrigPoly::from_range(0, std::move(coeffs)));
  }
  return out;
}

int parse_config(int argc, const char* const* argv, RunConfig& cfg,
                 std::ostream& err) {
  CLI::App app{"norm-lab: operator norm experiments on Hardy spaces"};
  app.require_subcommand(1);

  std::string p_list = "4";
  std::string degree_list;
  std::string n_list;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--operator", cfg.operator_spec, "operator spec string");
    sub->add_option("--p", p_list, "exponent or comma list");
    sub->add_option("--degree", degree_list, "domain degree or comma list (sweep)");
    sub->add_option("--restarts", cfg.restarts, "optimizer restarts");
    sub->add_option("--seed", cfg.seed, "RNG seed");
    sub->add_option("--tol", cfg.tol, "relative improvement stopping tolerance");
    sub->add_option("--format", cfg.format, "json or csv");
    sub->add_option("--out", cfg.out_path, "output path (default stdout)");
  };

  CLI::App* estimate = app.add_subcommand("estimate", "lower-bound a norm");
  CLI::App* constants = app.add_subcommand("constants", "reference constants table");
  CLI::App* witness = app.add_subcommand("witness", "covering-radius witness");
  CLI::App* sweep = app.add_subcommand("sweep", "(p, degree) sweep");
  CLI::App* fejer = app.add_subcommand("fejer-table", "Fejer complement table");
  for (CLI::App* sub : {estimate, constants, witness, sweep, fejer}) add_common(sub);
  witness->add_option("--epsilon", cfg.epsilon, "covering slack epsilon");
  witness->add_option("--candidates", cfg.candidates_path, "candidate polynomials file");
  fejer->add_option("--n", n_list, "comma list of Fejer orders");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // --help
      std::cout << app.help();
      return -1;
    }
    err << "usage error: " << e.what() << "\n";
    return 1;
  }

  if (estimate->parsed()) cfg.command = RunConfig::Command::Estimate;
  if (constants->parsed()) cfg.command = RunConfig::Command::Constants;
  if (witness->parsed()) cfg.command = RunConfig::Command::Witness;
  if (sweep->parsed()) cfg.command = RunConfig::Command::Sweep;
  if (fejer->parsed()) cfg.command = RunConfig::Command::FejerTable;

  try {
    const auto split_doubles = [](const std::string& s) {
      std::vector<double> out;
      std::stringstream ss(s);
      std::string item;
      while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
      return out;
    };
    const auto split_ints = [](const std::string& s) {
      std::vector<int> out;
      std::stringstream ss(s);
      std::string item;
      while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
      return out;
    };
    cfg.ps = split_doubles(p_list);
    if (!degree_list.empty()) cfg.degrees = split_ints(degree_list);
    if (!n_list.empty()) cfg.fejer_ns = split_ints(n_list);

    if (cfg.ps.empty()) throw ArgumentError("--p: empty list");
    for (double p : cfg.ps)
      if (p < kMinP || p > kMaxP)
        throw ArgumentError("--p: exponents must lie in [1.05, 50]");
    if (cfg.degrees.empty()) throw ArgumentError("--degree: empty list");
    for (int d : cfg.degrees)
      if (d < 1) throw ArgumentError("--degree: must be at least 1");
    if (cfg.restarts < 1) throw ArgumentError("--restarts: must be at least 1");
    if (!(cfg.tol > 0.0)) throw ArgumentError("--tol: must be positive");
    if (cfg.format != "json" && cfg.format != "csv")
      throw ArgumentError("--format: json or csv");
    for (int n : cfg.fejer_ns)
      if (n < 0) throw ArgumentError("--n: orders must be nonnegative");

    const bool single_cell = cfg.command == RunConfig::Command::Estimate ||
                             cfg.command == RunConfig::Command::Witness ||
                             cfg.command == RunConfig::Command::FejerTable;
    if (single_cell && cfg.degrees.size() != 1)
      throw ArgumentError("--degree: this command takes a single degree");
    if ((cfg.command == RunConfig::Command::Estimate ||
         cfg.command == RunConfig::Command::Witness) &&
        cfg.ps.size() != 1)
      throw ArgumentError("--p: this command takes a single exponent");
    if (cfg.command == RunConfig::Command::Witness && cfg.format != "json")
      throw ArgumentError("witness reports support --format json only");

    // reject unknown operator specs before any computation
    if (cfg.command == RunConfig::Command::Estimate ||
        cfg.command == RunConfig::Command::Sweep)
      parse_operator(cfg.operator_spec);
  } catch (const std::exception& e) {
    err << "usage error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

nlohmann::json make_report(const RunConfig& cfg) {
  switch (cfg.command) {
    case RunConfig::Command::Estimate:
      return make_estimate_report(cfg);
    case RunConfig::Command::Constants:
      return make_constants_report(cfg);
    case RunConfig::Command::Witness:
      return make_witness_report(cfg);
    case RunConfig::Command::Sweep:
      return make_sweep_report(cfg);
    case RunConfig::Command::FejerTable:
      return make_fejer_report(cfg);
  }
  throw ArgumentError("make_report: unreachable");
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  nlohmann::json report;
  try {
    report = make_report(cfg);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  report["timestamp"] = utc_timestamp();

  std::string payload;
  if (cfg.format == "csv")
    payload = to_csv(cfg, report);
  else
    payload = report.dump(2) + "\n";

  if (cfg.out_path.empty()) {
    out << payload;
  } else {
    std::ofstream f(cfg.out_path);
    if (!f) {
      err << "error: cannot open output path '" << cfg.out_path << "'\n";
      return 1;
    }
    f << payload;
    if (!f.good()) {
      err << "error: failed writing '" << cfg.out_path << "'\n";
      return 1;
    }
  }

  if (gate_violated(cfg, report)) {
    err << "consistency gate violated: a lower bound exceeds its registered "
           "upper bound by more than 1e-6\n";
    return 2;
  }
  return 0;
}

}
