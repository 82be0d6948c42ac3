#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "normlab/estimate.hpp"

namespace normlab::cli {

struct RunConfig {
  enum class Command { Estimate, Constants, Witness, Sweep, FejerTable };
  Command command = Command::Estimate;
  std::string operator_spec = "toeplitz:e-1";
  std::vector<double> ps{4.0};
  std::vector<int> degrees{32};
  std::vector<int> fejer_ns{0, 1, 2, 4};
  int restarts = 16;
  std::uint64_t seed = 42;
  double tol = 1e-10;
  double epsilon = 0.01;
  std::string candidates_path;
  std::string format = "json";
  std::string out_path;  // empty -> stdout
};

/// Binds an operator string like "toeplitz:e-1" or "toeplitz:gk:+" to a
/// factory; gk symbols take the run's p at bind time.
struct OperatorBinder {
  std::string canonical;
  OperatorSpec make(int degree, double p) const;

  // parsed form
  enum class Kind { Identity, Riesz, Fejer, IdMinusFejer, ToeplitzE, ToeplitzGk, ToeplitzCph };
  Kind kind = Kind::ToeplitzE;
  int arg = -1;                  // fejer n / shift index / cph n
  int gk_sign = +1;
  std::vector<double> cph_h;     // real coefficients of h, indices 0..
};

/// Throws ArgumentError for unknown specs.
OperatorBinder parse_operator(const std::string& spec);

/// argv -> config; returns 0 and fills `cfg` on success, nonzero exit status
/// after printing a usage message otherwise.
int parse_config(int argc, const char* const* argv, RunConfig& cfg,
                 std::ostream& err);

/// Report payloads without the timestamp field (added by run), so identical
/// configs produce byte-identical payloads.
nlohmann::json make_report(const RunConfig& cfg);

/// Executes the configured command, writing the report to cfg.out_path or
/// `out`. Returns 0 on success, 1 on usage/IO errors, 2 when a computed
/// lower bound exceeds its registered upper bound by more than 1e-6.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Loads the witness candidate file: a JSON array of polynomials, each an
/// array of [re, im] coefficient pairs for indices 0..n_j.
std::vector<TrigPoly> load_candidates(const std::string& path);

}
