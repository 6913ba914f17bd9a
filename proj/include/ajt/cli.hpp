#pragma once

// Command-line front end. Each command writes to the given streams and returns the
// process exit code: 0 verified, 1 refuted, 2 invalid input, 3 resource bound.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "ajt/conjecture.hpp"

namespace ajt {

struct RunConfig {
  CableParams params;
  std::int64_t lo = 1;
  std::int64_t hi = 8;
  std::optional<VerifyMode> mode;  // auto when unset
  std::vector<mpq_class> t0s{mpq_class(2), mpq_class(3, 2), mpq_class(5, 3)};
  std::int64_t K0 = 8;
  std::int64_t K_max = 1024;
  std::int64_t extra = 5;
  unsigned parallelism = 1;
  bool json = false;
  std::string out_path;

  /// Throws InvalidParams when an invariant of the configuration fails.
  void validate() const;
};

struct FitCommand {
  std::string op = "1";
  std::string seq;       // knot notation
  std::string seq_expr;  // exponential-polynomial expression
  FitOptions options;
};

/// "1..8" -> (1, 8)
std::pair<std::int64_t, std::int64_t> parse_range(std::string_view text);
/// "2,3/2,5/3"
std::vector<mpq_class> parse_t0_list(std::string_view text);
/// "symbolic", "specialized" or "auto" (nullopt)
std::optional<VerifyMode> parse_mode(std::string_view text);

int cmd_jones(std::string_view knot, std::int64_t n, std::ostream& out);
int cmd_apoly(const CableParams& params, std::ostream& out);
int cmd_fit(const FitCommand& cmd, std::ostream& out);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Full argument parsing and dispatch; library errors become exit 2 with a diagnostic.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ajt
