#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "toda/odeflow.hpp"

namespace toda::cli {

/// Malformed or invariant-violating configuration; what() carries the
/// offending field path. Mapped to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GridSpec {
  Complex center{};
  double half_width = 5.0;
  int samples_per_side = 21;
};

struct Tolerances {
  double continuation = 1e-10;
  double stencil_h = 1e-3;
  double residual_pass = 1e-4;
};

/// One run description, parsed from JSON. Polynomial coefficients are
/// lists of [re, im] pairs by ascending power, one list per P_0..P_n; an
/// empty list is the zero polynomial.
struct RunConfig {
  int n = 1;
  std::vector<ComplexPoly> coefficients;
  GridSpec grid;
  std::vector<double> radii;
  int rings = 256;
  int spokes = 256;
  Tolerances tolerances;
  double stokes_window = 2.0;
  std::optional<double> K;
  std::uint64_t seed = 42;

  OdeSystem ode() const { return {n, coefficients}; }
};

/// Parse and validate; throws ConfigError with a field path on bad input.
RunConfig parse_config(const std::string& text);

/// Read a whole file; throws ConfigError if unreadable.
std::string read_file(const std::string& path);

}  // namespace toda::cli
