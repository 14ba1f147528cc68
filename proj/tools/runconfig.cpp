#include "runconfig.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace toda::cli {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError("config error at " + path + ": " + what);
}

double as_number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

int as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

Complex as_complex_pair(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2)
    fail(path, "expected a [re, im] pair");
  return {as_number(j[0], path + "[0]"), as_number(j[1], path + "[1]")};
}

ComplexPoly as_poly(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected a list of [re, im] pairs");
  std::vector<Complex> coeffs;
  coeffs.reserve(j.size());
  for (size_t i = 0; i < j.size(); ++i)
    coeffs.push_back(as_complex_pair(j[i], path + "[" + std::to_string(i) + "]"));
  return ComplexPoly{std::move(coeffs)};
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail("$", e.what());
  }
  if (!j.is_object()) fail("$", "expected a JSON object");

  RunConfig config;
  if (!j.contains("n")) fail("$.n", "missing");
  config.n = as_int(j["n"], "$.n");
  if (config.n < 1) fail("$.n", "must be >= 1");

  if (!j.contains("coefficients")) fail("$.coefficients", "missing");
  const json& coeffs = j["coefficients"];
  if (!coeffs.is_array()) fail("$.coefficients", "expected a list");
  if (coeffs.size() != static_cast<size_t>(config.n) + 1)
    fail("$.coefficients",
         "needs " + std::to_string(config.n + 1) + " entries, got " +
             std::to_string(coeffs.size()));
  for (size_t k = 0; k < coeffs.size(); ++k)
    config.coefficients.push_back(
        as_poly(coeffs[k], "$.coefficients[" + std::to_string(k) + "]"));

  if (j.contains("grid")) {
    const json& g = j["grid"];
    if (!g.is_object()) fail("$.grid", "expected an object");
    if (g.contains("center"))
      config.grid.center = as_complex_pair(g["center"], "$.grid.center");
    if (g.contains("half_width")) {
      config.grid.half_width = as_number(g["half_width"], "$.grid.half_width");
      if (config.grid.half_width < 0.0) fail("$.grid.half_width", "must be >= 0");
    }
    if (g.contains("samples_per_side")) {
      config.grid.samples_per_side =
          as_int(g["samples_per_side"], "$.grid.samples_per_side");
      if (config.grid.samples_per_side < 1)
        fail("$.grid.samples_per_side", "must be >= 1");
    }
  }

  if (j.contains("radii")) {
    const json& r = j["radii"];
    if (!r.is_array() || r.empty()) fail("$.radii", "expected a nonempty list");
    for (size_t i = 0; i < r.size(); ++i) {
      const double v = as_number(r[i], "$.radii[" + std::to_string(i) + "]");
      if (v <= 0.0) fail("$.radii", "entries must be positive");
      if (!config.radii.empty() && v <= config.radii.back())
        fail("$.radii", "must be strictly increasing");
      config.radii.push_back(v);
    }
  } else {
    for (int i = 0; i < 10; ++i) config.radii.push_back(2.0 * (i + 1));
  }

  if (j.contains("rings")) {
    config.rings = as_int(j["rings"], "$.rings");
    if (config.rings < 8) fail("$.rings", "must be >= 8");
  }
  if (j.contains("spokes")) {
    config.spokes = as_int(j["spokes"], "$.spokes");
    if (config.spokes < 8) fail("$.spokes", "must be >= 8");
  }

  if (j.contains("tolerances")) {
    const json& t = j["tolerances"];
    if (!t.is_object()) fail("$.tolerances", "expected an object");
    if (t.contains("continuation")) {
      config.tolerances.continuation =
          as_number(t["continuation"], "$.tolerances.continuation");
      if (!(config.tolerances.continuation > 0.0) ||
          config.tolerances.continuation > 1e-3)
        fail("$.tolerances.continuation", "must lie in (0, 1e-3]");
    }
    if (t.contains("stencil_h")) {
      config.tolerances.stencil_h =
          as_number(t["stencil_h"], "$.tolerances.stencil_h");
      if (!(config.tolerances.stencil_h > 0.0))
        fail("$.tolerances.stencil_h", "must be positive");
    }
    if (t.contains("residual_pass")) {
      config.tolerances.residual_pass =
          as_number(t["residual_pass"], "$.tolerances.residual_pass");
      if (!(config.tolerances.residual_pass > 0.0))
        fail("$.tolerances.residual_pass", "must be positive");
    }
  }

  if (j.contains("stokes_window")) {
    config.stokes_window = as_number(j["stokes_window"], "$.stokes_window");
    if (!(config.stokes_window > 0.0)) fail("$.stokes_window", "must be positive");
  }

  if (j.contains("K")) {
    const double k = as_number(j["K"], "$.K");
    if (!(k > 0.0)) fail("$.K", "must be positive");
    config.K = k;
  }

  if (j.contains("seed")) {
    if (!j["seed"].is_number_integer()) fail("$.seed", "expected an integer");
    config.seed = j["seed"].get<std::uint64_t>();
  }

  return config;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config error at " + path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace toda::cli
