#include <charconv>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "swanson/cli.hpp"
#include "swanson/types.hpp"

namespace swanson::cli {

namespace {

double to_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const char* end = v.data() + v.size();
  auto [p, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || p != end || !std::isfinite(out))
    throw UsageError("bad number for " + key + ": '" + v + "'");
  return out;
}

std::size_t to_count(const std::string& key, const std::string& v) {
  std::size_t out = 0;
  const char* end = v.data() + v.size();
  auto [p, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || p != end) throw UsageError("bad integer for " + key + ": '" + v + "'");
  return out;
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= v.size()) {
    const std::size_t comma = v.find(',', start);
    const std::string item = v.substr(start, comma == std::string::npos ? std::string::npos
                                                                        : comma - start);
    out.push_back(to_double(key, item));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

// fig1 regime: m = 1, Omega^2 = 1 with b~0 = 1.
constexpr SwansonParams kRegionOne{0.5, 0.25, -0.75, 1.0};

}  // namespace

const char* to_string(Mode m) {
  switch (m) {
    case Mode::Exact: return "exact";
    case Mode::Linear: return "linear";
    case Mode::Both: return "both";
    case Mode::Oracle: return "oracle";
  }
  return "?";
}

Mode parse_mode(const std::string& s) {
  if (s == "exact") return Mode::Exact;
  if (s == "linear") return Mode::Linear;
  if (s == "both") return Mode::Both;
  if (s == "oracle") return Mode::Oracle;
  throw UsageError("mode must be exact|linear|both|oracle, got '" + s + "'");
}

DriveVariant parse_variant(const std::string& s) {
  if (s == "printed") return DriveVariant::Printed;
  if (s == "rescaled") return DriveVariant::Rescaled;
  throw UsageError("drive_variant must be printed|rescaled, got '" + s + "'");
}

std::vector<double> Grid::points() const {
  std::vector<double> p(steps);
  for (std::size_t k = 0; k < steps; ++k)
    p[k] = steps == 1 ? min : min + (max - min) * double(k) / double(steps - 1);
  return p;
}

RunConfig preset(const std::string& command) {
  RunConfig c;
  c.command = command;
  c.output = command;
  c.model = kRegionOne;
  c.drive = DriveParams{0.26, 1.0, 0.05, 0.0};
  c.beta = 1.0;
  c.t = Grid{0.0, 20.0, 201};
  c.T = Grid{0.2, 5.0, 25};
  if (command == "fig2" || command == "fig3") {
    c.V_values = {0.16, 0.26};
  } else if (command == "example2") {
    // Omega = 0.75, m = 4/3, b~0 = 1
    c.model = SwansonParams{0.75, 0.0, 0.0, 1.0};
    c.drive = DriveParams{0.16, 1.0, 0.05, 0.0};
    c.t = Grid{0.0, 10.0, 101};
  } else if (command == "fig4" || command == "fig5" || command == "example3" ||
             command == "thermo") {
    c.abs_omega = 2.0 * kPi;
    c.drive = DriveParams{kPi, kPi, 0.05, 0.0};
    c.T = Grid{1.1, 10.0, 90};
    c.t = Grid{0.0, 1.0, 51};
    if (command == "fig5") c.T = Grid{1.1, 10.0, 46};
    if (command == "example3") c.beta = 0.3;
  }
  return c;
}

std::vector<std::string> setting_keys() {
  return {"omega", "alpha", "gamma", "b0", "V", "V_values", "W", "epsilon", "t0", "beta", "T",
          "abs_omega", "t_min", "t_max", "t_steps", "T_min", "T_max", "T_steps", "mode",
          "drive_variant", "output", "dim", "dt", "threads"};
}

void apply_setting(RunConfig& c, const std::string& key, const std::string& v) {
  if (key == "omega") { c.model.omega = to_double(key, v); c.abs_omega.reset(); }
  else if (key == "alpha") { c.model.alpha = to_double(key, v); c.abs_omega.reset(); }
  else if (key == "gamma") { c.model.gamma = to_double(key, v); c.abs_omega.reset(); }
  else if (key == "b0") { c.model.b0 = to_double(key, v); c.abs_omega.reset(); }
  else if (key == "V") { c.drive.V = to_double(key, v); c.V_values.clear(); }
  else if (key == "V_values") c.V_values = to_list(key, v);
  else if (key == "W") c.drive.W = to_double(key, v);
  else if (key == "epsilon") c.drive.epsilon = to_double(key, v);
  else if (key == "t0") c.drive.t0 = to_double(key, v);
  else if (key == "beta") c.beta = to_double(key, v);
  else if (key == "T") {
    const double T = to_double(key, v);
    if (!(T > 0.0)) throw UsageError("T must be positive");
    c.beta = 1.0 / T;
  }
  else if (key == "abs_omega") c.abs_omega = to_double(key, v);
  else if (key == "t_min") c.t.min = to_double(key, v);
  else if (key == "t_max") c.t.max = to_double(key, v);
  else if (key == "t_steps") c.t.steps = to_count(key, v);
  else if (key == "T_min") c.T.min = to_double(key, v);
  else if (key == "T_max") c.T.max = to_double(key, v);
  else if (key == "T_steps") c.T.steps = to_count(key, v);
  else if (key == "mode") c.mode = parse_mode(v);
  else if (key == "drive_variant") c.drive_variant = parse_variant(v);
  else if (key == "output") c.output = v;
  else if (key == "dim") c.dim = to_count(key, v);
  else if (key == "dt") c.dt = to_double(key, v);
  else if (key == "threads") c.threads = to_count(key, v);
  else throw UsageError("unknown setting '" + key + "'");
}

void check(const RunConfig& c) {
  if (c.t.steps < 1 || c.T.steps < 1) throw UsageError("grid steps must be >= 1");
  if (c.t.max < c.t.min || c.T.max < c.T.min) throw UsageError("grid max must be >= min");
  if (double(c.t.steps) * double(c.T.steps) > 1e7) throw UsageError("t_steps * T_steps exceeds 1e7");
  if (!(c.beta > 0.0)) throw UsageError("beta must be positive");
  if (c.dim < 2) throw UsageError("dim must be >= 2");
  if (!(c.dt > 0.0)) throw UsageError("dt must be positive");
  if (c.output.empty()) throw UsageError("output must be non-empty");
}

std::size_t worker_count(const RunConfig& c) {
  std::size_t n = c.threads ? c.threads : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SWANSON_DGF_THREADS")) {
    std::size_t cap = 0;
    const std::string s(env);
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), cap);
    if (ec == std::errc() && p == s.data() + s.size() && cap > 0) n = std::min(n, cap);
  }
  return n;
}

}  // namespace swanson::cli
