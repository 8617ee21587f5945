#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "swanson/mathieu.hpp"
#include "swanson/model_space.hpp"
#include "swanson/response_types.hpp"

namespace swanson::cli {

// Bad command line or config; maps to exit code 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Mode { Exact, Linear, Both, Oracle };
const char* to_string(Mode m);
Mode parse_mode(const std::string& s);
DriveVariant parse_variant(const std::string& s);

// Inclusive grid of `steps` points (steps == 1 gives min only).
struct Grid {
  double min = 0.0;
  double max = 0.0;
  std::size_t steps = 1;
  std::vector<double> points() const;
};

struct RunConfig {
  std::string command;
  SwansonParams model;
  DriveParams drive;
  std::vector<double> V_values;  // fig2/fig3 sweep; empty means drive.V
  double beta = 1.0;
  std::optional<double> abs_omega;  // Region II commands; otherwise from the model
  Grid t;
  Grid T;
  Mode mode = Mode::Both;
  DriveVariant drive_variant = DriveVariant::Printed;
  std::string output;
  std::size_t dim = 80;
  double dt = 0.01;
  std::size_t threads = 0;  // 0: hardware concurrency
};

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> c{"fig1",     "fig2",     "fig3",     "fig4",
                                          "fig5",     "example1", "example2", "example3",
                                          "thermo",   "region",   "validate", "version"};
  return c;
}

// Defaults for a command (figure captions for fig1..fig5).
RunConfig preset(const std::string& command);

// Applies one `key = value` setting; throws UsageError on unknown keys or bad values.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);
std::vector<std::string> setting_keys();

// Grid and size guards.
void check(const RunConfig& cfg);

// Worker count after SWANSON_DGF_THREADS and cfg.threads.
std::size_t worker_count(const RunConfig& cfg);

// Exit status: 0 ok, 2 numeric-domain error, 3 validation failure. Usage errors throw.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace swanson::cli
