#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

namespace balloons::cli {

/// Every parameter any subcommand reads. A run is fully determined by the
/// command name, this record and nothing else.
struct RunConfig {
  std::string command;

  // sampling and matching
  std::string space = "euclidean";
  int dim = 2;
  int degree = 3;
  double window = 100.0;  // cube side, or disk / tree-ball radius
  double intensity = 1.0;
  std::uint64_t seed = 1;
  int seeds = 1;
  std::string t_grid = "0:10:1";
  double t0 = 1.0;
  bool oracle = false;

  // render
  double t = 1.0;
  std::string points;  // "x,y;x,y;..." instead of sampling

  // treesep / verify-gap
  std::string d_range = "3:10";
  std::string t_range = "1:8";
  std::uint64_t n = 10000;

  // hyptess
  int depth = 8;
  std::uint64_t pairs = 10000;
  bool transience = false;

  // limsup / vitali
  std::string field = "pareto";
  double beta = 1.0;
  std::string L_list = "50,100,200,400";
  std::uint64_t balls = 10000;
  double max_radius = 5.0;

  // output
  std::string out = "out";
  std::string format = "json";
  int jobs = 1;
};

/// Binds the options of one subcommand to a config record. After parsing,
/// values from a config file fill every option not given on the command line.
class ParamTable {
 public:
  ParamTable(CLI::App* app, RunConfig& cfg) : app_(app), cfg_(cfg) {}

  template <class T>
  void add(const std::string& name, T RunConfig::*field, const std::string& help);
  void flag(const std::string& name, bool RunConfig::*field, const std::string& help);

  /// Config (or manifest) file option shared by every subcommand.
  void add_config_option();

  /// Applies the config file, if any. Call after CLI parsing.
  void apply_config_file() const;

  nlohmann::json to_json() const;

 private:
  struct Entry {
    std::string name;
    CLI::Option* option;
    std::function<void(const nlohmann::json&)> load;
    std::function<nlohmann::json()> save;
  };

  CLI::App* app_;
  RunConfig& cfg_;
  std::vector<Entry> entries_;
  std::string config_path_;
};

template <class T>
void ParamTable::add(const std::string& name, T RunConfig::*field, const std::string& help) {
  T& ref = cfg_.*field;
  CLI::Option* opt = app_->add_option("--" + name, ref, help)->capture_default_str();
  entries_.push_back({name, opt, [&ref](const nlohmann::json& j) { ref = j.get<T>(); },
                      [&ref] { return nlohmann::json(ref); }});
}

/// Parses "a:b:step" into the grid a, a+step, ..., up to b (inclusive within 1e-9).
std::vector<double> parse_grid(const std::string& text);
/// Parses "a:b" or "a" into the integers a..b.
std::vector<int> parse_int_range(const std::string& text);
/// Parses a comma separated list of integers.
std::vector<std::int64_t> parse_int_list(const std::string& text);

/// Stable 64-bit hash of the canonical JSON text of a config.
std::uint64_t config_hash(const nlohmann::json& config);

}  // namespace balloons::cli
