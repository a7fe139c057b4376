#include "run_config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "balloons/error.hpp"
#include "balloons/rng.hpp"

namespace balloons::cli {

using nlohmann::json;

void ParamTable::flag(const std::string& name, bool RunConfig::*field, const std::string& help) {
  bool& ref = cfg_.*field;
  CLI::Option* opt = app_->add_flag("--" + name, ref, help);
  entries_.push_back({name, opt, [&ref](const json& j) { ref = j.get<bool>(); }, [&ref] { return json(ref); }});
}

void ParamTable::add_config_option() {
  app_->add_option("--config", config_path_,
                   "JSON config file or a manifest from an earlier run; explicit flags take precedence");
}

void ParamTable::apply_config_file() const {
  if (config_path_.empty()) return;
  std::ifstream in(config_path_);
  if (!in) fail(ErrorCode::io, "cannot open config file '" + config_path_ + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  json j;
  try {
    j = json::parse(buf.str());
  } catch (const json::exception& e) {
    fail(ErrorCode::invalid_input, std::string("config file is not valid JSON: ") + e.what());
  }
  // a manifest nests the config and names its command
  if (j.contains("config")) {
    if (j.contains("command") && j["command"] != cfg_.command) {
      fail(ErrorCode::invalid_input, "manifest was written by '" + j["command"].get<std::string>() + "'");
    }
    j = j["config"];
  }
  if (!j.is_object()) fail(ErrorCode::invalid_input, "config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    const auto it = std::find_if(entries_.begin(), entries_.end(), [&](const Entry& e) { return e.name == key; });
    if (it == entries_.end()) fail(ErrorCode::invalid_input, "unknown config key '" + key + "'");
    if (it->option->count() > 0) continue;  // flags win
    try {
      it->load(value);
    } catch (const json::exception&) {
      fail(ErrorCode::invalid_input, "config key '" + key + "' has the wrong type");
    }
  }
}

json ParamTable::to_json() const {
  json j = json::object();
  for (const auto& e : entries_) j[e.name] = e.save();
  return j;
}

std::vector<double> parse_grid(const std::string& text) {
  double a = 0, b = 0, step = 0;
  char c1 = 0, c2 = 0;
  std::istringstream in(text);
  if (!(in >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' || !(step > 0) || b < a) {
    fail(ErrorCode::invalid_argument, "time grid must look like a:b:step with a <= b and step > 0");
  }
  const auto count = static_cast<std::int64_t>(std::floor((b - a) / step + 1e-9));
  require(count < 10'000'000, ErrorCode::size_guard, "time grid too long");
  std::vector<double> grid;
  for (std::int64_t i = 0; i <= count; ++i) grid.push_back(a + static_cast<double>(i) * step);
  return grid;
}

std::vector<int> parse_int_range(const std::string& text) {
  const auto colon = text.find(':');
  try {
    const int a = std::stoi(text.substr(0, colon));
    const int b = colon == std::string::npos ? a : std::stoi(text.substr(colon + 1));
    require(a <= b, ErrorCode::invalid_argument, "range must satisfy a <= b");
    std::vector<int> out;
    for (int v = a; v <= b; ++v) out.push_back(v);
    return out;
  } catch (const std::logic_error&) {
    fail(ErrorCode::invalid_argument, "range must look like a:b");
  }
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      out.push_back(std::stoll(item));
    } catch (const std::logic_error&) {
      fail(ErrorCode::invalid_argument, "list must contain integers separated by commas");
    }
  }
  require(!out.empty(), ErrorCode::invalid_argument, "list is empty");
  return out;
}

std::uint64_t config_hash(const json& config) { return hash_tag(config.dump()); }

}  // namespace balloons::cli
