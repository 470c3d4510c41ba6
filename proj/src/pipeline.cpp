#include "mteval/pipeline.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "mteval/rng.hpp"

namespace mteval {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

PipelineConfig PipelineConfig::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file: " + path);
  PipelineConfig config;
  config.values_.clear();
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ValidationError("config line " + std::to_string(row) +
                            " is not of the form 'key = value'");
    }
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (key.empty()) {
      throw ValidationError("config line " + std::to_string(row) +
                            " has an empty key");
    }
    config.values_[key] = value;
  }
  if (!config.values_.count("version")) {
    throw ValidationError("config file is missing the 'version' key");
  }
  return config;
}

void PipelineConfig::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write config file: " + path);
  out << canonical();
  if (!out) throw IoError("write failed: " + path);
}

std::string PipelineConfig::canonical() const {
  std::ostringstream os;
  for (const auto& [key, value] : values_) {
    os << key << " = " << value << '\n';
  }
  return os.str();
}

std::string PipelineConfig::hash() const {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(canonical())));
  return buf;
}

std::optional<std::string> PipelineConfig::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file for digest: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(os.str())));
  return buf;
}

void write_manifest(const std::string& output_path, const std::string& command,
                    const PipelineConfig& config, std::uint64_t seed,
                    const std::vector<std::string>& input_paths,
                    const std::map<std::string, std::string>& extras,
                    const std::vector<std::string>& warnings) {
  nlohmann::json j;
  j["command"] = command;
  j["config_hash"] = config.hash();
  j["seed"] = seed;
  nlohmann::json inputs = nlohmann::json::array();
  for (const auto& p : input_paths) {
    inputs.push_back({{"path", p}, {"digest", file_digest(p)}});
  }
  j["inputs"] = inputs;
  if (!extras.empty()) j["extras"] = extras;
  if (!warnings.empty()) j["warnings"] = warnings;

  const std::string path = output_path + ".manifest.json";
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write manifest: " + path);
  out << j.dump(2) << '\n';
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace mteval
