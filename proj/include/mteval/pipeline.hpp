#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mteval/error.hpp"

namespace mteval {

// Flat key-value configuration: one "key = value" per line, '#' comments,
// a required "version" key. Canonical form (sorted keys) is what gets
// hashed into manifests, so config files round-trip bit-exactly.
class PipelineConfig {
 public:
  PipelineConfig() { values_["version"] = "1"; }

  static PipelineConfig load(const std::string& path);
  void save(const std::string& path) const;

  std::string canonical() const;
  std::string hash() const;  // fnv1a64 of the canonical form, hex

  void set(const std::string& key, const std::string& value) {
    values_[key] = value;
  }
  std::optional<std::string> get(const std::string& key) const;
  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

// Hex fnv1a64 digest of a file's bytes; for manifest provenance, not
// security.
std::string file_digest(const std::string& path);

// `<output>.manifest.json`: command, config hash, seed, input digests and
// any command-specific extras (e.g. per-category counts).
void write_manifest(const std::string& output_path, const std::string& command,
                    const PipelineConfig& config, std::uint64_t seed,
                    const std::vector<std::string>& input_paths,
                    const std::map<std::string, std::string>& extras = {},
                    const std::vector<std::string>& warnings = {});

}  // namespace mteval
