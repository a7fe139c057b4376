#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace balloons::cli {

/// Collects a run's outputs in a staging directory next to the destination
/// and moves them into place only on commit. An uncommitted writer removes
/// its staging directory, so a failed run leaves nothing behind.
class ArtifactWriter {
 public:
  explicit ArtifactWriter(std::filesystem::path out_dir);
  ~ArtifactWriter();

  ArtifactWriter(const ArtifactWriter&) = delete;
  ArtifactWriter& operator=(const ArtifactWriter&) = delete;

  void add(const std::string& name, const std::string& content);

  /// Writes manifest.json (the given fields plus the artifact list) and
  /// renames everything into the output directory.
  void commit(nlohmann::json manifest);

 private:
  std::filesystem::path out_;
  std::filesystem::path staging_;
  std::vector<std::pair<std::string, std::string>> written_;  // name, content hash
  bool committed_ = false;
};

}  // namespace balloons::cli
