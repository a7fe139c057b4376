#include "artifacts.hpp"

#include <fstream>
#include <random>

#include <fmt/format.h>

#include "balloons/error.hpp"
#include "balloons/rng.hpp"

namespace balloons::cli {

namespace fs = std::filesystem;

ArtifactWriter::ArtifactWriter(fs::path out_dir) : out_(std::move(out_dir)) {
  // stage next to the destination so the final renames stay on one filesystem
  const fs::path abs = fs::absolute(out_).lexically_normal();
  const fs::path parent = abs.has_filename() ? abs.parent_path() : abs.parent_path().parent_path();
  std::error_code ec;
  fs::create_directories(parent, ec);
  if (ec) fail(ErrorCode::io, "cannot create '" + parent.string() + "': " + ec.message());
  std::random_device rd;
  staging_ = parent / fmt::format(".balloons-staging-{:016x}", (static_cast<std::uint64_t>(rd()) << 32) | rd());
  fs::create_directory(staging_, ec);
  if (ec) fail(ErrorCode::io, "cannot create staging directory: " + ec.message());
}

ArtifactWriter::~ArtifactWriter() {
  std::error_code ec;
  fs::remove_all(staging_, ec);
}

void ArtifactWriter::add(const std::string& name, const std::string& content) {
  require(name.find('/') == std::string::npos && !name.empty() && name != "manifest.json", ErrorCode::invalid_argument,
          "artifact names must be plain file names");
  std::ofstream f(staging_ / name, std::ios::binary);
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  f.close();
  if (!f) fail(ErrorCode::io, "failed writing artifact '" + name + "'");
  written_.emplace_back(name, fmt::format("{:016x}", hash_tag(content)));
}

void ArtifactWriter::commit(nlohmann::json manifest) {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& [name, hash] : written_) list.push_back({{"name", name}, {"hash", hash}});
  manifest["artifacts"] = std::move(list);
  {
    std::ofstream f(staging_ / "manifest.json", std::ios::binary);
    f << manifest.dump(2) << '\n';
    if (!f) fail(ErrorCode::io, "failed writing manifest");
  }
  std::error_code ec;
  fs::create_directories(out_, ec);
  if (ec) fail(ErrorCode::io, "cannot create output directory '" + out_.string() + "': " + ec.message());
  for (const auto& [name, hash] : written_) {
    fs::rename(staging_ / name, out_ / name, ec);
    if (ec) fail(ErrorCode::io, "cannot move artifact '" + name + "' into place: " + ec.message());
  }
  fs::rename(staging_ / "manifest.json", out_ / "manifest.json", ec);
  if (ec) fail(ErrorCode::io, "cannot move manifest into place: " + ec.message());
  committed_ = true;
}

}  // namespace balloons::cli
