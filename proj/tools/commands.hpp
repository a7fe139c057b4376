#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "artifacts.hpp"
#include "run_config.hpp"

namespace balloons::cli {

/// What a subcommand produced: artifacts go to the writer, and the count of
/// internal verifier failures decides the exit status.
struct CommandResult {
  std::uint64_t violations = 0;
  nlohmann::json summary = nlohmann::json::object();  // copied into the manifest
};

CommandResult run_simulate(const RunConfig& cfg, ArtifactWriter& out);
CommandResult run_render(const RunConfig& cfg, ArtifactWriter& out);
CommandResult run_treesep(const RunConfig& cfg, ArtifactWriter& out);
CommandResult run_verify_gap(const RunConfig& cfg, ArtifactWriter& out);
CommandResult run_hyptess(const RunConfig& cfg, ArtifactWriter& out);
CommandResult run_limsup(const RunConfig& cfg, ArtifactWriter& out);
CommandResult run_vitali(const RunConfig& cfg, ArtifactWriter& out);

/// Seed of run `index` under the master seed.
std::uint64_t run_seed(const RunConfig& cfg, int index);

}  // namespace balloons::cli
