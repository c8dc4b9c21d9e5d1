#pragma once

#include <filesystem>
#include <functional>
#include <vector>

#include "mfts/config.hpp"

namespace mfts {

// Subcommand bodies, shared between the CLI binary and the tests. Each
// writes its product files plus a config echo into cfg.out_dir and throws
// mfts::Error on any failure.
void cmd_mfdfa(const std::filesystem::path& input, const PipelineConfig& cfg);
void cmd_mfcca(const std::filesystem::path& x, const std::filesystem::path& y,
               const PipelineConfig& cfg);
void cmd_rho(const std::filesystem::path& x, const std::filesystem::path& y,
             const PipelineConfig& cfg);
void cmd_rolling(const std::filesystem::path& input, const PipelineConfig& cfg);
void cmd_eigen(const std::vector<std::filesystem::path>& inputs, const PipelineConfig& cfg);
void cmd_surrogate(const std::filesystem::path& input, const PipelineConfig& cfg);
void cmd_synth(const PipelineConfig& cfg);

// Maps errors to the exit contract (0 success, 2 input, 3 numerical) and
// emits an error JSON to stderr and, when an output directory is known, to
// <out>/error.json.
int run_command(const PipelineConfig& cfg, const std::function<void()>& body);

} // namespace mfts
