#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "mfts/analysis.hpp"

namespace mfts {

// Fully resolved knobs of one CLI invocation. Precedence when assembling:
// explicit flags > config file > defaults. The echo written next to every
// output round-trips losslessly through load_config_file.
struct PipelineConfig {
    MfdfaParams mfdfa;

    std::size_t window = 5000;
    std::size_t step = 20;
    std::uint64_t seed = 0;
    std::string out_dir;

    std::string input_kind = "auto";  // auto | price | value

    std::string surrogate_kind = "shuffle";  // shuffle | phase | gauss
    std::size_t realizations = 10;

    std::string synth_kind = "cascade";  // cascade | noise
    double cascade_p = 0.6;
    unsigned levels = 16;
    std::size_t length = 16384;
    bool randomize_placement = false;

    double rho_q_value = 2.0;    // q of the rho_q matrix
    std::size_t eigen_scale = 100;

    std::size_t tail_thresholds = 50;
};

// Flat key=value file; '#' starts a comment. Unknown keys are rejected.
void apply_config_file(PipelineConfig& cfg, const std::filesystem::path& path);

// Writes every field, doubles at 17 significant digits.
void write_config_echo(const PipelineConfig& cfg, const std::filesystem::path& path);

} // namespace mfts
