#include <cstdint>
#include <filesystem>
#include <functional>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "mfts/commands.hpp"
#include "mfts/errors.hpp"

namespace {

using mfts::PipelineConfig;

// Staged flag values plus the knowledge of which flags were actually given,
// so the precedence chain (flags > config file > defaults) can be assembled
// after parsing.
struct Assembler {
    PipelineConfig staged;
    std::string config_file;
    std::vector<std::pair<CLI::Option*, std::function<void(PipelineConfig&, const PipelineConfig&)>>>
        bindings;

    void track(CLI::Option* opt,
               std::function<void(PipelineConfig&, const PipelineConfig&)> copy) {
        bindings.emplace_back(opt, std::move(copy));
    }

    PipelineConfig assemble(PipelineConfig defaults) const {
        PipelineConfig cfg = std::move(defaults);
        if (!config_file.empty()) mfts::apply_config_file(cfg, config_file);
        for (const auto& [opt, copy] : bindings)
            if (opt->count() > 0) copy(cfg, staged);
        return cfg;
    }
};

void add_common_options(CLI::App* sub, Assembler& a) {
    PipelineConfig& s = a.staged;
    sub->add_option("--config", a.config_file, "key = value config file");

    a.track(sub->add_option("--q-min", s.mfdfa.q_min, "lowest moment order"),
            [](PipelineConfig& c, const PipelineConfig& v) { c.mfdfa.q_min = v.mfdfa.q_min; });
    a.track(sub->add_option("--q-max", s.mfdfa.q_max, "highest moment order"),
            [](PipelineConfig& c, const PipelineConfig& v) { c.mfdfa.q_max = v.mfdfa.q_max; });
    a.track(sub->add_option("--q-step", s.mfdfa.q_step, "moment grid step"),
            [](PipelineConfig& c, const PipelineConfig& v) { c.mfdfa.q_step = v.mfdfa.q_step; });
    a.track(sub->add_option("--s-min", s.mfdfa.s_min, "smallest scale (samples)"),
            [](PipelineConfig& c, const PipelineConfig& v) { c.mfdfa.s_min = v.mfdfa.s_min; });
    a.track(sub->add_option("--s-max", s.mfdfa.s_max, "largest scale; 0 = length/5"),
            [](PipelineConfig& c, const PipelineConfig& v) { c.mfdfa.s_max = v.mfdfa.s_max; });
    a.track(sub->add_option("--s-count", s.mfdfa.s_count, "number of log-spaced scales"),
            [](PipelineConfig& c, const PipelineConfig& v) { c.mfdfa.s_count = v.mfdfa.s_count; });
    a.track(sub->add_option("--order", s.mfdfa.order, "detrending polynomial order"),
            [](PipelineConfig& c, const PipelineConfig& v) { c.mfdfa.order = v.mfdfa.order; });
    a.track(sub->add_option("--fit-lo", s.mfdfa.fit_lo, "scaling fit lower scale; 0 = grid start"),
            [](PipelineConfig& c, const PipelineConfig& v) { c.mfdfa.fit_lo = v.mfdfa.fit_lo; });
    a.track(sub->add_option("--fit-hi", s.mfdfa.fit_hi, "scaling fit upper scale; 0 = grid end"),
            [](PipelineConfig& c, const PipelineConfig& v) { c.mfdfa.fit_hi = v.mfdfa.fit_hi; });
    a.track(sub->add_option("--window", s.window, "rolling window length (samples)"),
            [](PipelineConfig& c, const PipelineConfig& v) { c.window = v.window; });
    a.track(sub->add_option("--step", s.step, "rolling window step (samples)"),
            [](PipelineConfig& c, const PipelineConfig& v) { c.step = v.step; });
    a.track(sub->add_option("--seed", s.seed, "master random seed"),
            [](PipelineConfig& c, const PipelineConfig& v) { c.seed = v.seed; });
    a.track(sub->add_option("--out", s.out_dir, "output directory"),
            [](PipelineConfig& c, const PipelineConfig& v) { c.out_dir = v.out_dir; });
    a.track(sub->add_option("--input-kind", s.input_kind, "auto | price | value")
                ->check(CLI::IsMember({"auto", "price", "value"})),
            [](PipelineConfig& c, const PipelineConfig& v) { c.input_kind = v.input_kind; });
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"multifractal time series toolkit"};
    app.require_subcommand(1);

    Assembler a;
    std::string input_x, input_y;
    std::vector<std::string> eigen_inputs;

    CLI::App* mfdfa = app.add_subcommand("mfdfa", "single-series multifractal analysis");
    mfdfa->add_option("input", input_x, "series CSV")->required();
    add_common_options(mfdfa, a);
    a.track(mfdfa->add_option("--tail-thresholds", a.staged.tail_thresholds,
                              "threshold count of the |return| tail curve"),
            [](PipelineConfig& c, const PipelineConfig& v) {
                c.tail_thresholds = v.tail_thresholds;
            });

    CLI::App* mfcca = app.add_subcommand("mfcca", "two-series cross-correlation scaling");
    mfcca->add_option("x", input_x, "first series CSV")->required();
    mfcca->add_option("y", input_y, "second series CSV")->required();
    add_common_options(mfcca, a);

    CLI::App* rho = app.add_subcommand("rho", "q-dependent detrended correlation coefficient");
    rho->add_option("x", input_x, "first series CSV")->required();
    rho->add_option("y", input_y, "second series CSV")->required();
    add_common_options(rho, a);

    CLI::App* rolling = app.add_subcommand("rolling", "rolling-window spectrum evolution");
    rolling->add_option("input", input_x, "series CSV")->required();
    add_common_options(rolling, a);

    CLI::App* eigen = app.add_subcommand("eigen", "correlation matrix eigenvalue tracking");
    eigen->add_option("inputs", eigen_inputs, "component series CSVs")->required()->expected(2, -1);
    add_common_options(eigen, a);
    a.track(eigen->add_option("--q", a.staged.rho_q_value, "moment order of the rho matrix"),
            [](PipelineConfig& c, const PipelineConfig& v) { c.rho_q_value = v.rho_q_value; });
    a.track(eigen->add_option("--scale", a.staged.eigen_scale, "scale of the rho matrix"),
            [](PipelineConfig& c, const PipelineConfig& v) { c.eigen_scale = v.eigen_scale; });

    CLI::App* surrogate = app.add_subcommand("surrogate", "surrogate-averaged spectrum");
    surrogate->add_option("input", input_x, "series CSV")->required();
    add_common_options(surrogate, a);
    a.track(surrogate->add_option("--kind", a.staged.surrogate_kind, "shuffle | phase | gauss")
                ->check(CLI::IsMember({"shuffle", "phase", "gauss"})),
            [](PipelineConfig& c, const PipelineConfig& v) {
                c.surrogate_kind = v.surrogate_kind;
            });
    a.track(surrogate->add_option("--realizations", a.staged.realizations,
                                  "number of surrogate realizations"),
            [](PipelineConfig& c, const PipelineConfig& v) {
                c.realizations = v.realizations;
            });

    CLI::App* synth = app.add_subcommand("synth", "synthetic series generation");
    add_common_options(synth, a);
    a.track(synth->add_option("--kind", a.staged.synth_kind, "cascade | noise")
                ->check(CLI::IsMember({"cascade", "noise"})),
            [](PipelineConfig& c, const PipelineConfig& v) { c.synth_kind = v.synth_kind; });
    a.track(synth->add_option("--p", a.staged.cascade_p, "cascade multiplier in (0.5, 1)"),
            [](PipelineConfig& c, const PipelineConfig& v) { c.cascade_p = v.cascade_p; });
    a.track(synth->add_option("--levels", a.staged.levels, "cascade levels, length = 2^levels"),
            [](PipelineConfig& c, const PipelineConfig& v) { c.levels = v.levels; });
    a.track(synth->add_option("--length", a.staged.length, "white noise length"),
            [](PipelineConfig& c, const PipelineConfig& v) { c.length = v.length; });
    a.track(synth->add_flag("--randomize", a.staged.randomize_placement,
                            "seeded random cascade placement"),
            [](PipelineConfig& c, const PipelineConfig& v) {
                c.randomize_placement = v.randomize_placement;
            });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        PipelineConfig defaults;
        if (eigen->parsed()) {
            defaults.window = 100;
            defaults.step = 1;
        }
        const PipelineConfig cfg = a.assemble(defaults);

        if (mfdfa->parsed())
            return mfts::run_command(cfg, [&] { mfts::cmd_mfdfa(input_x, cfg); });
        if (mfcca->parsed())
            return mfts::run_command(cfg, [&] { mfts::cmd_mfcca(input_x, input_y, cfg); });
        if (rho->parsed())
            return mfts::run_command(cfg, [&] { mfts::cmd_rho(input_x, input_y, cfg); });
        if (rolling->parsed())
            return mfts::run_command(cfg, [&] { mfts::cmd_rolling(input_x, cfg); });
        if (eigen->parsed()) {
            std::vector<std::filesystem::path> paths(eigen_inputs.begin(), eigen_inputs.end());
            return mfts::run_command(cfg, [&] { mfts::cmd_eigen(paths, cfg); });
        }
        if (surrogate->parsed())
            return mfts::run_command(cfg, [&] { mfts::cmd_surrogate(input_x, cfg); });
        if (synth->parsed())
            return mfts::run_command(cfg, [&] { mfts::cmd_synth(cfg); });
    } catch (const mfts::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.kind() == mfts::ErrorKind::Input ? 2 : 3;
    }
    return 2;
}
