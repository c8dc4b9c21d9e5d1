#include "mfts/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>

#include "json.hpp"

#include "mfts/csv_io.hpp"
#include "mfts/crosscorr.hpp"
#include "mfts/errors.hpp"
#include "mfts/rng.hpp"
#include "mfts/rolling.hpp"
#include "mfts/surrogate.hpp"
#include "mfts/synth.hpp"

namespace mfts {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

fs::path ensure_out(const PipelineConfig& cfg) {
    if (cfg.out_dir.empty()) throw ConfigError("--out is required");
    fs::path dir(cfg.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw InputError("cannot create output directory " + dir.string());
    return dir;
}

InputKind parse_input_kind(const std::string& s) {
    if (s == "auto") return InputKind::auto_detect;
    if (s == "price") return InputKind::price;
    if (s == "value") return InputKind::value;
    throw ConfigError("input_kind must be auto, price or value");
}

SurrogateKind parse_surrogate_kind(const std::string& s) {
    if (s == "shuffle") return SurrogateKind::shuffle;
    if (s == "phase") return SurrogateKind::phase_randomized;
    if (s == "gauss") return SurrogateKind::gaussianized;
    throw ConfigError("surrogate_kind must be shuffle, phase or gauss");
}

// Ingest one series the way every analysis command sees it: prices become
// log-returns, and the series is normalized (which shifts log F by a
// constant and leaves every exponent unchanged).
Series prepare_input(const fs::path& path, const PipelineConfig& cfg) {
    const LoadedSeries loaded = read_series_csv(path, parse_input_kind(cfg.input_kind));
    Series s = loaded.is_price ? log_returns(loaded.series) : loaded.series;
    return normalize(s);
}

void write_grid_csv(const fs::path& path, const FluctuationGrid& grid) {
    CsvFile out(path);
    out.raw_line("q,s,F");
    for (std::size_t qi = 0; qi < grid.q_values.size(); ++qi)
        for (std::size_t si = 0; si < grid.scales.size(); ++si)
            out.cells({fmt12(grid.q_values[qi]), std::to_string(grid.scales[si]),
                       fmt12(grid.at(qi, si))});
    out.close();
}

void write_scaling_csv(const fs::path& path, const ScalingResult& sc, const char* name) {
    CsvFile out(path);
    out.raw_line(std::string("q,") + name + ",intercept,r2,n_points,valid");
    for (std::size_t i = 0; i < sc.q_values.size(); ++i)
        out.cells({fmt12(sc.q_values[i]), fmt12(sc.exponents[i]), fmt12(sc.intercepts[i]),
                   fmt12(sc.fit_r2[i]), std::to_string(sc.n_points[i]),
                   sc.valid[i] ? "1" : "0"});
    out.close();
}

void write_spectrum_csv(const fs::path& path, const SingularitySpectrum& sp) {
    CsvFile out(path);
    out.raw_line("q,alpha,f");
    for (std::size_t i = 0; i < sp.q_values.size(); ++i)
        out.cells({fmt12(sp.q_values[i]), fmt12(sp.alpha[i]), fmt12(sp.f_alpha[i])});
    out.close();
}

json spectrum_summary(const SingularitySpectrum& sp) {
    return json{{"alpha0", sp.alpha0},   {"delta_alpha", sp.delta_alpha},
                {"delta_L", sp.delta_L}, {"delta_R", sp.delta_R},
                {"A", sp.asymmetry},     {"H", sp.hurst},
                {"quality", sp.quality}};
}

void write_json(const fs::path& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path.string());
    out << j.dump(2) << '\n';
    out.close();
    if (out.fail()) throw InputError("close failed on " + path.string());
}

std::string row_date(const std::vector<Date>& dates, const std::vector<std::size_t>& ends,
                     std::size_t i) {
    return dates.empty() ? std::to_string(ends[i]) : dates[i].iso();
}

} // namespace

void cmd_mfdfa(const fs::path& input, const PipelineConfig& cfg) {
    const fs::path dir = ensure_out(cfg);
    const Series series = prepare_input(input, cfg);
    const MfdfaResult result = analyze_series(series, cfg.mfdfa);

    write_grid_csv(dir / "fluctuations.csv", result.grid);
    write_scaling_csv(dir / "hq.csv", result.scaling, "h");
    write_spectrum_csv(dir / "spectrum.csv", result.spectrum);

    json summary = spectrum_summary(result.spectrum);
    summary["fit_lo"] = result.scaling.fit_range.lo;
    summary["fit_hi"] = result.scaling.fit_range.hi;
    try {
        const TailCurve tail = tail_ccdf(series, cfg.tail_thresholds);
        CsvFile tf(dir / "tail.csv");
        tf.raw_line("threshold,ccdf");
        for (std::size_t i = 0; i < tail.thresholds.size(); ++i)
            tf.cells({fmt12(tail.thresholds[i]), fmt12(tail.ccdf[i])});
        tf.close();
        summary["tail"] = json{{"exponent", tail.fitted_exponent},
                               {"fit_lo", tail.fit_threshold_lo},
                               {"fit_hi", tail.fit_threshold_hi},
                               {"fit_points", tail.fit_points}};
    } catch (const InsufficientData&) {
        summary["tail"] = nullptr;
    }
    write_json(dir / "summary.json", summary);
    write_config_echo(cfg, dir / "config.txt");
}

void cmd_mfcca(const fs::path& x_path, const fs::path& y_path, const PipelineConfig& cfg) {
    const fs::path dir = ensure_out(cfg);
    const Series x = prepare_input(x_path, cfg);
    const Series y = prepare_input(y_path, cfg);
    const MfccaResult result = analyze_pair(x, y, cfg.mfdfa);

    write_grid_csv(dir / "fluctuations.csv", result.grid);
    write_scaling_csv(dir / "lambda_q.csv", result.scaling, "lambda");

    std::size_t valid = 0;
    for (bool v : result.scaling.valid)
        if (v) ++valid;
    write_json(dir / "summary.json",
               json{{"valid_q", valid},
                    {"total_q", result.scaling.q_values.size()},
                    {"fit_lo", result.scaling.fit_range.lo},
                    {"fit_hi", result.scaling.fit_range.hi}});
    write_config_echo(cfg, dir / "config.txt");
}

void cmd_rho(const fs::path& x_path, const fs::path& y_path, const PipelineConfig& cfg) {
    const fs::path dir = ensure_out(cfg);
    const Series x = prepare_input(x_path, cfg);
    const Series y = prepare_input(y_path, cfg);

    const auto scales = resolve_scale_grid(cfg.mfdfa, x.values.size());
    const auto q_grid = make_q_grid(cfg.mfdfa.q_min, cfg.mfdfa.q_max, cfg.mfdfa.q_step);

    CsvFile out(dir / "rho.csv");
    out.raw_line("q,s,rho,regime");
    for (double q : q_grid) {
        const RhoQResult r = rho_q(x, y, q, scales, cfg.mfdfa.order);
        for (std::size_t si = 0; si < scales.size(); ++si)
            out.cells({fmt12(q), std::to_string(scales[si]), fmt12(r.rho[si]),
                       q < 0.0 ? "unbounded" : "bounded"});
    }
    out.close();
    write_config_echo(cfg, dir / "config.txt");
}

void cmd_rolling(const fs::path& input, const PipelineConfig& cfg) {
    const fs::path dir = ensure_out(cfg);
    const Series series = prepare_input(input, cfg);
    const SpectrumTrack track =
        rolling_spectra(series, RollingPlan{cfg.window, cfg.step}, cfg.mfdfa);

    CsvFile long_csv(dir / "spectra_long.csv");
    long_csv.raw_line("date,q,alpha,f");
    CsvFile summary_csv(dir / "summary.csv");
    summary_csv.raw_line("date,H,delta_alpha,delta_L,delta_R,A,alpha0");
    CsvFile proj_csv(dir / "projection.csv");
    proj_csv.raw_line("date,alpha_min,alpha0,alpha_max");

    for (std::size_t w = 0; w < track.spectra.size(); ++w) {
        const SingularitySpectrum& sp = track.spectra[w];
        const std::string date = row_date(track.dates, track.end_indices, w);
        for (std::size_t i = 0; i < sp.q_values.size(); ++i)
            long_csv.cells({date, fmt12(sp.q_values[i]), fmt12(sp.alpha[i]),
                            fmt12(sp.f_alpha[i])});
        summary_csv.cells({date, fmt12(sp.hurst), fmt12(sp.delta_alpha), fmt12(sp.delta_L),
                           fmt12(sp.delta_R), fmt12(sp.asymmetry), fmt12(sp.alpha0)});
        double amin = std::numeric_limits<double>::quiet_NaN();
        double amax = amin;
        if (!sp.alpha.empty()) {
            const auto [lo, hi] = std::minmax_element(sp.alpha.begin(), sp.alpha.end());
            amin = *lo;
            amax = *hi;
        }
        proj_csv.cells({date, fmt12(amin), fmt12(sp.alpha0), fmt12(amax)});
    }
    long_csv.close();
    summary_csv.close();
    proj_csv.close();
    write_config_echo(cfg, dir / "config.txt");
}

void cmd_eigen(const std::vector<fs::path>& inputs, const PipelineConfig& cfg) {
    const fs::path dir = ensure_out(cfg);
    if (inputs.size() < 2) throw InputError("eigen needs at least 2 input files");
    std::vector<Series> series;
    series.reserve(inputs.size());
    for (const auto& p : inputs) series.push_back(prepare_input(p, cfg));

    const EigenTrack track = rolling_eigen(series, cfg.window, cfg.step, cfg.rho_q_value,
                                           cfg.eigen_scale, cfg.mfdfa.order);

    CsvFile out(dir / "eigen.csv");
    out.raw_line("date,lambda1,gamma1,mp_upper,mp_lower");
    for (std::size_t w = 0; w < track.lambda1.size(); ++w)
        out.cells({row_date(track.dates, track.end_indices, w), fmt12(track.lambda1[w]),
                   fmt12(track.gamma1[w]), fmt12(track.mp_upper), fmt12(track.mp_lower)});
    out.close();
    write_config_echo(cfg, dir / "config.txt");
}

void cmd_surrogate(const fs::path& input, const PipelineConfig& cfg) {
    const fs::path dir = ensure_out(cfg);
    const Series series = prepare_input(input, cfg);
    const SurrogateKind kind = parse_surrogate_kind(cfg.surrogate_kind);

    SurrogateSpec spec;
    spec.kind = kind;
    spec.realizations = cfg.realizations;
    spec.seed = cfg.seed;

    const SingularitySpectrum avg = surrogate_spectrum(series, spec, cfg.mfdfa);
    write_spectrum_csv(dir / "spectrum.csv", avg);

    json summary = spectrum_summary(avg);
    summary["kind"] = cfg.surrogate_kind;
    summary["realizations"] = cfg.realizations;
    write_json(dir / "summary.json", summary);

    // one concrete surrogate realization for external inspection
    write_series_csv(dir / "surrogate.csv", make_surrogate(series, kind, derive_seed(cfg.seed, 0)),
                     "value");
    write_config_echo(cfg, dir / "config.txt");
}

void cmd_synth(const PipelineConfig& cfg) {
    const fs::path dir = ensure_out(cfg);
    Series series;
    if (cfg.synth_kind == "cascade") {
        CascadeSpec spec;
        spec.p = cfg.cascade_p;
        spec.levels = cfg.levels;
        spec.seed = cfg.seed;
        spec.randomize_placement = cfg.randomize_placement;
        series = binomial_cascade(spec);
    } else if (cfg.synth_kind == "noise") {
        series = white_noise(cfg.length, cfg.seed);
    } else {
        throw ConfigError("synth_kind must be cascade or noise");
    }
    write_series_csv(dir / "series.csv", series, "value");
    write_config_echo(cfg, dir / "config.txt");
}

int run_command(const PipelineConfig& cfg, const std::function<void()>& body) {
    json report;
    int code = 0;
    try {
        body();
        return 0;
    } catch (const Error& e) {
        report = json{{"error",
                       {{"code", e.code()},
                        {"kind", e.kind() == ErrorKind::Input ? "input" : "numeric"},
                        {"message", e.what()}}}};
        code = e.kind() == ErrorKind::Input ? 2 : 3;
    } catch (const std::exception& e) {
        report = json{{"error",
                       {{"code", "InternalError"}, {"kind", "numeric"}, {"message", e.what()}}}};
        code = 3;
    }
    std::cerr << report.dump(2) << '\n';
    if (!cfg.out_dir.empty()) {
        try {
            fs::create_directories(cfg.out_dir);
            std::ofstream out(fs::path(cfg.out_dir) / "error.json");
            out << report.dump(2) << '\n';
        } catch (...) {
        }
    }
    return code;
}

} // namespace mfts
