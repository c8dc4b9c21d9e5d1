#include "mfts/config.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>

#include "mfts/csv_io.hpp"
#include "mfts/errors.hpp"

namespace mfts {

namespace {

double to_double(const std::string& key, const std::string& v) {
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (v.empty() || end != v.c_str() + v.size())
        throw ConfigError(key + ": not a number: '" + v + "'");
    return x;
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
    char* end = nullptr;
    const unsigned long long x = std::strtoull(v.c_str(), &end, 10);
    if (v.empty() || v[0] == '-' || end != v.c_str() + v.size())
        throw ConfigError(key + ": not a non-negative integer: '" + v + "'");
    return x;
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ConfigError(key + ": not a boolean: '" + v + "'");
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    return s.substr(b, e - b);
}

using Setter = std::function<void(PipelineConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"q_min", [](PipelineConfig& c, const std::string& k, const std::string& v) { c.mfdfa.q_min = to_double(k, v); }},
        {"q_max", [](PipelineConfig& c, const std::string& k, const std::string& v) { c.mfdfa.q_max = to_double(k, v); }},
        {"q_step", [](PipelineConfig& c, const std::string& k, const std::string& v) { c.mfdfa.q_step = to_double(k, v); }},
        {"s_min", [](PipelineConfig& c, const std::string& k, const std::string& v) { c.mfdfa.s_min = to_u64(k, v); }},
        {"s_max", [](PipelineConfig& c, const std::string& k, const std::string& v) { c.mfdfa.s_max = to_u64(k, v); }},
        {"s_count", [](PipelineConfig& c, const std::string& k, const std::string& v) { c.mfdfa.s_count = to_u64(k, v); }},
        {"order", [](PipelineConfig& c, const std::string& k, const std::string& v) { c.mfdfa.order = static_cast<int>(to_u64(k, v)); }},
        {"fit_lo", [](PipelineConfig& c, const std::string& k, const std::string& v) { c.mfdfa.fit_lo = to_double(k, v); }},
        {"fit_hi", [](PipelineConfig& c, const std::string& k, const std::string& v) { c.mfdfa.fit_hi = to_double(k, v); }},
        {"window", [](PipelineConfig& c, const std::string& k, const std::string& v) { c.window = to_u64(k, v); }},
        {"step", [](PipelineConfig& c, const std::string& k, const std::string& v) { c.step = to_u64(k, v); }},
        {"seed", [](PipelineConfig& c, const std::string& k, const std::string& v) { c.seed = to_u64(k, v); }},
        {"out", [](PipelineConfig& c, const std::string&, const std::string& v) { c.out_dir = v; }},
        {"input_kind", [](PipelineConfig& c, const std::string&, const std::string& v) { c.input_kind = v; }},
        {"surrogate_kind", [](PipelineConfig& c, const std::string&, const std::string& v) { c.surrogate_kind = v; }},
        {"realizations", [](PipelineConfig& c, const std::string& k, const std::string& v) { c.realizations = to_u64(k, v); }},
        {"synth_kind", [](PipelineConfig& c, const std::string&, const std::string& v) { c.synth_kind = v; }},
        {"cascade_p", [](PipelineConfig& c, const std::string& k, const std::string& v) { c.cascade_p = to_double(k, v); }},
        {"levels", [](PipelineConfig& c, const std::string& k, const std::string& v) { c.levels = static_cast<unsigned>(to_u64(k, v)); }},
        {"length", [](PipelineConfig& c, const std::string& k, const std::string& v) { c.length = to_u64(k, v); }},
        {"randomize_placement", [](PipelineConfig& c, const std::string& k, const std::string& v) { c.randomize_placement = to_bool(k, v); }},
        {"rho_q", [](PipelineConfig& c, const std::string& k, const std::string& v) { c.rho_q_value = to_double(k, v); }},
        {"eigen_scale", [](PipelineConfig& c, const std::string& k, const std::string& v) { c.eigen_scale = to_u64(k, v); }},
        {"tail_thresholds", [](PipelineConfig& c, const std::string& k, const std::string& v) { c.tail_thresholds = to_u64(k, v); }},
    };
    return table;
}

} // namespace

void apply_config_file(PipelineConfig& cfg, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open config file " + path.string());
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                              ": expected key = value");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        const auto it = setters().find(key);
        if (it == setters().end())
            throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                              ": unknown key '" + key + "'");
        it->second(cfg, key, value);
    }
}

void write_config_echo(const PipelineConfig& cfg, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path.string());
    out << "q_min = " << fmt17(cfg.mfdfa.q_min) << '\n'
        << "q_max = " << fmt17(cfg.mfdfa.q_max) << '\n'
        << "q_step = " << fmt17(cfg.mfdfa.q_step) << '\n'
        << "s_min = " << cfg.mfdfa.s_min << '\n'
        << "s_max = " << cfg.mfdfa.s_max << '\n'
        << "s_count = " << cfg.mfdfa.s_count << '\n'
        << "order = " << cfg.mfdfa.order << '\n'
        << "fit_lo = " << fmt17(cfg.mfdfa.fit_lo) << '\n'
        << "fit_hi = " << fmt17(cfg.mfdfa.fit_hi) << '\n'
        << "window = " << cfg.window << '\n'
        << "step = " << cfg.step << '\n'
        << "seed = " << cfg.seed << '\n'
        << "out = " << cfg.out_dir << '\n'
        << "input_kind = " << cfg.input_kind << '\n'
        << "surrogate_kind = " << cfg.surrogate_kind << '\n'
        << "realizations = " << cfg.realizations << '\n'
        << "synth_kind = " << cfg.synth_kind << '\n'
        << "cascade_p = " << fmt17(cfg.cascade_p) << '\n'
        << "levels = " << cfg.levels << '\n'
        << "length = " << cfg.length << '\n'
        << "randomize_placement = " << (cfg.randomize_placement ? "true" : "false") << '\n'
        << "rho_q = " << fmt17(cfg.rho_q_value) << '\n'
        << "eigen_scale = " << cfg.eigen_scale << '\n'
        << "tail_thresholds = " << cfg.tail_thresholds << '\n';
    out.close();
    if (out.fail()) throw InputError("close failed on " + path.string());
}

} // namespace mfts
