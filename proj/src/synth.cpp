#include "mfts/synth.hpp"

#include <utility>
#include <vector>

#include "mfts/errors.hpp"
#include "mfts/rng.hpp"

namespace mfts {

Series binomial_cascade(const CascadeSpec& spec) {
    if (!(spec.p > 0.5 && spec.p < 1.0)) throw ConfigError("cascade p must lie in (0.5, 1)");
    if (spec.levels < 1 || spec.levels > 26)
        throw ConfigError("cascade levels must lie in [1, 26]");

    Rng rng(spec.seed);
    std::vector<double> mass{1.0};
    for (unsigned level = 0; level < spec.levels; ++level) {
        std::vector<double> next(mass.size() * 2);
        for (std::size_t i = 0; i < mass.size(); ++i) {
            double a = mass[i] * spec.p;
            double b = mass[i] * (1.0 - spec.p);
            if (spec.randomize_placement && rng.bounded(2) == 1) std::swap(a, b);
            next[2 * i] = a;
            next[2 * i + 1] = b;
        }
        mass = std::move(next);
    }

    Series out;
    out.values = std::move(mass);
    out.label = "cascade";
    return out;
}

Series white_noise(std::size_t length, std::uint64_t seed) {
    if (length < 2) throw ConfigError("white noise length must be at least 2");
    Series out;
    out.values.resize(length);
    Rng rng(seed);
    for (double& v : out.values) v = rng.gauss();
    out.label = "noise";
    return out;
}

} // namespace mfts
