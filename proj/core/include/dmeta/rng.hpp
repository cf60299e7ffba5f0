#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace dmeta {

// splitmix64; used to mix seeds and derive independent stream seeds.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Deterministic RNG stream. Distribution sampling is implemented by hand
// (std:: distributions are implementation-defined) so that identical seeds
// give identical draws on any platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(mix64(seed)) {}

    // Independent stream addressed by (seed, ids...). Streams derived with
    // distinct id tuples never share state.
    template <typename... Ids>
    static Rng derive(std::uint64_t seed, Ids... ids) {
        std::uint64_t h = mix64(seed);
        ((h = mix64(h ^ static_cast<std::uint64_t>(ids))), ...);
        return Rng(h);
    }

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [0, n).
    std::uint64_t uniform_index(std::uint64_t n) {
        return static_cast<std::uint64_t>(uniform() * static_cast<double>(n)) % n;
    }

    bool coin() { return (engine_() >> 63) != 0; }

    // Box-Muller; one spare cached.
    double gauss(double mean, double stddev) {
        if (has_spare_) {
            has_spare_ = false;
            return mean + stddev * spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * M_PI * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return mean + stddev * r * std::cos(a);
    }

    // Positive gaussian draw; rejects and resamples nonpositive values.
    double gauss_positive(double mean, double stddev) {
        double x = gauss(mean, stddev);
        while (x <= 0.0) x = gauss(mean, stddev);
        return x;
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace dmeta
