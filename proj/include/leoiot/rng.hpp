#ifndef LEOIOT_RNG_HPP
#define LEOIOT_RNG_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string_view>

namespace leoiot::rng {

// SplitMix64 step; used to mix seeds so that nearby master seeds do not
// produce correlated streams.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Master seed + stable label -> independent per-component seed. Adding new
// labels never perturbs existing streams.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view label) {
    std::uint64_t s = master ^ fnv1a64(label);
    return splitmix64(s);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t s = master ^ (0x9e3779b97f4a7c15ULL + index);
    return splitmix64(s);
}

// Deterministic random stream. The engine is the standard-specified
// mt19937_64; all variate transforms are written out explicitly so results
// are identical across standard library implementations.
class Stream {
public:
    explicit Stream(std::uint64_t seed) : eng_(seed) {}

    // Uniform double in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Unbiased integer in [0, bound) by rejection.
    std::uint64_t uniform_int(std::uint64_t bound) {
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
        std::uint64_t x;
        do {
            x = eng_();
        } while (x >= limit);
        return x % bound;
    }

    // Box-Muller; the spare value is cached.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

    double normal(double mean, double sd) { return mean + sd * normal(); }

    double exponential(double rate) {
        double u = uniform();
        while (u <= 0.0) u = uniform();
        return -std::log(u) / rate;
    }

    // Knuth product method, chunked so large means stay cheap and the
    // uniform draws stay well above the underflow threshold.
    long poisson(double mean) {
        long total = 0;
        while (mean > 32.0) {
            total += poisson_knuth(32.0);
            mean -= 32.0;
        }
        return total + poisson_knuth(mean);
    }

    std::mt19937_64& engine() { return eng_; }

private:
    long poisson_knuth(double mean) {
        if (mean <= 0.0) return 0;
        const double limit = std::exp(-mean);
        double prod = 1.0;
        long k = -1;
        do {
            prod *= uniform();
            ++k;
        } while (prod > limit);
        return k;
    }

    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace leoiot::rng

#endif
