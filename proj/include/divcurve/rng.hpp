#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace divcurve {

// SplitMix64 finaliser, used to derive independent stream seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Stream-seed derivation: every (graph, repeat, phase) task draws from its own
// stream so results are independent of scheduling and thread count. The mix is
// a fixed chain of SplitMix64 steps over the key parts.
inline std::uint64_t derive_stream(std::uint64_t base, std::uint64_t a = 0,
                                   std::uint64_t b = 0, std::uint64_t c = 0) {
    std::uint64_t k = splitmix64(base);
    k = splitmix64(k ^ splitmix64(a ^ 0x6A09E667F3BCC909ull));
    k = splitmix64(k ^ splitmix64(b ^ 0xBB67AE8584CAA73Bull));
    k = splitmix64(k ^ splitmix64(c ^ 0x3C6EF372FE94F82Bull));
    return k;
}

// RNG stream phases (part of the documented seed-derivation scheme).
enum StreamPhase : std::uint64_t {
    kPhaseUpsample = 1,
    kPhaseCoarsen = 2,
    kPhaseGenerate = 3,
    kPhasePerturb = 4,
    kPhasePermTest = 5,
    kPhaseFolds = 6,
    kPhaseResample = 7,
};

// mt19937_64 with canonical conversions. The standard pins the raw engine
// output; std::uniform_*_distribution does not, so the conversions live here
// to keep sequences bit-identical across platforms and standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Unbiased integer in [0, n) by rejection.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x = next();
        while (x >= limit) x = next();
        return x % n;
    }

    int int_in(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    bool bernoulli(double p) { return uniform01() < p; }

    template <class T>
    void shuffle(std::vector<T>& v) {  // Fisher–Yates
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace divcurve
