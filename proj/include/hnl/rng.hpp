#pragma once

#include <cstdint>
#include <random>

namespace hnl {

// splitmix64 finalizer; stateless bit mixer used for substream derivation.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Substream seed contract:
//   seed(master, session, bit) = mix64(mix64(mix64(master) ^ session) ^ bit)
// Every session draws only from its own stream, so aggregate results do not
// depend on the order sessions are executed in.
inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t session,
                                    std::uint64_t bit) {
    return mix64(mix64(mix64(master) ^ session) ^ bit);
}

// Deterministic 64-bit seeded stream. uniform() maps the top 53 bits of one
// engine output to [0,1), so every call consumes exactly one engine draw.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : eng_(seed) {}

    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

private:
    std::mt19937_64 eng_;
};

} // namespace hnl
