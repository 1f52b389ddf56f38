#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace treepack {

using VertexId = std::int32_t;
using EdgeId = std::int32_t;

using Rng = std::mt19937_64;

// Uniform double in [0, 1) built from the top 53 bits, so results do not
// depend on the standard library's distribution implementation.
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Independent stream seed for (seed, a, b); used for per-trial and per-probe RNGs.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
    return splitmix64(splitmix64(splitmix64(seed) ^ a) ^ (b * 0xd1b54a32d192ed03ULL));
}

// Malformed input: bad graph, bad constraint system, bad decomposition.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ParseError : public InvalidInput {
public:
    ParseError(int line, const std::string& msg)
        : InvalidInput("line " + std::to_string(line) + ": " + msg), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

// A post-condition or internal invariant did not hold.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class LimitExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace treepack
