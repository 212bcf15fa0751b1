#pragma once

#include <farnet/farnet.hpp>
#include <farnet/verify.hpp>

#include <algorithm>
#include <random>

#include <cstdint>
#include <string>
#include <vector>

namespace fixtures {

using namespace farnet;

inline Network triangle() {
    return parse_network("v A\nv B\nv C\ne AB A B 3\ne BC B C 4\ne CA C A 5\n");
}

/// A=(0,0), B=(3,0), C=(3,4).
inline Network triangle_geo() {
    return parse_network("v A 0 0\nv B 3 0\nv C 3 4\ne AB A B\ne BC B C\ne CA C A\n");
}

/// One edge AB of weight 4 from (0,0) to (4,0).
inline Network single_edge() { return parse_network("v u 0 0\nv v 4 0\ne AB u v\n"); }

/// u - v - x with weights 2 and 3.
inline Network path3() { return parse_network("v u\nv v\nv x\ne uv u v 2\ne vx v x 3\n"); }

inline Network unit_cycle(std::size_t n) {
    GeneratorSpec spec;
    spec.family = Family::Cycle;
    spec.n = n;
    return generate(spec);
}

inline Network unit_star(std::size_t legs) {
    GeneratorSpec spec;
    spec.family = Family::Star;
    spec.n = legs;
    return generate(spec);
}

/// Random connected network: n in [2,10], m in [n-1, min(15, n(n-1)/2)].
inline Network random_network(std::uint64_t seed, bool geometric = false) {
    std::mt19937_64 rng(seed * 7919 + 13);
    GeneratorSpec spec;
    spec.family = Family::RandomConnected;
    spec.n = 2 + detail::uniform_index(rng, 9);
    const std::size_t max_m = std::min<std::size_t>(15, spec.n * (spec.n - 1) / 2);
    spec.m = spec.n - 1 + detail::uniform_index(rng, max_m - (spec.n - 1) + 1);
    spec.seed = seed;
    spec.geometric = geometric;
    return generate(spec);
}

inline std::vector<Network> random_networks(std::size_t count, bool geometric = false, std::uint64_t base = 1) {
    std::vector<Network> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(random_network(base + i, geometric));
    return out;
}

inline std::vector<NetworkPoint> random_points(const Network& net, std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<NetworkPoint> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(verify::random_point(net, rng));
    return out;
}

}  // namespace fixtures
