#pragma once

#include <farnet/distance.hpp>
#include <farnet/network.hpp>
#include <farnet/oracle.hpp>

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace farnet {

enum class Family { Cycle, Path, Star, RandomConnected, LowerBound };

inline const char* to_string(Family f) {
    switch (f) {
        case Family::Cycle: return "cycle";
        case Family::Path: return "path";
        case Family::Star: return "star";
        case Family::RandomConnected: return "random";
        case Family::LowerBound: return "gkl";
    }
    return "?";
}

inline Family parse_family(std::string_view name) {
    if (name == "cycle") return Family::Cycle;
    if (name == "path") return Family::Path;
    if (name == "star") return Family::Star;
    if (name == "random") return Family::RandomConnected;
    if (name == "gkl") return Family::LowerBound;
    throw Error(ErrorKind::InvalidArgument, "unknown family '" + std::string(name) + "'");
}

struct GeneratorSpec {
    Family family = Family::Cycle;
    /// Vertex count for cycle/path/random; leg count for star.
    std::size_t n = 3;
    /// Edge count for the random family.
    std::size_t m = 3;
    std::size_t k = 2;
    std::size_t l = 1;
    /// 0 selects 1/(2k).
    double epsilon = 0.0;
    std::uint64_t seed = 1;
    /// Explicit weights for cycle/path/star, used in order. Empty means 1
    /// unless random_weights is set.
    std::vector<double> weights;
    bool random_weights = false;
    double weight_lo = 0.5;
    double weight_hi = 10.0;
    /// Random family only: place vertices in [0,10]^2 and use Euclidean weights.
    bool geometric = false;
};

namespace detail {

/// Uniform double in [0,1) from the top 53 bits, identical on every platform.
inline double unit_double(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
    return static_cast<std::size_t>(unit_double(rng) * static_cast<double>(n)) % n;
}

inline double edge_weight(const GeneratorSpec& spec, std::mt19937_64& rng, std::size_t i) {
    if (i < spec.weights.size()) return spec.weights[i];
    if (spec.random_weights) return spec.weight_lo + unit_double(rng) * (spec.weight_hi - spec.weight_lo);
    return 1.0;
}

inline std::string name(char prefix, std::size_t i) { return std::string(1, prefix) + std::to_string(i); }

inline Network ring(const GeneratorSpec& spec, bool closed) {
    if (spec.n < (closed ? 3u : 2u)) throw Error(ErrorKind::InvalidArgument, closed ? "cycle needs n >= 3" : "path needs n >= 2");
    std::mt19937_64 rng(spec.seed);
    Network net;
    for (std::size_t i = 0; i < spec.n; ++i) net.add_vertex(name('v', i));
    const std::size_t edges = closed ? spec.n : spec.n - 1;
    for (std::size_t i = 0; i < edges; ++i) {
        net.add_edge(name('e', i), i, (i + 1) % spec.n, edge_weight(spec, rng, i));
    }
    return net;
}

inline Network star(const GeneratorSpec& spec) {
    if (spec.n < 1) throw Error(ErrorKind::InvalidArgument, "star needs at least one leg");
    std::mt19937_64 rng(spec.seed);
    Network net;
    net.add_vertex("c");
    for (std::size_t i = 0; i < spec.n; ++i) {
        const VertexIndex leaf = net.add_vertex(name('v', i));
        net.add_edge(name('e', i), 0, leaf, edge_weight(spec, rng, i));
    }
    return net;
}

inline Network random_connected(const GeneratorSpec& spec) {
    const std::size_t n = spec.n;
    if (n < 2) throw Error(ErrorKind::InvalidArgument, "random network needs n >= 2");
    if (spec.m < n - 1 || spec.m > n * (n - 1) / 2) {
        throw Error(ErrorKind::InvalidArgument, "random network needs n-1 <= m <= n(n-1)/2");
    }
    if (!spec.geometric && !(0.0 < spec.weight_lo && spec.weight_lo <= spec.weight_hi)) {
        throw Error(ErrorKind::InvalidArgument, "weight range must be positive and ordered");
    }
    std::mt19937_64 rng(spec.seed);
    Network net;
    if (spec.geometric) {
        constexpr double kSide = 10.0;
        constexpr double kSeparation = 0.5;
        std::vector<Point2> placed;
        while (placed.size() < n) {
            const Point2 q{kSide * unit_double(rng), kSide * unit_double(rng)};
            bool ok = true;
            for (const auto& o : placed) ok = ok && euclidean_distance(q, o) >= kSeparation;
            if (ok) placed.push_back(q);
        }
        for (std::size_t i = 0; i < n; ++i) net.add_vertex(name('v', i), placed[i]);
    } else {
        for (std::size_t i = 0; i < n; ++i) net.add_vertex(name('v', i));
    }

    std::set<std::pair<std::size_t, std::size_t>> used;
    auto add = [&](std::size_t a, std::size_t b) {
        const auto key = std::minmax(a, b);
        if (a == b || used.count(key) != 0) return false;
        used.insert(key);
        const std::string id = name('e', net.edge_count());
        if (spec.geometric) {
            net.add_edge(id, a, b);
        } else {
            net.add_edge(id, a, b, spec.weight_lo + unit_double(rng) * (spec.weight_hi - spec.weight_lo));
        }
        return true;
    };
    // Random spanning tree: every vertex attaches to an earlier one.
    for (std::size_t i = 1; i < n; ++i) add(i, uniform_index(rng, i));
    while (net.edge_count() < spec.m) add(uniform_index(rng, n), uniform_index(rng, n));
    return net;
}

/// Added edges v_i u_j in generation order: the diagonal first, then the
/// remaining pairs row by row.
inline std::vector<std::pair<std::size_t, std::size_t>> added_pairs(std::size_t k, std::size_t l) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 1; i <= k; ++i) pairs.emplace_back(i, i);
    for (std::size_t i = 1; i <= k; ++i) {
        for (std::size_t j = 1; j <= k; ++j) {
            if (i != j) pairs.emplace_back(i, j);
        }
    }
    pairs.resize(l);
    return pairs;
}

}  // namespace detail

/// Base tree G_{k,0} plus l edges v_i u_j of weight k-1.
///
/// Base layout (4k vertices, 4k-1 edges): paths u_1..u_k and v_1..v_k with
/// edges of weight eps, a spine u_1 - y_1 - ... - y_k - v_1 of k+1 equal edges
/// of total length L = (k-1)(1-eps)/2, and pendant edges y_r - x_r of weight
/// h = (k+3+2eps-L)/2. Then d(u_j,x_r) + d(v_i,x_r) = k+3+eps(i+j) for every r.
inline Network lower_bound_network(std::size_t k, std::size_t l, double epsilon) {
    if (k < 2) throw Error(ErrorKind::InvalidArgument, "G_{k,l} needs k >= 2");
    if (l < 1 || l > k * k) throw Error(ErrorKind::InvalidArgument, "G_{k,l} needs 0 < l <= k^2");
    const double kk = static_cast<double>(k);
    if (epsilon == 0.0) epsilon = 1.0 / (2.0 * kk);
    if (!(epsilon > 0.0 && epsilon < 1.0 / (kk - 1.0))) {
        throw Error(ErrorKind::InvalidArgument, "G_{k,l} needs 0 < epsilon < 1/(k-1)");
    }
    const double spine = (kk - 1.0) * (1.0 - epsilon) / 2.0;
    const double pendant = (kk + 3.0 + 2.0 * epsilon - spine) / 2.0;

    using detail::name;
    Network net;
    for (char c : {'u', 'v', 'x', 'y'}) {
        for (std::size_t i = 1; i <= k; ++i) net.add_vertex(name(c, i));
    }
    for (std::size_t i = 1; i < k; ++i) {
        net.add_edge(name('u', i) + name('u', i + 1), name('u', i), name('u', i + 1), epsilon);
        net.add_edge(name('v', i) + name('v', i + 1), name('v', i), name('v', i + 1), epsilon);
    }
    const double step = spine / (kk + 1.0);
    net.add_edge("u1y1", "u1", "y1", step);
    for (std::size_t r = 1; r < k; ++r) net.add_edge(name('y', r) + name('y', r + 1), name('y', r), name('y', r + 1), step);
    net.add_edge(name('y', k) + "v1", name('y', k), "v1", step);
    for (std::size_t r = 1; r <= k; ++r) net.add_edge(name('y', r) + name('x', r), name('y', r), name('x', r), pendant);

    std::vector<EdgeIndex> added;
    for (const auto& [i, j] : detail::added_pairs(k, l)) {
        added.push_back(net.add_edge(name('v', i) + name('u', j), name('v', i), name('u', j), kk - 1.0));
    }

    // Self-verification of the farthest-distance identities and of the
    // pendant vertices being the only eccentric points from added edges.
    const DistanceMatrix d = all_pairs_distances(net);
    auto fail = [](const std::string& what) { throw Error(ErrorKind::SelfVerification, what); };
    for (EdgeIndex e : added) {
        const Edge& edge = net.edge(e);
        const std::size_t i = edge.u - k + 1;  // v_i
        const std::size_t j = edge.v + 1;      // u_j
        const double expect = kk + 1.0 + epsilon * static_cast<double>(i + j) / 2.0;
        for (std::size_t r = 1; r <= k; ++r) {
            const VertexIndex x = net.vertex_index(name('x', r));
            const double a = d(x, edge.v);
            const double b = d(x, edge.u);
            if (std::abs(a - b) > edge.weight) fail("farthest point from " + name('x', r) + " is not interior to " + edge.id);
            const double got = (a + b + edge.weight) / 2.0;
            if (std::abs(got - expect) > 1e-9 * expect) fail("distance identity broken on " + edge.id);
        }
        constexpr int kSamples = 64;
        for (int s = 0; s <= kSamples; ++s) {
            const NetworkPoint p{e, static_cast<double>(s) / kSamples};
            const auto w = oracle::exact_eccentricity(net, d, p);
            double pendant_max = 0.0;
            for (std::size_t r = 1; r <= k; ++r) {
                const VertexIndex x = net.vertex_index(name('x', r));
                pendant_max = std::max(pendant_max, distance_to_vertex(net, d, p, x));
            }
            if (std::abs(w.ecc - pendant_max) > 1e-9 * w.ecc) fail("eccentricity on " + edge.id + " not set by x vertices");
            for (EdgeIndex st : w.argmax) {
                const Edge& f = net.edge(st);
                if (f.v < 2 * k || f.v >= 3 * k) fail("eccentric point off the pendant edges from " + edge.id);
            }
        }
    }
    return net;
}

inline Network generate(const GeneratorSpec& spec) {
    switch (spec.family) {
        case Family::Cycle: return detail::ring(spec, true);
        case Family::Path: return detail::ring(spec, false);
        case Family::Star: return detail::star(spec);
        case Family::RandomConnected: return detail::random_connected(spec);
        case Family::LowerBound: return lower_bound_network(spec.k, spec.l, spec.epsilon);
    }
    throw Error(ErrorKind::InvalidArgument, "unknown family");
}

/// Sub-edge count the lower-bound family is guaranteed to reach.
inline std::size_t lower_bound_subedges(std::size_t k, std::size_t l) { return 4 * k - 1 + l * (2 * k - 2); }

}  // namespace farnet
