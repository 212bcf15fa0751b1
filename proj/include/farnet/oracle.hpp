#pragma once

// Brute-force reference computations. Nothing in here uses the envelope,
// diagram or query code; only the network types and the vertex distance
// matrix are shared.

#include <farnet/distance.hpp>
#include <farnet/network.hpp>
#include <farnet/tolerance.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <vector>

namespace farnet::oracle {

struct EccentricityWitness {
    double ecc = 0.0;
    /// Edges holding a farthest point, sorted.
    std::vector<EdgeIndex> argmax;
};

namespace detail {

/// Distance from p (a temporary subdivision vertex) to vertex x.
inline double to_vertex(const Network& net, const DistanceMatrix& d, const NetworkPoint& p, VertexIndex x) {
    const Edge& e = net.edge(p.edge);
    return std::min(p.lambda * e.weight + d(e.u, x), (1.0 - p.lambda) * e.weight + d(e.v, x));
}

/// Largest distance from p to a point of the edge it lies on: the larger of
/// the two peaks of the "walk forward / go around" distance on either side.
inline double own_edge_max(const Network& net, const DistanceMatrix& d, const NetworkPoint& p) {
    const Edge& e = net.edge(p.edge);
    const double w = e.weight;
    const double x = p.lambda * w;
    const double cycle = w + d(e.u, e.v);
    const double toward_v = x + cycle / 2.0 <= w ? cycle / 2.0 : std::min(w - x, x + d(e.u, e.v));
    const double toward_u = x - cycle / 2.0 >= 0.0 ? cycle / 2.0 : std::min(x, w - x + d(e.u, e.v));
    return std::max(toward_u, toward_v);
}

}  // namespace detail

/// Eccentricity of p by evaluating the farthest distance to every edge in turn.
inline EccentricityWitness exact_eccentricity(const Network& net, const DistanceMatrix& d, const NetworkPoint& p) {
    std::vector<double> per_edge(net.edge_count());
    double best = 0.0;
    for (EdgeIndex st = 0; st < net.edge_count(); ++st) {
        const Edge& e = net.edge(st);
        double far = 0.0;
        if (st == p.edge) {
            far = detail::own_edge_max(net, d, p);
        } else {
            far = (detail::to_vertex(net, d, p, e.u) + e.weight + detail::to_vertex(net, d, p, e.v)) / 2.0;
        }
        per_edge[st] = far;
        best = std::max(best, far);
    }
    EccentricityWitness w{best, {}};
    const double tol = tolerance_for(best);
    for (EdgeIndex st = 0; st < net.edge_count(); ++st) {
        if (per_edge[st] >= best - tol) w.argmax.push_back(st);
    }
    return w;
}

/// Distance between two network points: each is joined to the ends of its
/// edge, plus the direct route when both share an edge.
inline double brute_point_distance(const Network& net, const DistanceMatrix& d, const NetworkPoint& p,
                                   const NetworkPoint& q) {
    const Edge& ep = net.edge(p.edge);
    const Edge& eq = net.edge(q.edge);
    const double p_off[2] = {p.lambda * ep.weight, (1.0 - p.lambda) * ep.weight};
    const double q_off[2] = {q.lambda * eq.weight, (1.0 - q.lambda) * eq.weight};
    const VertexIndex p_end[2] = {ep.u, ep.v};
    const VertexIndex q_end[2] = {eq.u, eq.v};
    double best = std::numeric_limits<double>::infinity();
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) best = std::min(best, p_off[a] + d(p_end[a], q_end[b]) + q_off[b]);
    }
    if (p.edge == q.edge) best = std::min(best, std::abs(p.lambda - q.lambda) * ep.weight);
    return best;
}

/// The network with every edge cut into `pieces` equal-weight parts.
class SampledNetwork {
public:
    SampledNetwork(const Network& net, std::size_t pieces) : net_(&net), pieces_(pieces) {
        if (pieces < 2) throw Error(ErrorKind::InvalidArgument, "need at least 2 pieces per edge");
        const std::size_t n = net.vertex_count();
        adjacency_.resize(n + net.edge_count() * (pieces - 1));
        for (EdgeIndex e = 0; e < net.edge_count(); ++e) {
            const double step = net.edge(e).weight / static_cast<double>(pieces);
            for (std::size_t i = 0; i < pieces; ++i) link(node(e, i), node(e, i + 1), step);
        }
    }

    std::size_t pieces() const { return pieces_; }
    std::size_t node_count() const { return adjacency_.size(); }

    /// Node of sample i (0..pieces) on edge e; ends map to the edge's vertices.
    std::size_t node(EdgeIndex e, std::size_t i) const {
        const Edge& edge = net_->edge(e);
        if (i == 0) return edge.u;
        if (i == pieces_) return edge.v;
        return net_->vertex_count() + e * (pieces_ - 1) + (i - 1);
    }

    double sample_lambda(std::size_t i) const { return static_cast<double>(i) / static_cast<double>(pieces_); }

    double total_weight() const {
        double sum = 0.0;
        for (std::size_t a = 0; a < adjacency_.size(); ++a) {
            for (const auto& [b, w] : adjacency_[a]) {
                if (a < b) sum += w;
            }
        }
        return sum;
    }

    /// Distances from p to every sample, indexed [edge][sample].
    std::vector<std::vector<double>> distances_from(const NetworkPoint& p) const {
        const Edge& e = net_->edge(p.edge);
        const double pos = p.lambda * static_cast<double>(pieces_);
        const std::size_t below = std::min(static_cast<std::size_t>(pos), pieces_ - 1);
        const double frac = pos - static_cast<double>(below);
        const double step = e.weight / static_cast<double>(pieces_);

        std::vector<double> dist(adjacency_.size() + 1, std::numeric_limits<double>::infinity());
        using Item = std::pair<double, std::size_t>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
        auto relax = [&](std::size_t x, double dx) {
            if (dx < dist[x]) {
                dist[x] = dx;
                heap.emplace(dx, x);
            }
        };
        relax(node(p.edge, below), frac * step);
        relax(node(p.edge, below + 1), (1.0 - frac) * step);
        while (!heap.empty()) {
            auto [dx, x] = heap.top();
            heap.pop();
            if (dx > dist[x]) continue;
            for (const auto& [y, w] : adjacency_[x]) relax(y, dx + w);
        }
        std::vector<std::vector<double>> out(net_->edge_count());
        for (EdgeIndex s = 0; s < net_->edge_count(); ++s) {
            out[s].resize(pieces_ + 1);
            for (std::size_t i = 0; i <= pieces_; ++i) out[s][i] = dist[node(s, i)];
        }
        // Samples on p's own sub-piece are reached directly along the edge.
        out[p.edge][below] = std::min(out[p.edge][below], frac * step);
        out[p.edge][below + 1] = std::min(out[p.edge][below + 1], (1.0 - frac) * step);
        return out;
    }

private:
    void link(std::size_t a, std::size_t b, double w) {
        adjacency_[a].emplace_back(b, w);
        adjacency_[b].emplace_back(a, w);
    }

    const Network* net_;
    std::size_t pieces_;
    std::vector<std::vector<std::pair<std::size_t, double>>> adjacency_;
};

/// Per edge, which of the N+1 samples are at distance >= R from p.
inline std::vector<std::vector<bool>> sampled_far_oracle(const Network& net, const NetworkPoint& p, double radius,
                                                         std::size_t pieces) {
    const SampledNetwork sampled(net, pieces);
    const auto dist = sampled.distances_from(p);
    // Summing many short pieces drifts by a few ulps; a sample exactly at R still counts.
    const double threshold = radius - kRelTol * std::abs(radius);
    std::vector<std::vector<bool>> masks(dist.size());
    for (std::size_t e = 0; e < dist.size(); ++e) {
        masks[e].resize(dist[e].size());
        for (std::size_t i = 0; i < dist[e].size(); ++i) masks[e][i] = dist[e][i] >= threshold;
    }
    return masks;
}

/// Largest sampled distance from p (a lower bound on the eccentricity).
inline double sampled_eccentricity(const Network& net, const NetworkPoint& p, std::size_t pieces) {
    const SampledNetwork sampled(net, pieces);
    double best = 0.0;
    for (const auto& row : sampled.distances_from(p)) {
        for (double x : row) best = std::max(best, x);
    }
    return best;
}

struct GridFeedLink {
    double cost = std::numeric_limits<double>::infinity();
    NetworkPoint anchor;
    Point2 anchor_position;
};

/// Feed-link costs over `anchors` evenly spaced anchors per edge (endpoints
/// included). Anchor eccentricities are computed once and reused per site.
class FeedLinkGridOracle {
public:
    FeedLinkGridOracle(const Network& net, const DistanceMatrix& d, std::size_t anchors) {
        if (anchors < 2) throw Error(ErrorKind::InvalidArgument, "need at least 2 anchors per edge");
        if (!net.is_geometric()) throw Error(ErrorKind::NotGeometric, "grid oracle needs coordinates");
        for (EdgeIndex e = 0; e < net.edge_count(); ++e) {
            for (std::size_t i = 0; i < anchors; ++i) {
                const NetworkPoint q{e, static_cast<double>(i) / static_cast<double>(anchors - 1)};
                anchors_.push_back({q, net.position(q), exact_eccentricity(net, d, q).ecc});
            }
        }
    }

    GridFeedLink solve(Point2 p) const {
        GridFeedLink best;
        for (const auto& a : anchors_) {
            const double cost = euclidean_distance(p, a.position) + a.ecc;
            if (cost < best.cost) best = {cost, a.point, a.position};
        }
        return best;
    }

private:
    struct Anchor {
        NetworkPoint point;
        Point2 position;
        double ecc;
    };
    std::vector<Anchor> anchors_;
};

inline GridFeedLink feed_link_grid_oracle(const Network& net, const DistanceMatrix& d, Point2 p,
                                          std::size_t anchors) {
    return FeedLinkGridOracle(net, d, anchors).solve(p);
}

/// Floyd-Warshall reference for the vertex distance matrix.
inline DistanceMatrix floyd_warshall(const Network& net) {
    const std::size_t n = net.vertex_count();
    DistanceMatrix d(n);
    for (VertexIndex a = 0; a < n; ++a) d.at(a, a) = 0.0;
    for (const auto& e : net.edges()) {
        d.at(e.u, e.v) = std::min(d(e.u, e.v), e.weight);
        d.at(e.v, e.u) = std::min(d(e.v, e.u), e.weight);
    }
    for (VertexIndex k = 0; k < n; ++k) {
        for (VertexIndex i = 0; i < n; ++i) {
            for (VertexIndex j = 0; j < n; ++j) {
                if (d(i, k) + d(k, j) < d(i, j)) d.at(i, j) = d(i, k) + d(k, j);
            }
        }
    }
    return d;
}

}  // namespace farnet::oracle
