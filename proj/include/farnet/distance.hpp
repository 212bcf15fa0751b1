#pragma once

#include <farnet/network.hpp>

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>
#include <vector>

namespace farnet {

/// Vertex-to-vertex network distances, stored row-major.
class DistanceMatrix {
public:
    DistanceMatrix() = default;
    explicit DistanceMatrix(std::size_t n)
        : n_(n), d_(n * n, std::numeric_limits<double>::infinity()) {}

    std::size_t size() const { return n_; }
    double operator()(VertexIndex a, VertexIndex b) const { return d_[a * n_ + b]; }
    double& at(VertexIndex a, VertexIndex b) { return d_[a * n_ + b]; }

private:
    std::size_t n_ = 0;
    std::vector<double> d_;
};

/// Single-source shortest paths over vertices (binary-heap Dijkstra).
inline std::vector<double> shortest_paths_from(const Network& net, VertexIndex source) {
    std::vector<double> dist(net.vertex_count(), std::numeric_limits<double>::infinity());
    using Item = std::pair<double, VertexIndex>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[source] = 0.0;
    heap.emplace(0.0, source);
    while (!heap.empty()) {
        auto [d, x] = heap.top();
        heap.pop();
        if (d > dist[x]) continue;
        for (EdgeIndex ei : net.incident_edges(x)) {
            const Edge& e = net.edge(ei);
            const VertexIndex y = e.other(x);
            const double nd = d + e.weight;
            if (nd < dist[y]) {
                dist[y] = nd;
                heap.emplace(nd, y);
            }
        }
    }
    return dist;
}

/// All-pairs distances by one Dijkstra run per vertex. The result is made
/// exactly symmetric by keeping the smaller of d(a,b) and d(b,a).
inline DistanceMatrix all_pairs_distances(const Network& net) {
    const std::size_t n = net.vertex_count();
    DistanceMatrix d(n);
    for (VertexIndex s = 0; s < n; ++s) {
        const auto row = shortest_paths_from(net, s);
        for (VertexIndex t = 0; t < n; ++t) d.at(s, t) = row[t];
    }
    for (VertexIndex a = 0; a < n; ++a) {
        d.at(a, a) = 0.0;
        for (VertexIndex b = a + 1; b < n; ++b) {
            const double m = std::min(d(a, b), d(b, a));
            d.at(a, b) = m;
            d.at(b, a) = m;
        }
    }
    return d;
}

/// Distance from a point on the network to a vertex.
inline double distance_to_vertex(const Network& net, const DistanceMatrix& d, const NetworkPoint& p,
                                 VertexIndex x) {
    const Edge& e = net.edge(p.edge);
    const double to_u = p.lambda * e.weight;
    const double to_v = (1.0 - p.lambda) * e.weight;
    return std::min(to_u + d(e.u, x), to_v + d(e.v, x));
}

/// Network distance between two arbitrary points.
inline double point_distance(const Network& net, const DistanceMatrix& d, const NetworkPoint& p,
                             const NetworkPoint& q) {
    const Edge& pe = net.edge(p.edge);
    const Edge& qe = net.edge(q.edge);
    if (p.edge == q.edge) {
        const double w = pe.weight;
        const double along = std::abs(p.lambda - q.lambda) * w;
        // Around: leave through one endpoint, come back through the other.
        const double via_uv = d(pe.u, pe.v) + (p.lambda * w + (1.0 - q.lambda) * w);
        const double via_vu = d(pe.u, pe.v) + (q.lambda * w + (1.0 - p.lambda) * w);
        return std::min({along, via_uv, via_vu});
    }
    const double pa[2] = {p.lambda * pe.weight, (1.0 - p.lambda) * pe.weight};
    const VertexIndex av[2] = {pe.u, pe.v};
    const double qb[2] = {q.lambda * qe.weight, (1.0 - q.lambda) * qe.weight};
    const VertexIndex bv[2] = {qe.u, qe.v};
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            best = std::min(best, d(av[i], bv[j]) + (pa[i] + qb[j]));
        }
    }
    return best;
}

struct FarPoint {
    double distance = 0.0;
    NetworkPoint point;
};

/// Farthest point on edge `target` from x, where x is not interior to target.
inline FarPoint point_to_edge_far(const Network& net, const DistanceMatrix& d, const NetworkPoint& x,
                                  EdgeIndex target) {
    if (x.edge == target && x.lambda > 0.0 && x.lambda < 1.0) {
        throw Error(ErrorKind::Contract, "query point lies in the interior of the target edge");
    }
    const Edge& ab = net.edge(target);
    const double da = distance_to_vertex(net, d, x, ab.u);
    const double db = distance_to_vertex(net, d, x, ab.v);
    const double far = (da + ab.weight + db) / 2.0;
    const double offset = std::clamp(far - da, 0.0, ab.weight);
    return FarPoint{far, NetworkPoint{target, offset / ab.weight}};
}

/// Farthest points on a point's own edge. Returns one or two points
/// (two when both directions attain the maximum).
inline std::vector<FarPoint> same_edge_far(const Network& net, const DistanceMatrix& d,
                                           const NetworkPoint& p) {
    const Edge& e = net.edge(p.edge);
    const double w = e.weight;
    const double around = d(e.u, e.v);
    const double x = p.lambda * w;
    const double half_cycle = (w + around) / 2.0;

    // Toward v: the peak of min(y - x, x + around + w - y).
    FarPoint right;
    if (x + half_cycle <= w) {
        right = {half_cycle, NetworkPoint{p.edge, (x + half_cycle) / w}};
    } else {
        right = {std::min(w - x, x + around), NetworkPoint{p.edge, 1.0}};
    }
    FarPoint left;
    if (x - half_cycle >= 0.0) {
        left = {half_cycle, NetworkPoint{p.edge, (x - half_cycle) / w}};
    } else {
        left = {std::min(x, w - x + around), NetworkPoint{p.edge, 0.0}};
    }
    const double best = std::max(left.distance, right.distance);
    std::vector<FarPoint> out;
    const double tol = tolerance_for(best);
    if (left.distance >= best - tol) out.push_back(left);
    if (right.distance >= best - tol) {
        if (out.empty() || std::abs(out.front().point.lambda - right.point.lambda) > kRelTol) {
            out.push_back(right);
        }
    }
    return out;
}

/// Farthest point(s) of p on edge `target`, choosing the own-edge rule when needed.
inline std::vector<FarPoint> farthest_on_edge(const Network& net, const DistanceMatrix& d,
                                              const NetworkPoint& p, EdgeIndex target) {
    if (p.edge == target) return same_edge_far(net, d, p);
    return {point_to_edge_far(net, d, p, target)};
}

}  // namespace farnet
