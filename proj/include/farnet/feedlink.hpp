#pragma once

#include <farnet/diagrams.hpp>
#include <farnet/network.hpp>

#include <algorithm>
#include <span>
#include <vector>

namespace farnet {

/// A locally minimal piece of the eccentricity: a single point or a segment
/// of constant eccentricity, with its plane geometry.
struct FeedLinkCandidate {
    bool segment = false;
    Point2 a;
    Point2 b;  // equals a for point candidates
    double ecc = 0.0;
    EdgeIndex edge = 0;
    double lo = 0.0;
    double hi = 0.0;
};

struct WeightedDistance {
    double cost = 0.0;
    Point2 closest;
    /// Parameter of the closest point along a -> b.
    double t = 0.0;
};

/// Euclidean distance from p to the candidate plus the candidate's eccentricity.
inline WeightedDistance weighted_candidate_distance(Point2 p, const FeedLinkCandidate& c) {
    const double dx = c.b.x - c.a.x;
    const double dy = c.b.y - c.a.y;
    const double len2 = dx * dx + dy * dy;
    double t = 0.0;
    if (c.segment && len2 > 0.0) {
        t = std::clamp(((p.x - c.a.x) * dx + (p.y - c.a.y) * dy) / len2, 0.0, 1.0);
    }
    const Point2 q{c.a.x + t * dx, c.a.y + t * dy};
    return WeightedDistance{euclidean_distance(p, q) + c.ecc, q, t};
}

inline std::vector<FeedLinkCandidate> feed_link_candidates(const Network& net,
                                                           std::span<const LocalMinimum> minima) {
    if (!net.is_geometric()) throw Error(ErrorKind::NotGeometric, "feed-links need vertex coordinates");
    std::vector<FeedLinkCandidate> out;
    out.reserve(minima.size());
    for (const auto& m : minima) {
        FeedLinkCandidate c;
        c.segment = m.kind == LocalMinimum::Kind::SubEdge;
        c.edge = m.edge;
        c.lo = m.lo;
        c.hi = m.hi;
        c.ecc = m.ecc;
        c.a = net.position(NetworkPoint{m.edge, m.lo});
        c.b = net.position(NetworkPoint{m.edge, m.hi});
        out.push_back(c);
    }
    return out;
}

struct FeedLink {
    NetworkPoint anchor;
    Point2 anchor_position;
    Point2 site;
    double cost = 0.0;
    std::size_t candidate = 0;

    double length() const { return euclidean_distance(site, anchor_position); }
};

/// Optimal minimum-eccentricity feed-link from p by scanning all candidates.
/// Ties keep the earlier candidate.
inline FeedLink solve_feed_link(const Network& net, std::span<const FeedLinkCandidate> candidates, Point2 p) {
    if (!net.is_geometric()) throw Error(ErrorKind::NotGeometric, "feed-links need vertex coordinates");
    if (candidates.empty()) throw Error(ErrorKind::InvalidArgument, "no feed-link candidates");
    FeedLink best;
    bool have = false;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const auto& c = candidates[i];
        const WeightedDistance wd = weighted_candidate_distance(p, c);
        if (have && wd.cost >= best.cost - tolerance_for(best.cost)) continue;
        best.cost = wd.cost;
        best.anchor = NetworkPoint{c.edge, c.lo + wd.t * (c.hi - c.lo)};
        best.anchor_position = wd.closest;
        best.site = p;
        best.candidate = i;
        have = true;
    }
    return best;
}

/// The O(l)-per-query structure: the candidate set of a geometric network.
class FeedLinkSolver {
public:
    FeedLinkSolver(const Network& net, const EccentricityDiagram& ed) : net_(net) {
        const auto minima = local_minima(net, ed);
        candidates_ = feed_link_candidates(net, minima);
    }

    const std::vector<FeedLinkCandidate>& candidates() const { return candidates_; }

    FeedLink solve(Point2 p) const { return solve_feed_link(net_, candidates_, p); }

private:
    Network net_;
    std::vector<FeedLinkCandidate> candidates_;
};

inline std::vector<FeedLink> batch_feed_link(const Network& net, std::span<const FeedLinkCandidate> candidates,
                                             std::span<const Point2> sites) {
    std::vector<FeedLink> out;
    out.reserve(sites.size());
    for (const Point2& p : sites) out.push_back(solve_feed_link(net, candidates, p));
    return out;
}

}  // namespace farnet
