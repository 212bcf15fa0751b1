#pragma once

// Property checks of the diagram and query code against the brute-force
// oracles, one network at a time.

#include <farnet/diagrams.hpp>
#include <farnet/distance.hpp>
#include <farnet/envelope.hpp>
#include <farnet/far_query.hpp>
#include <farnet/feedlink.hpp>
#include <farnet/generators.hpp>
#include <farnet/network.hpp>
#include <farnet/oracle.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace farnet::verify {

struct CheckResult {
    std::string name;
    bool passed = true;
    std::size_t checked = 0;
    std::size_t failures = 0;
    /// Largest observed error for numeric checks.
    double worst = 0.0;
    std::string first_failure;

    CheckResult() = default;
    explicit CheckResult(std::string n) : name(std::move(n)) {}

    void record(bool ok, const std::string& what) {
        ++checked;
        if (ok) return;
        ++failures;
        passed = false;
        if (first_failure.empty()) first_failure = what;
    }
    void observe(double err) { worst = std::max(worst, err); }
    void merge(const CheckResult& o) {
        passed = passed && o.passed;
        checked += o.checked;
        failures += o.failures;
        worst = std::max(worst, o.worst);
        if (first_failure.empty()) first_failure = o.first_failure;
    }
};

struct Options {
    std::size_t ecc_points = 200;
    std::size_t rfar_pairs = 20;
    std::size_t rfar_pieces = 1000;
    std::size_t farthest_points = 100;
    std::size_t interval_samples = 200;
    std::size_t feed_sites = 50;
    std::size_t feed_anchors = 1000;
    std::size_t metric_samples = 10000;
    std::uint64_t seed = 1;
};

/// Random point: a network vertex one time in ten, else uniform on a uniform edge.
inline NetworkPoint random_point(const Network& net, std::mt19937_64& rng) {
    const EdgeIndex e = detail::uniform_index(rng, net.edge_count());
    const double coin = detail::unit_double(rng);
    if (coin < 0.05) return {e, 0.0};
    if (coin < 0.10) return {e, 1.0};
    return {e, detail::unit_double(rng)};
}

inline std::string describe(const Network& net, const NetworkPoint& p) {
    std::ostringstream os;
    os.precision(17);
    os << net.edge(p.edge).id << '@' << p.lambda;
    return os.str();
}

/// Everything built once per network.
struct Subject {
    Network net;
    DistanceMatrix d;
    EccentricityDiagram ed;
    FarthestPointDiagram fd;
    QueryStructure qs;

    explicit Subject(Network n)
        : net(std::move(n)),
          d(all_pairs_distances(net)),
          ed(build_eccentricity_diagram(net, d)),
          fd(build_farthest_point_diagram(net, d, ed)),
          qs(net, d) {}
};

inline CheckResult check_distances(const Subject& s) {
    CheckResult r{"distances"};
    const DistanceMatrix fw = oracle::floyd_warshall(s.net);
    for (VertexIndex a = 0; a < s.net.vertex_count(); ++a) {
        for (VertexIndex b = 0; b < s.net.vertex_count(); ++b) {
            const double err = std::abs(s.d(a, b) - fw(a, b));
            r.observe(err);
            r.record(err <= 1e-12 * std::max(1.0, fw(a, b)) && s.d(a, b) == s.d(b, a),
                     "d(" + s.net.vertex(a).id + "," + s.net.vertex(b).id + ")");
        }
    }
    return r;
}

inline CheckResult check_eccentricity(const Subject& s, const Options& o) {
    CheckResult r{"eccentricity"};
    std::mt19937_64 rng(o.seed);
    for (std::size_t i = 0; i < o.ecc_points; ++i) {
        const NetworkPoint p = random_point(s.net, rng);
        const double exact = oracle::exact_eccentricity(s.net, s.d, p).ecc;
        const double from_ed = eccentricity_at(s.ed, p);
        const double from_tree = s.qs.eccentricity(p);
        const double err = std::max(std::abs(from_ed - exact), std::abs(from_tree - exact)) / exact;
        r.observe(err);
        r.record(err <= kRelTol, "ecc at " + describe(s.net, p));
    }
    return r;
}

/// Envelope piece count per edge against 4k + 1, k the number of distinct
/// contributing edges.
inline CheckResult check_envelope_bound(const Subject& s) {
    CheckResult r{"envelope-size"};
    for (EdgeIndex e = 0; e < s.net.edge_count(); ++e) {
        const auto fs = phi_functions(s.net, s.d, e);
        const EnvelopeResult env = upper_envelope(fs);
        const std::size_t pieces = env.envelope.size();
        const std::size_t bound = 4 * env.distinct_contributors() + 1;
        r.observe(static_cast<double>(pieces) / static_cast<double>(bound));
        r.record(pieces <= bound && s.ed.edges[e].subedge_count() <= pieces, "edge " + s.net.edge(e).id);
    }
    return r;
}

inline CheckResult check_fd_contributors(const Subject& s) {
    CheckResult r{"fd-contributors"};
    for (EdgeIndex e = 0; e < s.fd.edges.size(); ++e) {
        const auto& ef = s.fd.edges[e];
        for (std::size_t i = 0; i < ef.cell_count(); ++i) {
            const NetworkPoint mid{e, (ef.lambdas[i] + ef.lambdas[i + 1]) / 2.0};
            const auto w = oracle::exact_eccentricity(s.net, s.d, mid);
            r.record(w.argmax == ef.cell_contributors[i], "cell at " + describe(s.net, mid));
        }
    }
    return r;
}

/// R-far intervals against the subdivided-network oracle, allowing one sample
/// of slack at interval ends, and the distance contract at every endpoint.
inline CheckResult check_r_far(const Subject& s, const Options& o) {
    CheckResult r{"r-far"};
    std::mt19937_64 rng(o.seed ^ 0x5eed);
    const double step = 1.0 / static_cast<double>(o.rfar_pieces);
    for (std::size_t t = 0; t < o.rfar_pairs; ++t) {
        const NetworkPoint p = random_point(s.net, rng);
        const double ecc = oracle::exact_eccentricity(s.net, s.d, p).ecc;
        const double radius = std::max(1e-3, ecc * (0.05 + 0.95 * detail::unit_double(rng)));
        const auto intervals = s.qs.r_far(p, radius);
        const auto mask = oracle::sampled_far_oracle(s.net, p, radius, o.rfar_pieces);
        for (EdgeIndex e = 0; e < s.net.edge_count(); ++e) {
            for (std::size_t i = 0; i <= o.rfar_pieces; ++i) {
                const double lambda = static_cast<double>(i) * step;
                bool inside = false, near_end = false;
                for (const auto& iv : intervals) {
                    if (iv.edge != e) continue;
                    inside = inside || (iv.lo - 1e-12 <= lambda && lambda <= iv.hi + 1e-12);
                    near_end = near_end || std::abs(lambda - iv.lo) <= step * 1.000001 ||
                               std::abs(lambda - iv.hi) <= step * 1.000001;
                }
                r.record(inside == mask[e][i] || near_end,
                         "R-far sample " + describe(s.net, {e, lambda}) + " from " + describe(s.net, p));
            }
        }
        for (const auto& iv : intervals) {
            for (double lam : {iv.lo, iv.hi}) {
                const double dist = oracle::brute_point_distance(s.net, s.d, p, {iv.edge, lam});
                r.observe(std::max(0.0, radius - dist) / radius);
                r.record(dist >= radius - 1e-9 * radius, "endpoint " + describe(s.net, {iv.edge, lam}));
            }
        }
    }
    return r;
}

namespace sets {

inline std::vector<NetworkPoint> distinct_points(const Network& net, const std::vector<FarPoint>& pts) {
    std::vector<NetworkPoint> out;
    for (const auto& fp : pts) {
        bool seen = false;
        for (const auto& q : out) seen = seen || same_point(net, q, fp.point);
        if (!seen) out.push_back(fp.point);
    }
    return out;
}

inline bool same_point_sets(const Network& net, const std::vector<NetworkPoint>& a,
                            const std::vector<NetworkPoint>& b) {
    auto covered = [&](const std::vector<NetworkPoint>& x, const std::vector<NetworkPoint>& y) {
        for (const auto& p : x) {
            bool hit = false;
            for (const auto& q : y) hit = hit || same_point(net, p, q);
            if (!hit) return false;
        }
        return true;
    };
    return covered(a, b) && covered(b, a);
}

/// Sorted edges of the reported farthest points.
inline std::vector<EdgeIndex> point_edges(const std::vector<FarPoint>& pts) {
    std::vector<EdgeIndex> out;
    for (const auto& fp : pts) out.push_back(fp.point.edge);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace sets

/// Farthest-point sets from the trees and from FD agree with each other and
/// with the oracle argmax; then, for each farthest point g found, the points
/// of every edge that have g as a farthest point form one interval.
inline CheckResult check_farthest_sets(const Subject& s, const Options& o) {
    CheckResult r{"farthest-sets"};
    CheckResult interval{"farthest-interval"};
    std::mt19937_64 rng(o.seed ^ 0xfa57);

    // Eccentricity at every interval-check sample, computed once.
    const std::size_t n = o.interval_samples;
    std::vector<std::vector<double>> ecc_at(s.net.edge_count(), std::vector<double>(n + 1));
    for (EdgeIndex e = 0; e < s.net.edge_count(); ++e) {
        for (std::size_t i = 0; i <= n; ++i) {
            ecc_at[e][i] = oracle::exact_eccentricity(s.net, s.d, {e, double(i) / double(n)}).ecc;
        }
    }

    for (std::size_t t = 0; t < o.farthest_points; ++t) {
        const NetworkPoint p = random_point(s.net, rng);
        const auto from_tree = s.qs.farthest_set(p);
        const auto from_fd = farthest_point_set(s.net, s.d, s.fd, p);
        const auto w = oracle::exact_eccentricity(s.net, s.d, p);
        const auto tree_pts = sets::distinct_points(s.net, from_tree);
        const auto fd_pts = sets::distinct_points(s.net, from_fd);
        const std::string where = " at " + describe(s.net, p);
        r.record(sets::same_point_sets(s.net, tree_pts, fd_pts), "tree vs FD" + where);
        r.record(sets::point_edges(from_tree) == w.argmax, "tree vs oracle argmax" + where);
        r.record(sets::point_edges(from_fd) == w.argmax, "FD vs oracle argmax" + where);
        for (const auto& fp : from_tree) {
            const double err = std::abs(oracle::brute_point_distance(s.net, s.d, p, fp.point) - w.ecc);
            r.observe(err / w.ecc);
            r.record(err <= tolerance_for(w.ecc), "farthest distance" + where);
        }

        for (const auto& g : tree_pts) {
            for (EdgeIndex e = 0; e < s.net.edge_count(); ++e) {
                int runs = 0;
                bool prev = false;
                for (std::size_t i = 0; i <= n; ++i) {
                    const NetworkPoint q{e, double(i) / double(n)};
                    const double e_q = ecc_at[e][i];
                    const bool far = oracle::brute_point_distance(s.net, s.d, q, g) >= e_q - 1e-9 * e_q;
                    if (far && !prev) ++runs;
                    prev = far;
                }
                interval.record(runs <= 1, "region of " + describe(s.net, g) + " on " + s.net.edge(e).id);
            }
        }
    }
    r.merge(interval);
    return r;
}

/// Feed-link costs bracketed by the anchor-grid oracle; anchors on candidates.
inline CheckResult check_feed_link(const Subject& s, const Options& o) {
    CheckResult r{"feed-link"};
    if (!s.net.is_geometric()) return r;
    const FeedLinkSolver solver(s.net, s.ed);
    const oracle::FeedLinkGridOracle grid(s.net, s.d, o.feed_anchors);
    double lo_x = 1e300, hi_x = -1e300, lo_y = 1e300, hi_y = -1e300;
    for (const auto& v : s.net.vertices()) {
        lo_x = std::min(lo_x, v.position->x);
        hi_x = std::max(hi_x, v.position->x);
        lo_y = std::min(lo_y, v.position->y);
        hi_y = std::max(hi_y, v.position->y);
    }
    const double pad = 2.0;
    const double slack = s.net.max_weight() / static_cast<double>(o.feed_anchors) + 1e-6;
    std::mt19937_64 rng(o.seed ^ 0xfeed);
    for (std::size_t t = 0; t < o.feed_sites; ++t) {
        const Point2 site{lo_x - pad + (hi_x - lo_x + 2 * pad) * detail::unit_double(rng),
                          lo_y - pad + (hi_y - lo_y + 2 * pad) * detail::unit_double(rng)};
        const FeedLink link = solver.solve(site);
        const auto best = grid.solve(site);
        std::ostringstream where;
        where.precision(17);
        where << " site (" << site.x << ", " << site.y << ")";
        r.observe(std::max(0.0, best.cost - link.cost));
        r.record(link.cost <= best.cost + 1e-6 && link.cost >= best.cost - slack, "cost bracket" + where.str());

        const auto& c = solver.candidates()[link.candidate];
        const bool on_candidate =
            c.segment ? (link.anchor.edge == c.edge && c.lo - 1e-12 <= link.anchor.lambda &&
                         link.anchor.lambda <= c.hi + 1e-12)
                      : same_point(s.net, link.anchor, {c.edge, c.lo});
        const double anchor_ecc = oracle::exact_eccentricity(s.net, s.d, link.anchor).ecc;
        const double cost_err = std::abs(link.length() + anchor_ecc - link.cost);
        r.record(on_candidate && cost_err <= 1e-9 * std::max(1.0, link.cost), "anchor on candidate" + where.str());
    }
    return r;
}

/// Metric axioms on sampled pairs and triples.
inline CheckResult check_metric(const Subject& s, const Options& o) {
    CheckResult r{"metric"};
    std::mt19937_64 rng(o.seed ^ 0x3e7);
    const double scale = std::max(1.0, s.net.total_weight());
    for (std::size_t t = 0; t < o.metric_samples; ++t) {
        const NetworkPoint p = random_point(s.net, rng);
        const NetworkPoint q = random_point(s.net, rng);
        const NetworkPoint z = random_point(s.net, rng);
        const double pq = point_distance(s.net, s.d, p, q);
        const double qp = point_distance(s.net, s.d, q, p);
        const double pz = point_distance(s.net, s.d, p, z);
        const double qz = point_distance(s.net, s.d, q, z);
        const double excess = pz - (pq + qz);
        r.observe(std::max(0.0, excess) / scale);
        const bool ok = pq == qp && pq >= 0.0 && point_distance(s.net, s.d, p, p) == 0.0 &&
                        (pq > 0.0 || same_point(s.net, p, q, 1e-12)) && excess <= 1e-9 * scale;
        r.record(ok, "points " + describe(s.net, p) + ", " + describe(s.net, q) + ", " + describe(s.net, z));
    }
    return r;
}

/// Cycle-type check: constant sub-edges in ED are exactly the finiteness witnesses.
inline CheckResult check_finiteness(const Subject& s) {
    CheckResult r{"finiteness"};
    const auto report = is_finite_voronoi_link_diagram(s.ed);
    r.record(report.finite == report.witnesses.empty(), "witness list");
    for (const auto& w : report.witnesses) {
        // Along a witness the eccentricity is constant and the farthest points move.
        const NetworkPoint a{w.edge, w.lo + (w.hi - w.lo) / 3.0};
        const NetworkPoint b{w.edge, w.lo + 2.0 * (w.hi - w.lo) / 3.0};
        const double ea = oracle::exact_eccentricity(s.net, s.d, a).ecc;
        const double eb = oracle::exact_eccentricity(s.net, s.d, b).ecc;
        const auto fa = sets::distinct_points(s.net, s.qs.farthest_set(a));
        const auto fb = sets::distinct_points(s.net, s.qs.farthest_set(b));
        r.record(std::abs(ea - eb) <= tolerance_for(ea) && !sets::same_point_sets(s.net, fa, fb),
                 "witness " + s.net.edge(w.edge).id);
    }
    return r;
}

inline std::vector<CheckResult> run_all(const Subject& s, const Options& o) {
    return {check_distances(s),      check_eccentricity(s, o), check_envelope_bound(s), check_fd_contributors(s),
            check_r_far(s, o),       check_farthest_sets(s, o), check_feed_link(s, o),  check_metric(s, o),
            check_finiteness(s)};
}

}  // namespace farnet::verify
