#pragma once

#include <farnet/distance.hpp>
#include <farnet/envelope.hpp>
#include <farnet/network.hpp>

#include <algorithm>
#include <optional>
#include <vector>

namespace farnet {

/// Eccentricity along one edge: breakpoints 0 = lambda_0 < ... < lambda_r = 1,
/// eccentricity at each, and the slope class of every sub-edge.
struct EdgeEccentricity {
    std::vector<double> lambdas;
    std::vector<double> values;
    std::vector<Slope> slopes;
    /// Pieces of the rank-rule envelope before collinear merging.
    std::size_t envelope_pieces = 0;
    /// Number of distinct edges holding farthest points from this edge.
    std::size_t contributor_edges = 0;

    std::size_t subedge_count() const { return slopes.size(); }

    /// Index i of the sub-edge [lambda_i, lambda_{i+1}] containing lambda.
    std::size_t locate(double lambda) const {
        auto it = std::upper_bound(lambdas.begin() + 1, lambdas.end() - 1, lambda);
        return static_cast<std::size_t>(std::distance(lambdas.begin(), it) - 1);
    }
};

struct EccentricityDiagram {
    std::vector<EdgeEccentricity> edges;

    std::size_t subedge_count() const {
        std::size_t n = 0;
        for (const auto& e : edges) n += e.subedge_count();
        return n;
    }
};

namespace detail {

/// Collapses the envelope to its minimal set of linear pieces: slivers below
/// kBreakpointMerge are absorbed and equal-slope neighbours merged.
inline std::vector<LinearPiece> minimal_pieces(const std::vector<LinearPiece>& pieces) {
    std::vector<LinearPiece> merged;
    auto push = [&merged](LinearPiece p) {
        if (!merged.empty() && merged.back().slope == p.slope) {
            merged.back().hi = p.hi;
        } else {
            merged.push_back(p);
        }
    };
    for (const auto& p : pieces) push(p);

    bool changed = true;
    while (changed && merged.size() > 1) {
        changed = false;
        for (std::size_t i = 0; i < merged.size(); ++i) {
            if (merged[i].length() >= kBreakpointMerge) continue;
            if (i > 0) {
                merged[i - 1].hi = merged[i].hi;
            } else {
                merged[i + 1] = merged[i + 1].restricted(merged[i].lo, merged[i + 1].hi);
            }
            merged.erase(merged.begin() + static_cast<std::ptrdiff_t>(i));
            changed = true;
            break;
        }
        if (changed) {
            auto copy = std::move(merged);
            merged.clear();
            for (const auto& p : copy) push(p);
        }
    }
    return merged;
}

inline double max_value(const std::vector<PiecewiseLinearFunction>& fs, double lambda) {
    double best = 0.0;
    for (const auto& f : fs) best = std::max(best, f(lambda));
    return best;
}

inline EdgeEccentricity edge_eccentricity(const std::vector<PiecewiseLinearFunction>& fs) {
    const EnvelopeResult env = upper_envelope(fs);
    EdgeEccentricity out;
    out.envelope_pieces = env.envelope.size();
    out.contributor_edges = env.distinct_contributors();
    const auto pieces = minimal_pieces(env.envelope.pieces());
    for (const auto& p : pieces) {
        out.lambdas.push_back(p.lo);
        out.slopes.push_back(p.slope);
    }
    out.lambdas.front() = 0.0;
    out.lambdas.push_back(1.0);
    for (double lambda : out.lambdas) out.values.push_back(max_value(fs, lambda));
    return out;
}

}  // namespace detail

inline EccentricityDiagram build_eccentricity_diagram(const Network& net, const DistanceMatrix& d) {
    EccentricityDiagram ed;
    ed.edges.reserve(net.edge_count());
    for (EdgeIndex e = 0; e < net.edge_count(); ++e) {
        ed.edges.push_back(detail::edge_eccentricity(phi_functions(net, d, e)));
    }
    return ed;
}

inline EccentricityDiagram build_eccentricity_diagram(const Network& net) {
    require_valid(net);
    return build_eccentricity_diagram(net, all_pairs_distances(net));
}

/// Eccentricity of p by binary search and linear interpolation.
inline double eccentricity_at(const EccentricityDiagram& ed, const NetworkPoint& p) {
    const EdgeEccentricity& e = ed.edges.at(p.edge);
    const std::size_t i = e.locate(p.lambda);
    const double a = e.lambdas[i];
    const double b = e.lambdas[i + 1];
    const double mu = (p.lambda - a) / (b - a);
    return (1.0 - mu) * e.values[i] + mu * e.values[i + 1];
}

// --- farthest-point diagram --------------------------------------------------

struct EdgeFarthest {
    std::vector<double> lambdas;
    std::vector<double> values;
    /// Edges holding farthest points for interior points of each cell.
    std::vector<std::vector<EdgeIndex>> cell_contributors;
    /// Edges holding farthest points at each breakpoint itself.
    std::vector<std::vector<EdgeIndex>> vertex_contributors;

    std::size_t cell_count() const { return cell_contributors.size(); }
};

struct FarthestPointDiagram {
    std::vector<EdgeFarthest> edges;

    std::size_t cell_count() const {
        std::size_t n = 0;
        for (const auto& e : edges) n += e.cell_count();
        return n;
    }
};

namespace detail {

inline EdgeFarthest refine_edge(const EdgeEccentricity& ecc, const std::vector<PiecewiseLinearFunction>& fs) {
    // Contributor sets only change at breakpoints of the input functions, so
    // those are the only candidate split points inside an ED sub-edge.
    std::vector<double> candidates;
    for (const auto& f : fs) {
        for (const auto& p : f.pieces()) {
            candidates.push_back(p.lo);
            candidates.push_back(p.hi);
        }
    }
    std::sort(candidates.begin(), candidates.end());

    EdgeFarthest out;
    const std::span<const PiecewiseLinearFunction> all(fs);
    out.lambdas.push_back(0.0);
    out.vertex_contributors.push_back(argmax_sources(all, 0.0));
    for (std::size_t i = 0; i + 1 < ecc.lambdas.size(); ++i) {
        const double a = ecc.lambdas[i];
        const double b = ecc.lambdas[i + 1];
        std::vector<double> pts{a};
        for (double c : candidates) {
            if (c > a + kBreakpointMerge && c < b - kBreakpointMerge && c - pts.back() >= kBreakpointMerge) {
                pts.push_back(c);
            }
        }
        pts.push_back(b);

        std::vector<std::vector<EdgeIndex>> cells;
        for (std::size_t j = 0; j + 1 < pts.size(); ++j) {
            cells.push_back(argmax_sources(all, 0.5 * (pts[j] + pts[j + 1])));
        }
        std::vector<EdgeIndex> current = cells.front();
        for (std::size_t j = 1; j < cells.size(); ++j) {
            auto at_point = argmax_sources(all, pts[j]);
            if (cells[j] != current || at_point != current) {
                out.cell_contributors.push_back(current);
                out.lambdas.push_back(pts[j]);
                out.vertex_contributors.push_back(std::move(at_point));
                current = cells[j];
            }
        }
        out.cell_contributors.push_back(current);
        out.lambdas.push_back(b);
        out.vertex_contributors.push_back(argmax_sources(all, b));
    }
    for (double lambda : out.lambdas) out.values.push_back(max_value(fs, lambda));
    return out;
}

}  // namespace detail

/// Refines the eccentricity diagram wherever the set of edges holding
/// farthest points changes.
inline FarthestPointDiagram build_farthest_point_diagram(const Network& net, const DistanceMatrix& d,
                                                         const EccentricityDiagram& ed) {
    FarthestPointDiagram fd;
    fd.edges.reserve(net.edge_count());
    for (EdgeIndex e = 0; e < net.edge_count(); ++e) {
        fd.edges.push_back(detail::refine_edge(ed.edges.at(e), phi_functions(net, d, e)));
    }
    return fd;
}

/// Contributor edges for p: the breakpoint set when p sits on a breakpoint,
/// otherwise the set of the containing cell.
inline const std::vector<EdgeIndex>& contributors_at(const FarthestPointDiagram& fd, const NetworkPoint& p) {
    const EdgeFarthest& e = fd.edges.at(p.edge);
    auto it = std::lower_bound(e.lambdas.begin(), e.lambdas.end(), p.lambda);
    if (it != e.lambdas.end() && *it - p.lambda <= kAbsTol) {
        return e.vertex_contributors[static_cast<std::size_t>(it - e.lambdas.begin())];
    }
    if (it != e.lambdas.begin() && p.lambda - *(it - 1) <= kAbsTol) {
        return e.vertex_contributors[static_cast<std::size_t>(it - e.lambdas.begin() - 1)];
    }
    std::size_t cell = static_cast<std::size_t>(it - e.lambdas.begin());
    cell = cell == 0 ? 0 : std::min(cell - 1, e.cell_count() - 1);
    return e.cell_contributors[cell];
}

/// Farthest points of p, one (or two on p's own edge) per contributing edge.
inline std::vector<FarPoint> farthest_point_set(const Network& net, const DistanceMatrix& d,
                                                const FarthestPointDiagram& fd, const NetworkPoint& p) {
    std::vector<FarPoint> found;
    double best = 0.0;
    for (EdgeIndex st : contributors_at(fd, p)) {
        for (const FarPoint& fp : farthest_on_edge(net, d, p, st)) {
            best = std::max(best, fp.distance);
            found.push_back(fp);
        }
    }
    const double tol = tolerance_for(best);
    std::erase_if(found, [&](const FarPoint& fp) { return fp.distance < best - tol; });
    return found;
}

// --- finiteness and local minima ---------------------------------------------

struct SubEdge {
    EdgeIndex edge = 0;
    double lo = 0.0;
    double hi = 0.0;
    double ecc = 0.0;
};

struct FinitenessReport {
    bool finite = true;
    std::vector<SubEdge> witnesses;
};

/// The farthest-point Voronoi link diagram is finite exactly when no sub-edge
/// of the eccentricity diagram has constant eccentricity.
inline FinitenessReport is_finite_voronoi_link_diagram(const EccentricityDiagram& ed) {
    FinitenessReport report;
    for (EdgeIndex e = 0; e < ed.edges.size(); ++e) {
        const auto& ee = ed.edges[e];
        for (std::size_t i = 0; i < ee.subedge_count(); ++i) {
            if (ee.slopes[i] == Slope::Constant) {
                report.witnesses.push_back(SubEdge{e, ee.lambdas[i], ee.lambdas[i + 1], ee.values[i]});
            }
        }
    }
    report.finite = report.witnesses.empty();
    return report;
}

struct LocalMinimum {
    enum class Kind { Point, SubEdge };
    Kind kind = Kind::Point;
    EdgeIndex edge = 0;
    double lo = 0.0;
    double hi = 0.0;
    double ecc = 0.0;
    /// Set when the point candidate is a vertex of the network.
    std::optional<VertexIndex> vertex;
};

/// Candidates for locally minimal eccentricity: every constant sub-edge and
/// every diagram vertex whose neighbouring sub-edges all rise away from it.
/// A plateau with a downhill exit still counts; its interior points are
/// (non-strict) local minima and can carry the best feed-link anchor.
inline std::vector<LocalMinimum> local_minima(const Network& net, const EccentricityDiagram& ed) {
    std::vector<LocalMinimum> out;
    for (EdgeIndex e = 0; e < ed.edges.size(); ++e) {
        const auto& ee = ed.edges[e];
        for (std::size_t i = 0; i < ee.subedge_count(); ++i) {
            if (ee.slopes[i] == Slope::Constant) {
                out.push_back({LocalMinimum::Kind::SubEdge, e, ee.lambdas[i], ee.lambdas[i + 1], ee.values[i], {}});
            }
        }
        for (std::size_t i = 1; i < ee.subedge_count(); ++i) {
            if (ee.slopes[i - 1] == Slope::Descending && ee.slopes[i] == Slope::Ascending) {
                out.push_back({LocalMinimum::Kind::Point, e, ee.lambdas[i], ee.lambdas[i], ee.values[i], {}});
            }
        }
    }
    for (VertexIndex x = 0; x < net.vertex_count(); ++x) {
        const auto& inc = net.incident_edges(x);
        if (inc.empty()) continue;
        bool rising = true;
        for (EdgeIndex e : inc) {
            const auto& ee = ed.edges.at(e);
            const bool at_u = net.edge(e).u == x;
            const Slope s = at_u ? ee.slopes.front() : ee.slopes.back();
            if (s != (at_u ? Slope::Ascending : Slope::Descending)) {
                rising = false;
                break;
            }
        }
        if (!rising) continue;
        const NetworkPoint home = net.vertex_point(x);
        const auto& ee = ed.edges[home.edge];
        const double ecc = home.lambda == 0.0 ? ee.values.front() : ee.values.back();
        out.push_back({LocalMinimum::Kind::Point, home.edge, home.lambda, home.lambda, ecc, x});
    }
    return out;
}

}  // namespace farnet
