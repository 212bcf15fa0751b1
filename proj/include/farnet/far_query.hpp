#pragma once

#include <farnet/distance.hpp>
#include <farnet/envelope.hpp>
#include <farnet/network.hpp>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

namespace farnet {

/// A piece of some phi function together with its vertical order key.
/// Pieces of one slope class never cross, so the key orders them at every
/// lambda: the value at lambda = 0 for ascending and constant pieces, the
/// value at lambda = 1 for descending ones (extended lines).
struct SlopePieceRecord {
    LinearPiece piece;
    double key = 0.0;

    double value_at(double lambda) const { return piece.value_at(lambda); }
    EdgeIndex source() const { return piece.source; }
};

/// Segment tree over the elementary intervals of one slope class, answering
/// upward vertical ray stabbing queries in O(k + log n).
class StabbingTree {
public:
    StabbingTree() = default;

    explicit StabbingTree(std::vector<SlopePieceRecord> records) : records_(std::move(records)) {
        if (records_.empty()) return;
        std::vector<double> ends;
        for (const auto& r : records_) {
            ends.push_back(r.piece.lo);
            ends.push_back(r.piece.hi);
        }
        std::sort(ends.begin(), ends.end());
        for (double x : ends) {
            if (grid_.empty() || x - grid_.back() > kSnap) grid_.push_back(x);
        }
        // Elementary intervals: 2i is the point grid[i], 2i+1 the open gap after it.
        leaves_ = 2 * grid_.size() - 1;
        nodes_.assign(4 * leaves_, {});
        for (std::uint32_t i = 0; i < records_.size(); ++i) {
            const std::size_t first = 2 * grid_index(records_[i].piece.lo);
            const std::size_t last = 2 * grid_index(records_[i].piece.hi);
            insert(1, 0, leaves_ - 1, first, last, i);
        }
        for (auto& list : nodes_) {
            std::sort(list.begin(), list.end(), [this](std::uint32_t a, std::uint32_t b) {
                if (records_[a].key != records_[b].key) return records_[a].key > records_[b].key;
                return a < b;
            });
        }
    }

    const std::vector<SlopePieceRecord>& records() const { return records_; }
    bool empty() const { return records_.empty(); }

    /// Records whose closed interval contains lambda and whose value there is >= threshold.
    std::vector<std::uint32_t> stab(double lambda, double threshold) const {
        std::vector<std::uint32_t> out;
        walk(lambda, [&](const std::vector<std::uint32_t>& list) {
            for (std::uint32_t i : list) {
                if (records_[i].value_at(lambda) < threshold) break;
                out.push_back(i);
            }
        });
        return out;
    }

    /// Largest value at lambda among covering records (heads only).
    double max_at(double lambda) const {
        double best = -std::numeric_limits<double>::infinity();
        walk(lambda, [&](const std::vector<std::uint32_t>& list) {
            if (!list.empty()) best = std::max(best, records_[list.front()].value_at(lambda));
        });
        return best;
    }

    /// Reference answer by scanning every record, with the same covering rule.
    std::vector<std::uint32_t> stab_linear(double lambda, double threshold) const {
        std::vector<std::uint32_t> out;
        const auto leaf = locate(lambda);
        if (!leaf) return out;
        for (std::uint32_t i = 0; i < records_.size(); ++i) {
            const std::size_t first = 2 * grid_index(records_[i].piece.lo);
            const std::size_t last = 2 * grid_index(records_[i].piece.hi);
            if (first <= *leaf && *leaf <= last && records_[i].value_at(lambda) >= threshold) out.push_back(i);
        }
        return out;
    }

    std::size_t stored_references() const {
        std::size_t n = 0;
        for (const auto& list : nodes_) n += list.size();
        return n;
    }

private:
    static constexpr double kSnap = kAbsTol;

    std::size_t grid_index(double x) const {
        auto it = std::lower_bound(grid_.begin(), grid_.end(), x - kSnap);
        if (it == grid_.end()) return grid_.size() - 1;
        return static_cast<std::size_t>(it - grid_.begin());
    }

    std::optional<std::size_t> locate(double lambda) const {
        if (grid_.empty()) return std::nullopt;
        if (lambda < grid_.front() - kSnap || lambda > grid_.back() + kSnap) return std::nullopt;
        auto it = std::lower_bound(grid_.begin(), grid_.end(), lambda);
        const std::size_t i = static_cast<std::size_t>(it - grid_.begin());
        if (it != grid_.end() && *it - lambda <= kSnap) return 2 * i;
        if (i > 0 && lambda - grid_[i - 1] <= kSnap) return 2 * (i - 1);
        if (i == grid_.size()) return 2 * (i - 1);
        return 2 * i - 1;
    }

    void insert(std::size_t node, std::size_t lo, std::size_t hi, std::size_t first, std::size_t last,
                std::uint32_t record) {
        if (last < lo || hi < first) return;
        if (first <= lo && hi <= last) {
            nodes_[node].push_back(record);
            return;
        }
        const std::size_t mid = (lo + hi) / 2;
        insert(2 * node, lo, mid, first, last, record);
        insert(2 * node + 1, mid + 1, hi, first, last, record);
    }

    template <typename Visit>
    void walk(double lambda, Visit&& visit) const {
        const auto leaf = locate(lambda);
        if (!leaf) return;
        std::size_t node = 1, lo = 0, hi = leaves_ - 1;
        while (true) {
            visit(nodes_[node]);
            if (lo == hi) break;
            const std::size_t mid = (lo + hi) / 2;
            if (*leaf <= mid) {
                node = 2 * node;
                hi = mid;
            } else {
                node = 2 * node + 1;
                lo = mid + 1;
            }
        }
    }

    std::vector<SlopePieceRecord> records_;
    std::vector<double> grid_;
    std::size_t leaves_ = 0;
    std::vector<std::vector<std::uint32_t>> nodes_;
};

/// Ray stabbing on one tree, returning the records themselves.
inline std::vector<SlopePieceRecord> ray_stab(const StabbingTree& tree, double lambda, double threshold) {
    std::vector<SlopePieceRecord> out;
    for (std::uint32_t i : tree.stab(lambda, threshold)) out.push_back(tree.records()[i]);
    return out;
}

struct EdgeQueryStructure {
    EdgeIndex host = 0;
    StabbingTree ascending;
    StabbingTree constant;
    StabbingTree descending;

    std::size_t piece_count() const {
        return ascending.records().size() + constant.records().size() + descending.records().size();
    }
};

inline EdgeQueryStructure build_edge_query_structure(const Network& net, const DistanceMatrix& d, EdgeIndex host) {
    std::vector<SlopePieceRecord> asc, con, des;
    for (const auto& f : phi_functions(net, d, host)) {
        for (const auto& p : f.pieces()) {
            switch (p.slope) {
                case Slope::Ascending: asc.push_back({p, p.value_at(0.0)}); break;
                case Slope::Constant: con.push_back({p, p.value_lo}); break;
                case Slope::Descending: des.push_back({p, p.value_at(1.0)}); break;
            }
        }
    }
    return EdgeQueryStructure{host, StabbingTree(std::move(asc)), StabbingTree(std::move(con)),
                              StabbingTree(std::move(des))};
}

/// A closed lambda-interval of an edge; lo == hi for a single point.
struct FarInterval {
    EdgeIndex edge = 0;
    double lo = 0.0;
    double hi = 0.0;

    bool degenerate() const { return hi - lo <= kAbsTol; }
};

/// Query structure for eccentricity, R-far and farthest-point-set queries:
/// one set of three stabbing trees per edge. Owns copies of the network and
/// its distance matrix.
class QueryStructure {
public:
    QueryStructure(Network net, DistanceMatrix d) : net_(std::move(net)), d_(std::move(d)) {
        edges_.reserve(net_.edge_count());
        for (EdgeIndex e = 0; e < net_.edge_count(); ++e) {
            edges_.push_back(build_edge_query_structure(net_, d_, e));
        }
    }

    const Network& network() const { return net_; }
    const DistanceMatrix& distances() const { return d_; }
    const EdgeQueryStructure& edge(EdgeIndex e) const { return edges_.at(e); }

    double eccentricity(const NetworkPoint& p) const {
        const auto& qs = edges_.at(p.edge);
        return std::max({qs.ascending.max_at(p.lambda), qs.constant.max_at(p.lambda),
                         qs.descending.max_at(p.lambda)});
    }

    /// Edges (other than p's own) whose farthest point from p is at least R away.
    std::vector<EdgeIndex> far_edges(const NetworkPoint& p, double threshold, bool include_own) const {
        const auto& qs = edges_.at(p.edge);
        std::vector<EdgeIndex> out;
        for (const StabbingTree* tree : {&qs.ascending, &qs.constant, &qs.descending}) {
            for (std::uint32_t i : tree->stab(p.lambda, threshold)) {
                const EdgeIndex src = tree->records()[i].source();
                if (include_own || src != p.edge) out.push_back(src);
            }
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    std::vector<FarInterval> r_far(const NetworkPoint& p, double radius) const {
        if (!(radius > 0.0)) throw Error(ErrorKind::InvalidArgument, "R must be positive");
        std::vector<FarInterval> out;
        for (EdgeIndex st : far_edges(p, radius, false)) {
            const Edge& e = net_.edge(st);
            const FarPoint fp = point_to_edge_far(net_, d_, p, st);
            const double slack = std::max(fp.distance - radius, 0.0);
            const double centre = fp.point.lambda * e.weight;
            const double lo = std::max(centre - slack, 0.0);
            const double hi = std::min(centre + slack, e.weight);
            out.push_back({st, lo / e.weight, hi / e.weight});
        }
        own_edge_far(p, radius, out);
        std::sort(out.begin(), out.end(), [](const FarInterval& a, const FarInterval& b) {
            return a.edge != b.edge ? a.edge < b.edge : a.lo < b.lo;
        });
        return out;
    }

    std::vector<FarPoint> farthest_set(const NetworkPoint& p) const {
        const double ecc = eccentricity(p);
        const double tol = tolerance_for(ecc);
        std::vector<FarPoint> out;
        for (EdgeIndex st : far_edges(p, ecc - tol, true)) {
            for (const FarPoint& fp : farthest_on_edge(net_, d_, p, st)) {
                if (fp.distance >= ecc - tol) out.push_back(fp);
            }
        }
        return out;
    }

private:
    // On p's own edge the distance to y (in weight from u) is
    // min(|y - x|, going around through the rest of the network), giving up to
    // two R-far intervals, one on each side of p.
    void own_edge_far(const NetworkPoint& p, double radius, std::vector<FarInterval>& out) const {
        const Edge& e = net_.edge(p.edge);
        const double w = e.weight;
        const double around = d_(e.u, e.v);
        const double x = p.lambda * w;
        const double left_lo = std::max(0.0, x - around - w + radius);
        const double left_hi = x - radius;
        const double right_lo = x + radius;
        const double right_hi = std::min(w, x + around + w - radius);
        const double eps = kAbsTol * std::max(1.0, w);
        if (left_hi >= left_lo - eps) {
            const double hi = std::max(left_hi, left_lo);
            out.push_back({p.edge, left_lo / w, hi / w});
        }
        if (right_hi >= right_lo - eps) {
            const double lo = std::min(right_lo, right_hi);
            out.push_back({p.edge, lo / w, right_hi / w});
        }
    }

    Network net_;
    DistanceMatrix d_;
    std::vector<EdgeQueryStructure> edges_;
};

inline QueryStructure build_query_structure(const Network& net, const DistanceMatrix& d) {
    return QueryStructure(net, d);
}

inline double query_eccentricity(const QueryStructure& qs, const NetworkPoint& p) { return qs.eccentricity(p); }

inline std::vector<FarInterval> query_r_far(const QueryStructure& qs, const NetworkPoint& p, double radius) {
    return qs.r_far(p, radius);
}

inline std::vector<FarPoint> query_farthest_set(const QueryStructure& qs, const NetworkPoint& p) {
    return qs.farthest_set(p);
}

}  // namespace farnet
