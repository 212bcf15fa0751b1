#pragma once

#include <farnet/distance.hpp>
#include <farnet/network.hpp>
#include <farnet/tolerance.hpp>

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

namespace farnet {

enum class Slope : int { Descending = -1, Constant = 0, Ascending = 1 };

inline const char* to_string(Slope s) {
    switch (s) {
        case Slope::Descending: return "descending";
        case Slope::Constant: return "constant";
        case Slope::Ascending: return "ascending";
    }
    return "?";
}

/// One linear piece of a farthest-distance function on a host edge. The
/// rate is +w, 0 or -w per unit lambda, where w is the host edge weight.
struct LinearPiece {
    double lo = 0.0;
    double hi = 0.0;
    double value_lo = 0.0;
    double rate = 0.0;
    Slope slope = Slope::Constant;
    EdgeIndex source = 0;
    std::size_t rank = 0;

    double value_at(double lambda) const { return value_lo + rate * (lambda - lo); }
    double value_hi() const { return value_at(hi); }
    double length() const { return hi - lo; }
    bool covers(double lambda) const { return lo <= lambda && lambda <= hi; }

    /// Same piece restricted to [a, b].
    LinearPiece restricted(double a, double b) const {
        LinearPiece p = *this;
        p.lo = a;
        p.hi = b;
        p.value_lo = value_at(a);
        return p;
    }
};

/// Continuous piecewise-linear function on [0,1] over a host edge, stored as
/// ordered gap-free pieces.
class PiecewiseLinearFunction {
public:
    PiecewiseLinearFunction() = default;
    PiecewiseLinearFunction(EdgeIndex host, double host_weight, std::vector<LinearPiece> pieces)
        : host_(host), weight_(host_weight), pieces_(std::move(pieces)) {}

    EdgeIndex host() const { return host_; }
    double host_weight() const { return weight_; }
    const std::vector<LinearPiece>& pieces() const { return pieces_; }
    std::size_t size() const { return pieces_.size(); }

    /// Index of the piece containing lambda; at a shared breakpoint the right piece.
    std::size_t piece_index(double lambda) const {
        auto it = std::upper_bound(pieces_.begin(), pieces_.end(), lambda,
                                   [](double x, const LinearPiece& p) { return x < p.lo; });
        if (it == pieces_.begin()) return 0;
        return static_cast<std::size_t>(std::distance(pieces_.begin(), it) - 1);
    }

    double operator()(double lambda) const { return pieces_[piece_index(lambda)].value_at(lambda); }

private:
    EdgeIndex host_ = 0;
    double weight_ = 0.0;
    std::vector<LinearPiece> pieces_;
};

namespace detail {

/// Drops pieces shorter than kDegenerateLength and closes the gaps they leave,
/// so the pieces again cover [0,1] without holes.
inline std::vector<LinearPiece> normalize_pieces(std::vector<LinearPiece> pieces) {
    std::vector<LinearPiece> kept;
    kept.reserve(pieces.size());
    for (const auto& p : pieces) {
        if (p.length() >= kDegenerateLength) kept.push_back(p);
    }
    if (kept.empty() && !pieces.empty()) {
        // Everything collapsed; keep the longest piece.
        auto it = std::max_element(pieces.begin(), pieces.end(),
                                   [](const auto& a, const auto& b) { return a.length() < b.length(); });
        kept.push_back(*it);
    }
    for (std::size_t i = 0; i < kept.size(); ++i) {
        const double lo = i == 0 ? 0.0 : kept[i - 1].hi;
        if (kept[i].lo != lo) kept[i] = kept[i].restricted(lo, kept[i].hi);
    }
    if (!kept.empty()) kept.back().hi = 1.0;
    return kept;
}

}  // namespace detail

/// Largest distance from p(lambda) on `host` to any point of a different edge
/// `other`: ascending, constant, then descending (empty parts dropped).
inline PiecewiseLinearFunction phi_edge_pair(const Network& net, const DistanceMatrix& d, EdgeIndex host,
                                             EdgeIndex other) {
    if (host == other) {
        throw Error(ErrorKind::Contract, "phi_edge_pair needs two distinct edges");
    }
    const Edge& uv = net.edge(host);
    const Edge& st = net.edge(other);
    const double w = uv.weight;
    const VertexIndex u = uv.u, v = uv.v;

    // Farthest distances from u and from v onto st.
    const double far_u = (d(u, st.u) + d(u, st.v) + st.weight) / 2.0;
    const double far_v = (d(v, st.u) + d(v, st.v) + st.weight) / 2.0;

    // Offsets from u of the farthest points of s and t on uv.
    VertexIndex first = st.v;   // endpoint whose farthest point is closer to u
    VertexIndex second = st.u;
    double pos_first = (d(first, v) - d(first, u) + w) / 2.0;
    double pos_second = (d(second, v) - d(second, u) + w) / 2.0;
    if (pos_first > pos_second) {
        std::swap(first, second);
        std::swap(pos_first, pos_second);
    }
    const double a = std::clamp(pos_first / w, 0.0, 1.0);
    const double b = std::clamp(pos_second / w, 0.0, 1.0);
    const double plateau = (w + d(u, second) + d(v, first) + st.weight) / 2.0;

    const std::size_t rank = other;
    std::vector<LinearPiece> pieces;
    pieces.push_back({0.0, a, far_u, w, Slope::Ascending, other, rank});
    pieces.push_back({a, b, plateau, 0.0, Slope::Constant, other, rank});
    pieces.push_back({b, 1.0, (1.0 - b) * w + far_v, -w, Slope::Descending, other, rank});
    return PiecewiseLinearFunction(host, w, detail::normalize_pieces(std::move(pieces)));
}

/// Largest distance from p(lambda) on `host` to any point of the same edge:
/// plateau, descending to the midpoint, ascending, plateau.
inline PiecewiseLinearFunction phi_edge_self(const Network& net, const DistanceMatrix& d, EdgeIndex host) {
    const Edge& uv = net.edge(host);
    const double w = uv.weight;
    const double around = std::min(d(uv.u, uv.v), w);
    const double plateau = (w + around) / 2.0;
    const double left = (w - around) / (2.0 * w);
    const double right = 1.0 - left;

    std::vector<LinearPiece> pieces;
    pieces.push_back({0.0, left, plateau, 0.0, Slope::Constant, host, host});
    pieces.push_back({left, 0.5, (1.0 - left) * w, -w, Slope::Descending, host, host});
    pieces.push_back({0.5, right, 0.5 * w, w, Slope::Ascending, host, host});
    pieces.push_back({right, 1.0, plateau, 0.0, Slope::Constant, host, host});
    return PiecewiseLinearFunction(host, w, detail::normalize_pieces(std::move(pieces)));
}

/// All farthest-distance functions for a host edge, in edge order.
inline std::vector<PiecewiseLinearFunction> phi_functions(const Network& net, const DistanceMatrix& d,
                                                          EdgeIndex host) {
    std::vector<PiecewiseLinearFunction> out;
    out.reserve(net.edge_count());
    for (EdgeIndex st = 0; st < net.edge_count(); ++st) {
        out.push_back(st == host ? phi_edge_self(net, d, host) : phi_edge_pair(net, d, host, st));
    }
    return out;
}

struct EnvelopeResult {
    PiecewiseLinearFunction envelope;
    /// Per envelope piece: every source edge within tolerance of the maximum
    /// at the piece interior, sorted.
    std::vector<std::vector<EdgeIndex>> contributors;

    std::size_t distinct_contributors() const {
        std::vector<EdgeIndex> all;
        for (const auto& c : contributors) all.insert(all.end(), c.begin(), c.end());
        std::sort(all.begin(), all.end());
        return static_cast<std::size_t>(std::unique(all.begin(), all.end()) - all.begin());
    }
};

namespace detail {

inline const LinearPiece& winner_at(const LinearPiece& f, const LinearPiece& g, double x) {
    const double fv = f.value_at(x);
    const double gv = g.value_at(x);
    if (std::abs(fv - gv) <= tolerance_for(std::max(fv, gv))) return f.rank >= g.rank ? f : g;
    return fv > gv ? f : g;
}

inline void append_coalesced(std::vector<LinearPiece>& out, const LinearPiece& p) {
    if (p.length() <= 0.0) return;
    if (!out.empty()) {
        LinearPiece& last = out.back();
        if (last.source == p.source && last.slope == p.slope) {
            last.hi = p.hi;
            return;
        }
    }
    out.push_back(p);
}

/// Pointwise maximum of two functions on the same host edge; ties go to the
/// higher rank.
inline PiecewiseLinearFunction merge_max(const PiecewiseLinearFunction& f, const PiecewiseLinearFunction& g) {
    std::vector<double> xs;
    xs.reserve(2 * (f.size() + g.size()) + 2);
    for (const auto& p : f.pieces()) {
        xs.push_back(p.lo);
        xs.push_back(p.hi);
    }
    for (const auto& p : g.pieces()) {
        xs.push_back(p.lo);
        xs.push_back(p.hi);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    std::vector<LinearPiece> out;
    std::size_t fi = 0, gi = 0;
    const auto& fp = f.pieces();
    const auto& gp = g.pieces();
    for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
        const double x0 = xs[k], x1 = xs[k + 1];
        if (x1 - x0 < kDegenerateLength) continue;
        const double mid = 0.5 * (x0 + x1);
        while (fi + 1 < fp.size() && fp[fi].hi <= mid) ++fi;
        while (gi + 1 < gp.size() && gp[gi].hi <= mid) ++gi;
        const LinearPiece& a = fp[fi];
        const LinearPiece& b = gp[gi];
        const double d0 = a.value_at(x0) - b.value_at(x0);
        const double d1 = a.value_at(x1) - b.value_at(x1);
        const double tol = tolerance_for(std::max({a.value_at(x0), b.value_at(x0), a.value_at(x1), b.value_at(x1)}));
        if ((d0 > tol && d1 < -tol) || (d0 < -tol && d1 > tol)) {
            const double xc = x0 + (x1 - x0) * d0 / (d0 - d1);
            if (xc - x0 >= kDegenerateLength && x1 - xc >= kDegenerateLength) {
                append_coalesced(out, winner_at(a, b, 0.5 * (x0 + xc)).restricted(x0, xc));
                append_coalesced(out, winner_at(a, b, 0.5 * (xc + x1)).restricted(xc, x1));
                continue;
            }
        }
        append_coalesced(out, winner_at(a, b, mid).restricted(x0, x1));
    }
    return PiecewiseLinearFunction(f.host(), f.host_weight(), normalize_pieces(std::move(out)));
}

inline PiecewiseLinearFunction envelope_range(std::span<const PiecewiseLinearFunction> fs) {
    if (fs.size() == 1) return fs.front();
    const std::size_t half = fs.size() / 2;
    return merge_max(envelope_range(fs.first(half)), envelope_range(fs.subspan(half)));
}

}  // namespace detail

/// Sources attaining the maximum of `functions` at lambda (within tolerance).
inline std::vector<EdgeIndex> argmax_sources(std::span<const PiecewiseLinearFunction> functions, double lambda) {
    double best = -std::numeric_limits<double>::infinity();
    std::vector<double> values;
    values.reserve(functions.size());
    for (const auto& f : functions) {
        values.push_back(f(lambda));
        best = std::max(best, values.back());
    }
    const double tol = tolerance_for(best);
    std::vector<EdgeIndex> out;
    for (std::size_t i = 0; i < functions.size(); ++i) {
        if (values[i] >= best - tol) out.push_back(functions[i].pieces().front().source);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Upper envelope by divide-and-conquer pairwise merging.
inline EnvelopeResult upper_envelope(std::span<const PiecewiseLinearFunction> functions) {
    if (functions.empty()) throw Error(ErrorKind::InvalidArgument, "envelope of no functions");
    for (const auto& f : functions) {
        if (f.host() != functions.front().host()) {
            throw Error(ErrorKind::InvalidArgument, "functions live on different host edges");
        }
    }
    EnvelopeResult result;
    result.envelope = detail::envelope_range(functions);
    for (const auto& piece : result.envelope.pieces()) {
        result.contributors.push_back(argmax_sources(functions, 0.5 * (piece.lo + piece.hi)));
    }
    return result;
}

}  // namespace farnet
