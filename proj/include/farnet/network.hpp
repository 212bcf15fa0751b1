#pragma once

#include <farnet/error.hpp>
#include <farnet/tolerance.hpp>

#include <charconv>
#include <cmath>
#include <cstddef>
#include <iomanip>
#include <istream>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace farnet {

using VertexIndex = std::size_t;
using EdgeIndex = std::size_t;

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point2&, const Point2&) = default;
};

inline double euclidean_distance(Point2 a, Point2 b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

struct Vertex {
    std::string id;
    std::optional<Point2> position;

    friend bool operator==(const Vertex&, const Vertex&) = default;
};

struct Edge {
    std::string id;
    VertexIndex u = 0;
    VertexIndex v = 0;
    double weight = 0.0;

    VertexIndex other(VertexIndex x) const { return x == u ? v : u; }

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// A point on the network: position lambda along `edge`, measured in weight
/// from the edge's first endpoint u (w_up = lambda * w_uv).
struct NetworkPoint {
    EdgeIndex edge = 0;
    double lambda = 0.0;

    friend bool operator==(const NetworkPoint&, const NetworkPoint&) = default;
};

/// Undirected, positively weighted graph whose points along edges form the
/// metric space. Vertices and edges are addressed by dense indices assigned in
/// insertion order; string ids are kept for I/O.
class Network {
public:
    VertexIndex add_vertex(std::string id, std::optional<Point2> position = std::nullopt) {
        if (vertex_lookup_.count(id) != 0) {
            throw Error(ErrorKind::InvalidArgument, "duplicate vertex id '" + id + "'");
        }
        const VertexIndex index = vertices_.size();
        vertex_lookup_.emplace(id, index);
        vertices_.push_back(Vertex{std::move(id), position});
        incident_.emplace_back();
        return index;
    }

    /// Adds an edge between two existing vertices. Without a weight both
    /// endpoints need coordinates and the Euclidean length is used.
    EdgeIndex add_edge(std::string id, std::string_view u, std::string_view v,
                       std::optional<double> weight = std::nullopt) {
        const VertexIndex ui = vertex_index(u);
        const VertexIndex vi = vertex_index(v);
        return add_edge(std::move(id), ui, vi, weight);
    }

    EdgeIndex add_edge(std::string id, VertexIndex u, VertexIndex v,
                       std::optional<double> weight = std::nullopt) {
        if (edge_lookup_.count(id) != 0) {
            throw Error(ErrorKind::InvalidArgument, "duplicate edge id '" + id + "'");
        }
        if (u >= vertices_.size() || v >= vertices_.size()) {
            throw Error(ErrorKind::UnknownIdentifier, "edge '" + id + "' references a missing vertex");
        }
        double w = 0.0;
        if (weight) {
            w = *weight;
        } else {
            const auto& pu = vertices_[u].position;
            const auto& pv = vertices_[v].position;
            if (!pu || !pv) {
                throw Error(ErrorKind::NotGeometric,
                            "edge '" + id + "' has no weight and its endpoints lack coordinates");
            }
            w = euclidean_distance(*pu, *pv);
        }
        const EdgeIndex index = edges_.size();
        edge_lookup_.emplace(id, index);
        edges_.push_back(Edge{std::move(id), u, v, w});
        incident_[u].push_back(index);
        if (v != u) incident_[v].push_back(index);
        return index;
    }

    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    const std::vector<Vertex>& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const Vertex& vertex(VertexIndex i) const { return vertices_.at(i); }
    const Edge& edge(EdgeIndex i) const { return edges_.at(i); }
    const std::vector<EdgeIndex>& incident_edges(VertexIndex i) const { return incident_.at(i); }

    VertexIndex vertex_index(std::string_view id) const {
        auto it = vertex_lookup_.find(std::string(id));
        if (it == vertex_lookup_.end()) {
            throw Error(ErrorKind::UnknownIdentifier, "no vertex '" + std::string(id) + "'");
        }
        return it->second;
    }

    EdgeIndex edge_index(std::string_view id) const {
        auto it = edge_lookup_.find(std::string(id));
        if (it == edge_lookup_.end()) {
            throw Error(ErrorKind::UnknownIdentifier, "no edge '" + std::string(id) + "'");
        }
        return it->second;
    }

    bool has_edge(std::string_view id) const { return edge_lookup_.count(std::string(id)) != 0; }

    /// True when every vertex carries coordinates.
    bool is_geometric() const {
        if (vertices_.empty()) return false;
        for (const auto& v : vertices_) {
            if (!v.position) return false;
        }
        return true;
    }

    double max_weight() const {
        double w = 0.0;
        for (const auto& e : edges_) w = std::max(w, e.weight);
        return w;
    }

    double total_weight() const {
        double w = 0.0;
        for (const auto& e : edges_) w += e.weight;
        return w;
    }

    NetworkPoint point(std::string_view edge_id, double lambda) const {
        return make_point(edge_index(edge_id), lambda);
    }

    NetworkPoint make_point(EdgeIndex e, double lambda) const {
        if (e >= edges_.size()) {
            throw Error(ErrorKind::UnknownIdentifier, "edge index out of range");
        }
        if (!(lambda >= 0.0 && lambda <= 1.0)) {
            throw Error(ErrorKind::InvalidArgument, "lambda must lie in [0,1]");
        }
        return NetworkPoint{e, lambda};
    }

    /// Some edge point that coincides with vertex x.
    NetworkPoint vertex_point(VertexIndex x) const {
        const auto& inc = incident_.at(x);
        if (inc.empty()) throw Error(ErrorKind::InvalidArgument, "isolated vertex");
        const Edge& e = edges_[inc.front()];
        return NetworkPoint{inc.front(), e.u == x ? 0.0 : 1.0};
    }

    /// Plane coordinates of a point (geometric networks only).
    Point2 position(const NetworkPoint& p) const {
        const Edge& e = edges_.at(p.edge);
        const auto& a = vertices_[e.u].position;
        const auto& b = vertices_[e.v].position;
        if (!a || !b) throw Error(ErrorKind::NotGeometric, "vertex without coordinates");
        return Point2{(1.0 - p.lambda) * a->x + p.lambda * b->x,
                      (1.0 - p.lambda) * a->y + p.lambda * b->y};
    }

    friend bool operator==(const Network& a, const Network& b) {
        return a.vertices_ == b.vertices_ && a.edges_ == b.edges_;
    }

private:
    std::vector<Vertex> vertices_;
    std::vector<Edge> edges_;
    std::vector<std::vector<EdgeIndex>> incident_;
    std::unordered_map<std::string, VertexIndex> vertex_lookup_;
    std::unordered_map<std::string, EdgeIndex> edge_lookup_;
};

/// Vertex the point coincides with, if lambda is (within tolerance) 0 or 1.
inline std::optional<VertexIndex> as_vertex(const Network& net, const NetworkPoint& p,
                                            double eps = kAbsTol) {
    const Edge& e = net.edge(p.edge);
    if (p.lambda <= eps) return e.u;
    if (p.lambda >= 1.0 - eps) return e.v;
    return std::nullopt;
}

/// Equality of network points with endpoints canonicalized to vertices.
inline bool same_point(const Network& net, const NetworkPoint& p, const NetworkPoint& q,
                       double eps = 1e-9) {
    const auto pv = as_vertex(net, p, eps);
    const auto qv = as_vertex(net, q, eps);
    if (pv || qv) return pv == qv;
    return p.edge == q.edge && std::abs(p.lambda - q.lambda) <= eps;
}

// --- validation ------------------------------------------------------------

struct Violation {
    ErrorKind kind;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
    bool has(ErrorKind kind) const {
        for (const auto& v : violations) {
            if (v.kind == kind) return true;
        }
        return false;
    }
};

inline ValidationReport validate(const Network& net) {
    ValidationReport report;
    auto add = [&](ErrorKind kind, std::string msg) {
        report.violations.push_back(Violation{kind, std::move(msg)});
    };

    if (net.edge_count() == 0) {
        add(ErrorKind::Disconnected, "network has no edges");
    }

    std::set<std::pair<VertexIndex, VertexIndex>> seen;
    for (const auto& e : net.edges()) {
        if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
            add(ErrorKind::NonPositiveWeight, "edge '" + e.id + "' has non-positive weight");
        }
        if (e.u == e.v) {
            add(ErrorKind::SelfLoop, "edge '" + e.id + "' is a self-loop");
            continue;
        }
        auto key = std::minmax(e.u, e.v);
        if (!seen.insert({key.first, key.second}).second) {
            add(ErrorKind::ParallelEdge, "edge '" + e.id + "' duplicates another edge");
        }
    }

    // Connectivity over all vertices, including isolated ones.
    if (net.vertex_count() > 0) {
        std::vector<char> reached(net.vertex_count(), 0);
        std::vector<VertexIndex> stack{0};
        reached[0] = 1;
        std::size_t count = 1;
        while (!stack.empty()) {
            const VertexIndex x = stack.back();
            stack.pop_back();
            for (EdgeIndex ei : net.incident_edges(x)) {
                const VertexIndex y = net.edge(ei).other(x);
                if (!reached[y]) {
                    reached[y] = 1;
                    ++count;
                    stack.push_back(y);
                }
            }
        }
        if (count != net.vertex_count()) {
            add(ErrorKind::Disconnected, "graph is not connected");
        }
    }

    std::size_t with_coords = 0;
    for (const auto& v : net.vertices()) with_coords += v.position ? 1 : 0;
    if (with_coords != 0 && with_coords != net.vertex_count()) {
        add(ErrorKind::InconsistentGeometry, "only some vertices carry coordinates");
    } else if (with_coords != 0) {
        for (const auto& e : net.edges()) {
            const double len = euclidean_distance(*net.vertex(e.u).position, *net.vertex(e.v).position);
            if (std::abs(len - e.weight) > 1e-9 * std::max(len, e.weight)) {
                add(ErrorKind::InconsistentGeometry,
                    "edge '" + e.id + "' weight differs from its Euclidean length");
            }
        }
    }
    return report;
}

/// Throws the first violation, if any.
inline void require_valid(const Network& net) {
    const auto report = validate(net);
    if (!report.ok()) {
        throw Error(report.violations.front().kind, report.violations.front().message);
    }
}

// --- text format -----------------------------------------------------------

namespace detail {

inline std::optional<double> parse_double(std::string_view s) {
    double value = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) return std::nullopt;
    return value;
}

inline std::vector<std::string_view> split_tokens(std::string_view line) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) tokens.push_back(line.substr(i, j - i));
        i = j;
    }
    return tokens;
}

}  // namespace detail

/// Parses the line-oriented network format:
///   v <id> [<x> <y>]
///   e <id> <u> <v> [<w>]
/// '#' starts a comment. Edges may reference vertices declared later.
inline Network read_network(std::istream& in) {
    struct PendingEdge {
        std::string id, u, v;
        std::optional<double> w;
        int line;
    };
    Network net;
    std::vector<PendingEdge> pending;
    std::string raw;
    int line_no = 0;
    auto fail = [&](const std::string& msg) {
        throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": " + msg);
    };
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line(raw);
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        const auto tok = detail::split_tokens(line);
        if (tok.empty()) continue;
        if (tok[0] == "v") {
            if (tok.size() != 2 && tok.size() != 4) fail("expected 'v <id> [<x> <y>]'");
            std::optional<Point2> pos;
            if (tok.size() == 4) {
                auto x = detail::parse_double(tok[2]);
                auto y = detail::parse_double(tok[3]);
                if (!x || !y) fail("bad coordinate");
                pos = Point2{*x, *y};
            }
            try {
                net.add_vertex(std::string(tok[1]), pos);
            } catch (const Error& e) {
                fail(e.what());
            }
        } else if (tok[0] == "e") {
            if (tok.size() != 4 && tok.size() != 5) fail("expected 'e <id> <u> <v> [<w>]'");
            std::optional<double> w;
            if (tok.size() == 5) {
                w = detail::parse_double(tok[4]);
                if (!w) fail("bad weight");
            }
            pending.push_back({std::string(tok[1]), std::string(tok[2]), std::string(tok[3]), w, line_no});
        } else {
            fail("unknown record '" + std::string(tok[0]) + "'");
        }
    }
    for (const auto& e : pending) {
        line_no = e.line;
        try {
            net.add_edge(e.id, e.u, e.v, e.w);
        } catch (const Error& err) {
            fail(err.what());
        }
    }
    return net;
}

inline Network parse_network(std::string_view text) {
    std::istringstream in{std::string(text)};
    return read_network(in);
}

/// Writes the network in the text format with full round-trip precision.
inline void write_network(std::ostream& out, const Network& net) {
    const auto old_precision = out.precision();
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (const auto& v : net.vertices()) {
        out << "v " << v.id;
        if (v.position) out << ' ' << v.position->x << ' ' << v.position->y;
        out << '\n';
    }
    for (const auto& e : net.edges()) {
        out << "e " << e.id << ' ' << net.vertex(e.u).id << ' ' << net.vertex(e.v).id << ' '
            << e.weight << '\n';
    }
    out.precision(old_precision);
}

inline std::string format_network(const Network& net) {
    std::ostringstream out;
    write_network(out, net);
    return out.str();
}

}  // namespace farnet
