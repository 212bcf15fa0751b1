#pragma once

#include <farnet/diagrams.hpp>
#include <farnet/envelope.hpp>
#include <farnet/network.hpp>

#include <json.hpp>

#include <algorithm>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace farnet {

/// Answers are printed with 12 significant digits.
inline std::string format_number(double x) {
    std::ostringstream os;
    os.precision(12);
    if (x == 0.0) x = 0.0;  // no "-0"
    os << x;
    return os.str();
}

namespace detail {

inline std::string xml_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

inline std::string edge_ids(const Network& net, const std::vector<EdgeIndex>& edges) {
    std::string out;
    for (EdgeIndex e : edges) {
        if (!out.empty()) out += ' ';
        out += net.edge(e).id;
    }
    return out.empty() ? "-" : out;
}

inline void write_breakpoints(std::ostream& out, const std::string& id, const std::vector<double>& lambdas,
                              const std::vector<double>& values) {
    out << "edge " << id << ':';
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        out << " (" << format_number(lambdas[i]) << ", " << format_number(values[i]) << ')';
    }
    out << '\n';
}

}  // namespace detail

inline void write_eccentricity_diagram(std::ostream& out, const Network& net, const EccentricityDiagram& ed) {
    for (EdgeIndex e = 0; e < ed.edges.size(); ++e) {
        const auto& ee = ed.edges[e];
        detail::write_breakpoints(out, net.edge(e).id, ee.lambdas, ee.values);
        for (std::size_t i = 0; i < ee.subedge_count(); ++i) {
            out << "  [" << format_number(ee.lambdas[i]) << ", " << format_number(ee.lambdas[i + 1]) << "] "
                << to_string(ee.slopes[i]) << '\n';
        }
    }
    out << "subedges " << ed.subedge_count() << '\n';
}

inline void write_farthest_point_diagram(std::ostream& out, const Network& net, const FarthestPointDiagram& fd) {
    for (EdgeIndex e = 0; e < fd.edges.size(); ++e) {
        const auto& ef = fd.edges[e];
        detail::write_breakpoints(out, net.edge(e).id, ef.lambdas, ef.values);
        for (std::size_t i = 0; i < ef.cell_count(); ++i) {
            out << "  (" << format_number(ef.lambdas[i]) << ", " << format_number(ef.lambdas[i + 1])
                << "): " << detail::edge_ids(net, ef.cell_contributors[i]) << '\n';
        }
    }
    out << "cells " << fd.cell_count() << '\n';
}

inline nlohmann::json eccentricity_diagram_json(const Network& net, const EccentricityDiagram& ed) {
    nlohmann::json edges = nlohmann::json::array();
    for (EdgeIndex e = 0; e < ed.edges.size(); ++e) {
        const auto& ee = ed.edges[e];
        nlohmann::json slopes = nlohmann::json::array();
        for (Slope s : ee.slopes) slopes.push_back(to_string(s));
        edges.push_back({{"edge", net.edge(e).id}, {"lambda", ee.lambdas}, {"ecc", ee.values}, {"slopes", slopes}});
    }
    return {{"edges", edges}, {"subedges", ed.subedge_count()}};
}

inline nlohmann::json farthest_point_diagram_json(const Network& net, const FarthestPointDiagram& fd) {
    auto ids = [&](const std::vector<EdgeIndex>& es) {
        nlohmann::json a = nlohmann::json::array();
        for (EdgeIndex e : es) a.push_back(net.edge(e).id);
        return a;
    };
    nlohmann::json edges = nlohmann::json::array();
    for (EdgeIndex e = 0; e < fd.edges.size(); ++e) {
        const auto& ef = fd.edges[e];
        nlohmann::json cells = nlohmann::json::array();
        for (const auto& c : ef.cell_contributors) cells.push_back(ids(c));
        nlohmann::json at = nlohmann::json::array();
        for (const auto& c : ef.vertex_contributors) at.push_back(ids(c));
        edges.push_back({{"edge", net.edge(e).id},
                         {"lambda", ef.lambdas},
                         {"ecc", ef.values},
                         {"cells", cells},
                         {"breakpoints", at}});
    }
    return {{"edges", edges}, {"cells", fd.cell_count()}};
}

/// SVG plot of every phi function over one edge together with their upper
/// envelope: one path per function, then the envelope path.
inline void write_envelope_svg(std::ostream& out, const Network& net, const std::vector<PiecewiseLinearFunction>& fs,
                               const PiecewiseLinearFunction& envelope, EdgeIndex host) {
    constexpr double kWidth = 640.0, kHeight = 400.0, kMargin = 40.0;
    double top = 0.0;
    for (const auto& f : fs) {
        for (const auto& p : f.pieces()) top = std::max({top, p.value_lo, p.value_hi()});
    }
    if (top <= 0.0) top = 1.0;
    auto px = [&](double lambda) { return kMargin + lambda * (kWidth - 2 * kMargin); };
    auto py = [&](double v) { return kHeight - kMargin - v / top * (kHeight - 2 * kMargin); };
    auto path_data = [&](const PiecewiseLinearFunction& f) {
        std::string d;
        for (std::size_t i = 0; i < f.pieces().size(); ++i) {
            const auto& p = f.pieces()[i];
            if (i == 0) d += "M " + format_number(px(p.lo)) + ' ' + format_number(py(p.value_lo));
            d += " L " + format_number(px(p.hi)) + ' ' + format_number(py(p.value_hi()));
        }
        return d;
    };

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
        << "<title>eccentricity on edge " << detail::xml_escape(net.edge(host).id) << "</title>\n"
        << "<g fill=\"none\" stroke=\"#000\" stroke-width=\"1\">\n"
        << "<line x1=\"" << kMargin << "\" y1=\"" << kHeight - kMargin << "\" x2=\"" << kWidth - kMargin
        << "\" y2=\"" << kHeight - kMargin << "\"/>\n"
        << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin << "\" y2=\""
        << kHeight - kMargin << "\"/>\n"
        << "</g>\n"
        << "<text x=\"" << kWidth - kMargin << "\" y=\"" << kHeight - kMargin / 3 << "\" font-size=\"12\">λ</text>\n"
        << "<text x=\"4\" y=\"" << kMargin - 8 << "\" font-size=\"12\">" << format_number(top) << "</text>\n";
    for (const auto& f : fs) {
        const EdgeIndex src = f.pieces().empty() ? 0 : f.pieces().front().source;
        out << "<path class=\"phi\" data-edge=\"" << detail::xml_escape(net.edge(src).id)
            << "\" fill=\"none\" stroke=\"#9aa\" stroke-width=\"1\" d=\"" << path_data(f) << "\"/>\n";
    }
    out << "<path class=\"envelope\" fill=\"none\" stroke=\"#c30\" stroke-width=\"2.5\" d=\"" << path_data(envelope)
        << "\"/>\n"
        << "</svg>\n";
}

}  // namespace farnet
