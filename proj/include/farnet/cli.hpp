#pragma once

#include <farnet/diagrams.hpp>
#include <farnet/distance.hpp>
#include <farnet/envelope.hpp>
#include <farnet/far_query.hpp>
#include <farnet/feedlink.hpp>
#include <farnet/generators.hpp>
#include <farnet/network.hpp>
#include <farnet/report.hpp>
#include <farnet/verify.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace farnet::cli {

enum ExitCode : int {
    kOk = 0,
    kParse = 2,
    kValidation = 3,
    kQuery = 4,
    kVerify = 5,
};

inline int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Parse: return kParse;
        case ErrorKind::Disconnected:
        case ErrorKind::NonPositiveWeight:
        case ErrorKind::SelfLoop:
        case ErrorKind::ParallelEdge:
        case ErrorKind::InconsistentGeometry: return kValidation;
        case ErrorKind::UnknownIdentifier:
        case ErrorKind::Contract:
        case ErrorKind::InvalidArgument:
        case ErrorKind::NotGeometric: return kQuery;
        case ErrorKind::SelfVerification: return kVerify;
    }
    return 1;
}

/// Decimal or rational "a/b".
inline double parse_number(const std::string& text, const char* what) {
    const auto slash = text.find('/');
    auto fail = [&] { return Error(ErrorKind::Parse, std::string("bad ") + what + " '" + text + "'"); };
    if (slash == std::string::npos) {
        const auto v = detail::parse_double(text);
        if (!v) throw fail();
        return *v;
    }
    const auto num = detail::parse_double(std::string_view(text).substr(0, slash));
    const auto den = detail::parse_double(std::string_view(text).substr(slash + 1));
    if (!num || !den || *den == 0.0) throw fail();
    return *num / *den;
}

namespace detail {

struct Options {
    std::string input = "-";
    std::string output;
    std::string edge;
    std::string lambda;
    std::string radius;
    std::string method = "tree";
    bool json = false;
    std::optional<double> x;
    std::optional<double> y;
    std::string sites;
    std::string family = "cycle";
    GeneratorSpec gen;
    std::size_t samples = 1000;
    std::size_t points = 200;
    std::uint64_t seed = 1;
};

inline Network load(const Options& o, std::istream& in) {
    Network net;
    if (o.input == "-") {
        net = read_network(in);
    } else {
        std::ifstream file(o.input);
        if (!file) throw Error(ErrorKind::Parse, "cannot open '" + o.input + "'");
        net = read_network(file);
    }
    require_valid(net);
    return net;
}

inline NetworkPoint query_point(const Network& net, const Options& o) {
    const double lambda = parse_number(o.lambda, "lambda");
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw Error(ErrorKind::InvalidArgument, "lambda must lie in [0, 1]");
    return NetworkPoint{net.edge_index(o.edge), lambda};
}

inline std::vector<Point2> read_sites(const Options& o) {
    std::vector<Point2> sites;
    if (o.x || o.y) {
        if (!o.x || !o.y) throw Error(ErrorKind::InvalidArgument, "--x and --y go together");
        sites.push_back({*o.x, *o.y});
    }
    if (!o.sites.empty()) {
        std::ifstream file(o.sites);
        if (!file) throw Error(ErrorKind::InvalidArgument, "cannot open sites file '" + o.sites + "'");
        std::string line;
        std::size_t number = 0;
        while (std::getline(file, line)) {
            ++number;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.resize(hash);
            const auto tokens = farnet::detail::split_tokens(line);
            if (tokens.empty()) continue;
            const auto px = tokens.size() == 2 ? farnet::detail::parse_double(tokens[0]) : std::nullopt;
            const auto py = tokens.size() == 2 ? farnet::detail::parse_double(tokens[1]) : std::nullopt;
            if (!px || !py) {
                throw Error(ErrorKind::InvalidArgument, "sites line " + std::to_string(number) + ": expected 'x y'");
            }
            sites.push_back({*px, *py});
        }
    }
    if (sites.empty()) throw Error(ErrorKind::InvalidArgument, "no sites given (use --x/--y or --sites)");
    return sites;
}

inline int execute(const std::string& command, const Options& o, std::istream& in, std::ostream& out,
                   std::ostream& err) {
    if (command == "gen") {
        GeneratorSpec spec = o.gen;
        spec.family = parse_family(o.family);
        write_network(out, generate(spec));
        return kOk;
    }

    if (command == "validate") {
        Network net;
        if (o.input == "-") {
            net = read_network(in);
        } else {
            std::ifstream file(o.input);
            if (!file) throw Error(ErrorKind::Parse, "cannot open '" + o.input + "'");
            net = read_network(file);
        }
        const auto report = validate(net);
        if (report.ok()) {
            out << "valid " << net.vertex_count() << " vertices " << net.edge_count() << " edges\n";
            return kOk;
        }
        for (const auto& v : report.violations) out << to_string(v.kind) << ": " << v.message << '\n';
        return kValidation;
    }

    const Network net = load(o, in);
    const DistanceMatrix d = all_pairs_distances(net);

    if (command == "ecc-diagram" || command == "fp-diagram") {
        const EccentricityDiagram ed = build_eccentricity_diagram(net, d);
        if (command == "ecc-diagram") {
            if (o.json) {
                out << eccentricity_diagram_json(net, ed).dump(2) << '\n';
            } else {
                write_eccentricity_diagram(out, net, ed);
            }
            return kOk;
        }
        const FarthestPointDiagram fd = build_farthest_point_diagram(net, d, ed);
        if (o.json) {
            out << farthest_point_diagram_json(net, fd).dump(2) << '\n';
        } else {
            write_farthest_point_diagram(out, net, fd);
        }
        return kOk;
    }

    if (command == "query-ecc") {
        const NetworkPoint p = query_point(net, o);
        const QueryStructure qs(net, d);
        out << format_number(qs.eccentricity(p)) << '\n';
        return kOk;
    }

    if (command == "query-rfar") {
        const NetworkPoint p = query_point(net, o);
        const double radius = parse_number(o.radius, "R");
        const QueryStructure qs(net, d);
        for (const auto& iv : qs.r_far(p, radius)) {
            const double w = net.edge(iv.edge).weight;
            out << net.edge(iv.edge).id << ' ' << format_number(iv.lo) << ' ' << format_number(iv.hi) << ' '
                << format_number(iv.lo * w) << ' ' << format_number(iv.hi * w) << '\n';
        }
        return kOk;
    }

    if (command == "query-far") {
        const NetworkPoint p = query_point(net, o);
        std::vector<FarPoint> points;
        if (o.method == "tree") {
            points = QueryStructure(net, d).farthest_set(p);
        } else if (o.method == "fd") {
            const EccentricityDiagram ed = build_eccentricity_diagram(net, d);
            points = farthest_point_set(net, d, build_farthest_point_diagram(net, d, ed), p);
        } else {
            throw Error(ErrorKind::InvalidArgument, "method must be 'tree' or 'fd'");
        }
        for (const auto& fp : points) {
            out << net.edge(fp.point.edge).id << ' ' << format_number(fp.point.lambda) << ' '
                << format_number(fp.distance) << '\n';
        }
        return kOk;
    }

    if (command == "feedlink") {
        const auto sites = read_sites(o);
        const FeedLinkSolver solver(net, build_eccentricity_diagram(net, d));
        for (const Point2& site : sites) {
            const FeedLink link = solver.solve(site);
            out << net.edge(link.anchor.edge).id << ' ' << format_number(link.anchor.lambda) << ' '
                << format_number(link.anchor_position.x) << ' ' << format_number(link.anchor_position.y) << ' '
                << format_number(link.cost) << '\n';
        }
        return kOk;
    }

    if (command == "plot") {
        const EdgeIndex host = net.edge_index(o.edge);
        const auto fs = phi_functions(net, d, host);
        write_envelope_svg(out, net, fs, upper_envelope(fs).envelope, host);
        return kOk;
    }

    if (command == "verify") {
        verify::Options vo;
        vo.ecc_points = o.points;
        vo.farthest_points = std::max<std::size_t>(1, o.points / 2);
        vo.rfar_pieces = o.samples;
        vo.feed_anchors = o.samples;
        vo.seed = o.seed;
        const verify::Subject subject(net);
        bool all = true;
        for (const auto& r : verify::run_all(subject, vo)) {
            all = all && r.passed;
            out << (r.passed ? "PASS " : "FAIL ") << r.name << " checks=" << r.checked;
            if (!r.passed) out << " failures=" << r.failures << " first: " << r.first_failure;
            out << '\n';
        }
        return all ? kOk : kVerify;
    }

    err << "unknown command '" << command << "'\n";
    return 1;
}

}  // namespace detail

/// Runs one invocation. `args` excludes the program name.
inline int run(std::vector<std::string> args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Eccentricity and farthest-point tools for weighted networks", "farnet"};
    app.require_subcommand(1);
    detail::Options o;

    auto with_io = [&](CLI::App* sub) {
        sub->add_option("input", o.input, "network file, '-' for stdin")->capture_default_str();
        sub->add_option("-o,--output", o.output, "write output to this file");
        return sub;
    };
    auto with_point = [&](CLI::App* sub) {
        sub->add_option("--edge", o.edge, "edge id")->required();
        sub->add_option("--lambda", o.lambda, "position on the edge, decimal or a/b")->required();
        return sub;
    };

    with_io(app.add_subcommand("validate", "check a network and list violations"));
    with_io(app.add_subcommand("ecc-diagram", "eccentricity diagram"))->add_flag("--json", o.json, "JSON output");
    with_io(app.add_subcommand("fp-diagram", "farthest-point diagram"))->add_flag("--json", o.json, "JSON output");
    with_point(with_io(app.add_subcommand("query-ecc", "eccentricity of a point")));
    with_point(with_io(app.add_subcommand("query-rfar", "points at distance at least R from a point")))
        ->add_option("--R,-R", o.radius, "radius, decimal or a/b")
        ->required();
    with_point(with_io(app.add_subcommand("query-far", "farthest points from a point")))
        ->add_option("--method", o.method, "tree or fd")
        ->capture_default_str();
    {
        auto* sub = with_io(app.add_subcommand("feedlink", "minimum eccentricity feed-link for sites"));
        sub->add_option("--x", o.x, "site x");
        sub->add_option("--y", o.y, "site y");
        sub->add_option("--sites", o.sites, "file of 'x y' lines");
    }
    {
        auto* sub = app.add_subcommand("gen", "generate a network");
        sub->add_option("-o,--output", o.output, "write output to this file");
        sub->add_option("--family", o.family, "cycle, path, star, random or gkl")->capture_default_str();
        sub->add_option("--n", o.gen.n, "vertices (legs for star)")->capture_default_str();
        sub->add_option("--m", o.gen.m, "edges (random)")->capture_default_str();
        sub->add_option("--k", o.gen.k, "k (gkl)")->capture_default_str();
        sub->add_option("--l", o.gen.l, "added edges (gkl)")->capture_default_str();
        sub->add_option("--epsilon", o.gen.epsilon, "path spacing (gkl), 0 = 1/(2k)");
        sub->add_option("--seed", o.gen.seed, "random seed")->capture_default_str();
        sub->add_option("--weights", o.gen.weights, "explicit weights")->delimiter(',');
        sub->add_flag("--random-weights", o.gen.random_weights, "uniform random weights");
        sub->add_option("--weight-lo", o.gen.weight_lo, "lowest random weight")->capture_default_str();
        sub->add_option("--weight-hi", o.gen.weight_hi, "highest random weight")->capture_default_str();
        sub->add_flag("--geometric", o.gen.geometric, "random: planar coordinates, Euclidean weights");
    }
    {
        auto* sub = with_io(app.add_subcommand("verify", "run the oracle checks on a network"));
        sub->add_option("--samples", o.samples, "pieces per edge for sampling oracles")->capture_default_str();
        sub->add_option("--points", o.points, "random query points")->capture_default_str();
        sub->add_option("--seed", o.seed, "random seed")->capture_default_str();
    }
    with_io(app.add_subcommand("plot", "SVG of the phi functions and their envelope on one edge"))
        ->add_option("--edge", o.edge, "edge id")
        ->required();

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kOk : kParse;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        if (o.output.empty()) return detail::execute(command, o, in, out, err);
        std::ostringstream buffer;
        const int code = detail::execute(command, o, in, buffer, err);
        std::ofstream file(o.output);
        if (!file) {
            err << "cannot write '" << o.output << "'\n";
            return 1;
        }
        file << buffer.str();
        return code;
    } catch (const Error& e) {
        err << e.what() << '\n';
        return exit_code_for(e.kind());
    }
}

}  // namespace farnet::cli
