#include "fixtures.hpp"

#include <gtest/gtest.h>

using namespace farnet;

namespace {

/// Largest sampled distance from p to edge st (st cut into `pieces` parts).
double sampled_far(const Network& net, const DistanceMatrix& d, const NetworkPoint& p, EdgeIndex st,
                   std::size_t pieces) {
    double best = 0.0;
    for (std::size_t i = 0; i <= pieces; ++i) {
        const NetworkPoint q{st, double(i) / double(pieces)};
        best = std::max(best, oracle::brute_point_distance(net, d, p, q));
    }
    return best;
}

void expect_piece(const LinearPiece& p, double lo, double hi, double v_lo, double v_hi, Slope slope) {
    EXPECT_NEAR(p.lo, lo, 1e-12);
    EXPECT_NEAR(p.hi, hi, 1e-12);
    EXPECT_NEAR(p.value_lo, v_lo, 1e-12);
    EXPECT_NEAR(p.value_hi(), v_hi, 1e-12);
    EXPECT_EQ(p.slope, slope);
}

PiecewiseLinearFunction constant_function(double value, EdgeIndex source, std::size_t rank) {
    return PiecewiseLinearFunction(0, 1.0, {LinearPiece{0.0, 1.0, value, 0.0, Slope::Constant, source, rank}});
}

}  // namespace

TEST(PhiPair, TriangleFixtures) {
    const Network tri = fixtures::triangle();
    const DistanceMatrix d = all_pairs_distances(tri);
    const EdgeIndex ab = tri.edge_index("AB"), bc = tri.edge_index("BC"), ca = tri.edge_index("CA");

    // Oracle first: the closed forms must agree with route enumeration.
    for (double lam : {0.0, 0.2, 1.0 / 3.0, 0.7, 1.0}) {
        const NetworkPoint p{ab, lam};
        EXPECT_NEAR(phi_edge_pair(tri, d, ab, bc)(lam), sampled_far(tri, d, p, bc, 1200), 4.0 / 1200 + 1e-9);
        EXPECT_NEAR(phi_edge_pair(tri, d, ab, ca)(lam), sampled_far(tri, d, p, ca, 1500), 5.0 / 1500 + 1e-9);
    }

    const auto f = phi_edge_pair(tri, d, ab, bc);
    ASSERT_EQ(f.size(), 2u);
    expect_piece(f.pieces()[0], 0.0, 1.0 / 3.0, 6.0, 6.0, Slope::Constant);
    expect_piece(f.pieces()[1], 1.0 / 3.0, 1.0, 6.0, 4.0, Slope::Descending);
    EXPECT_DOUBLE_EQ(f(0.0), 6.0);
    EXPECT_DOUBLE_EQ(f(1.0), 4.0);

    const auto g = phi_edge_pair(tri, d, ab, ca);
    ASSERT_EQ(g.size(), 2u);
    expect_piece(g.pieces()[0], 0.0, 1.0 / 3.0, 5.0, 6.0, Slope::Ascending);
    expect_piece(g.pieces()[1], 1.0 / 3.0, 1.0, 6.0, 6.0, Slope::Constant);
}

TEST(PhiPair, AllRoutesThroughOneEnd) {
    // Path u - v - x, weights 2 and 3.
    const Network net = fixtures::path3();
    const DistanceMatrix d = all_pairs_distances(net);
    const EdgeIndex uv = net.edge_index("uv"), vx = net.edge_index("vx");
    for (double lam : {0.0, 0.5, 1.0}) {
        EXPECT_NEAR(phi_edge_pair(net, d, uv, vx)(lam), sampled_far(net, d, {uv, lam}, vx, 600), 3.0 / 600 + 1e-9);
    }
    // From uv every route to vx leaves through v: far point x, 5 - 2 lambda.
    const auto f = phi_edge_pair(net, d, uv, vx);
    ASSERT_EQ(f.size(), 1u);
    expect_piece(f.pieces()[0], 0.0, 1.0, 5.0, 3.0, Slope::Descending);
    // From vx every route to uv leaves through v, the start of vx: far point u, 2 + 3 lambda.
    const auto g = phi_edge_pair(net, d, vx, uv);
    ASSERT_EQ(g.size(), 1u);
    expect_piece(g.pieces()[0], 0.0, 1.0, 2.0, 5.0, Slope::Ascending);
}

TEST(PhiPair, SameEdgeIsAContractError) {
    const Network tri = fixtures::triangle();
    const DistanceMatrix d = all_pairs_distances(tri);
    try {
        phi_edge_pair(tri, d, 0, 0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Contract);
    }
}

TEST(PhiSelf, SingleEdge) {
    const Network net = fixtures::single_edge();
    const DistanceMatrix d = all_pairs_distances(net);
    const auto f = phi_edge_self(net, d, 0);
    ASSERT_EQ(f.size(), 2u);
    expect_piece(f.pieces()[0], 0.0, 0.5, 4.0, 2.0, Slope::Descending);
    expect_piece(f.pieces()[1], 0.5, 1.0, 2.0, 4.0, Slope::Ascending);
}

TEST(PhiSelf, TriangleEdgeWithoutDetour) {
    const Network tri = fixtures::triangle();
    const DistanceMatrix d = all_pairs_distances(tri);
    const auto f = phi_edge_self(tri, d, tri.edge_index("AB"));
    for (double lam : {0.0, 0.1, 0.5, 0.8, 1.0}) EXPECT_NEAR(f(lam), 3.0 * std::max(lam, 1.0 - lam), 1e-12);
}

TEST(PhiSelf, ShortDetourGivesFourPieces) {
    // u - v of weight 4 with a detour of length 2: d(u,v) = 2.
    const Network net = parse_network("v u\nv v\nv x\ne uv u v 4\ne ux u x 1\ne xv x v 1\n");
    const DistanceMatrix d = all_pairs_distances(net);
    const auto f = phi_edge_self(net, d, net.edge_index("uv"));
    ASSERT_EQ(f.size(), 4u);
    expect_piece(f.pieces()[0], 0.0, 0.25, 3.0, 3.0, Slope::Constant);
    expect_piece(f.pieces()[1], 0.25, 0.5, 3.0, 2.0, Slope::Descending);
    expect_piece(f.pieces()[2], 0.5, 0.75, 2.0, 3.0, Slope::Ascending);
    expect_piece(f.pieces()[3], 0.75, 1.0, 3.0, 3.0, Slope::Constant);
}

TEST(PhiProperties, MatchSampledFarthestDistance) {
    std::uint64_t seed = 11;
    for (const Network& net : fixtures::random_networks(6)) {
        const DistanceMatrix d = all_pairs_distances(net);
        std::mt19937_64 rng(++seed);
        for (EdgeIndex uv = 0; uv < net.edge_count(); ++uv) {
            const auto fs = phi_functions(net, d, uv);
            ASSERT_EQ(fs.size(), net.edge_count());
            for (EdgeIndex st = 0; st < net.edge_count(); ++st) {
                EXPECT_LE(fs[st].size(), st == uv ? 4u : 3u);
                const double slack = net.edge(st).weight / 500.0 + 1e-9;
                for (int t = 0; t < 20; ++t) {
                    const double lam = detail::unit_double(rng);
                    ASSERT_NEAR(fs[st](lam), sampled_far(net, d, {uv, lam}, st, 500), slack)
                        << "uv=" << uv << " st=" << st << " lambda=" << lam;
                }
            }
        }
    }
}

TEST(PhiProperties, PiecesAreGapFreeContinuousAndThreeSloped) {
    for (const Network& net : fixtures::random_networks(20)) {
        const DistanceMatrix d = all_pairs_distances(net);
        for (EdgeIndex uv = 0; uv < net.edge_count(); ++uv) {
            const double w = net.edge(uv).weight;
            for (const auto& f : phi_functions(net, d, uv)) {
                const auto& ps = f.pieces();
                ASSERT_FALSE(ps.empty());
                EXPECT_EQ(ps.front().lo, 0.0);
                EXPECT_EQ(ps.back().hi, 1.0);
                for (std::size_t i = 0; i < ps.size(); ++i) {
                    EXPECT_LE(ps[i].lo, ps[i].hi);
                    EXPECT_EQ(ps[i].rate, static_cast<int>(ps[i].slope) * w);
                    if (i > 0) {
                        EXPECT_EQ(ps[i - 1].hi, ps[i].lo);
                        EXPECT_NEAR(ps[i - 1].value_hi(), ps[i].value_lo, tolerance_for(ps[i].value_lo));
                    }
                }
            }
        }
    }
}

TEST(Envelope, SingleInputIsIdentity) {
    const Network tri = fixtures::triangle();
    const DistanceMatrix d = all_pairs_distances(tri);
    const std::vector<PiecewiseLinearFunction> one{phi_edge_pair(tri, d, 0, 1)};
    const auto r = upper_envelope(one);
    ASSERT_EQ(r.envelope.size(), one[0].size());
    for (double lam : {0.0, 0.3, 0.9}) EXPECT_EQ(r.envelope(lam), one[0](lam));
    for (const auto& c : r.contributors) EXPECT_EQ(c, std::vector<EdgeIndex>{1});
}

TEST(Envelope, TwoConstants) {
    const std::vector<PiecewiseLinearFunction> fs{constant_function(5.0, 0, 0), constant_function(7.0, 1, 1)};
    const auto r = upper_envelope(fs);
    ASSERT_EQ(r.envelope.size(), 1u);
    EXPECT_EQ(r.envelope(0.5), 7.0);
    EXPECT_EQ(r.envelope.pieces()[0].source, 1u);
    EXPECT_EQ(r.contributors[0], std::vector<EdgeIndex>{1});
}

TEST(Envelope, TiesGoToHigherRankButReportFullArgmax) {
    const std::vector<PiecewiseLinearFunction> fs{constant_function(7.0, 3, 3), constant_function(7.0, 1, 1)};
    const auto r = upper_envelope(fs);
    ASSERT_EQ(r.envelope.size(), 1u);
    EXPECT_EQ(r.envelope.pieces()[0].source, 3u);
    EXPECT_EQ(r.contributors[0], (std::vector<EdgeIndex>{1, 3}));
}

TEST(Envelope, RejectsEmptyAndMixedHosts) {
    EXPECT_THROW(upper_envelope(std::vector<PiecewiseLinearFunction>{}), Error);
    std::vector<PiecewiseLinearFunction> fs{constant_function(1.0, 0, 0),
                                            PiecewiseLinearFunction(1, 1.0, constant_function(2.0, 1, 1).pieces())};
    EXPECT_THROW(upper_envelope(fs), Error);
}

TEST(Envelope, TriangleIsConstantSix) {
    const Network tri = fixtures::triangle();
    const DistanceMatrix d = all_pairs_distances(tri);
    for (EdgeIndex e = 0; e < 3; ++e) {
        const auto r = upper_envelope(phi_functions(tri, d, e));
        for (int i = 0; i <= 100; ++i) EXPECT_NEAR(r.envelope(i / 100.0), 6.0, 1e-12);
    }
}

TEST(EnvelopeProperties, PointwiseMaximumAndSizeBound) {
    std::vector<Network> nets = fixtures::random_networks(40);
    nets.push_back(fixtures::triangle());
    nets.push_back(fixtures::unit_star(6));
    nets.push_back(lower_bound_network(3, 4, 0.0));
    for (const Network& net : nets) {
        const DistanceMatrix d = all_pairs_distances(net);
        for (EdgeIndex uv = 0; uv < net.edge_count(); ++uv) {
            const auto fs = phi_functions(net, d, uv);
            const auto r = upper_envelope(fs);
            EXPECT_LE(r.envelope.size(), 4 * r.distinct_contributors() + 1);
            const double w = net.edge(uv).weight;
            for (const auto& p : r.envelope.pieces()) {
                EXPECT_TRUE(p.rate == w || p.rate == 0.0 || p.rate == -w);
            }
            for (int i = 0; i <= 1000; ++i) {
                const double lam = i / 1000.0;
                double top = 0.0;
                for (const auto& f : fs) top = std::max(top, f(lam));
                ASSERT_NEAR(r.envelope(lam), top, tolerance_for(top)) << "edge " << uv << " lambda " << lam;
            }
        }
    }
}
