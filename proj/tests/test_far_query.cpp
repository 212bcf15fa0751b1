#include "fixtures.hpp"

#include <gtest/gtest.h>

using namespace farnet;

namespace {

bool contains(const std::vector<FarInterval>& outer, const FarInterval& inner) {
    for (const auto& o : outer) {
        if (o.edge == inner.edge && o.lo <= inner.lo + 1e-12 && inner.hi <= o.hi + 1e-12) return true;
    }
    return false;
}

}  // namespace

TEST(EdgeQueryStructure, SingleEdge) {
    const Network net = fixtures::single_edge();
    const DistanceMatrix d = all_pairs_distances(net);
    const auto qs = build_edge_query_structure(net, d, 0);
    EXPECT_TRUE(qs.constant.empty());
    ASSERT_EQ(qs.descending.records().size(), 1u);
    ASSERT_EQ(qs.ascending.records().size(), 1u);
    const auto& des = qs.descending.records()[0].piece;
    EXPECT_EQ(des.lo, 0.0);
    EXPECT_EQ(des.hi, 0.5);
    EXPECT_EQ(des.value_at(0.0), 4.0);
    const auto& asc = qs.ascending.records()[0].piece;
    EXPECT_EQ(asc.lo, 0.5);
    EXPECT_EQ(asc.hi, 1.0);
    EXPECT_EQ(asc.value_at(1.0), 4.0);
}

TEST(EdgeQueryStructure, TriangleConstantsComeFromTheOtherEdges) {
    const Network tri = fixtures::triangle();
    const DistanceMatrix d = all_pairs_distances(tri);
    const auto qs = build_edge_query_structure(tri, d, tri.edge_index("AB"));
    std::vector<EdgeIndex> sources;
    for (const auto& r : qs.constant.records()) {
        EXPECT_NEAR(r.piece.value_lo, 6.0, 1e-12);
        sources.push_back(r.source());
    }
    std::sort(sources.begin(), sources.end());
    EXPECT_EQ(sources, (std::vector<EdgeIndex>{tri.edge_index("BC"), tri.edge_index("CA")}));
    EXPECT_FALSE(qs.ascending.empty());
    EXPECT_FALSE(qs.descending.empty());
}

TEST(EdgeQueryStructure, StarPieceCounts) {
    const std::size_t legs = 6;
    const Network star = fixtures::unit_star(legs);
    const DistanceMatrix d = all_pairs_distances(star);
    for (EdgeIndex e = 0; e < legs; ++e) {
        // Two self pieces and one piece per other leg.
        EXPECT_EQ(build_edge_query_structure(star, d, e).piece_count(), 2 + (legs - 1));
    }
}

TEST(RayStab, Trivia) {
    const StabbingTree empty;
    EXPECT_TRUE(empty.stab(0.5, 0.0).empty());
    EXPECT_TRUE(ray_stab(empty, 0.5, 0.0).empty());

    const Network tri = fixtures::triangle();
    const DistanceMatrix d = all_pairs_distances(tri);
    const auto qs = build_edge_query_structure(tri, d, 0);
    for (const StabbingTree* t : {&qs.ascending, &qs.constant, &qs.descending}) {
        for (double lam : {0.0, 0.2, 1.0 / 3.0, 0.9, 1.0}) {
            std::size_t covering = 0;
            for (const auto& r : t->records()) covering += r.piece.covers(lam) ? 1 : 0;
            EXPECT_EQ(ray_stab(*t, lam, 0.0).size(), covering);
            EXPECT_TRUE(ray_stab(*t, lam, 100.0).empty());
        }
    }
}

TEST(RayStabProperties, EqualsLinearScanExactly) {
    std::uint64_t seed = 900;
    for (const Network& net : fixtures::random_networks(25)) {
        const DistanceMatrix d = all_pairs_distances(net);
        std::mt19937_64 rng(++seed);
        for (EdgeIndex e = 0; e < net.edge_count(); ++e) {
            const auto qs = build_edge_query_structure(net, d, e);
            for (const StabbingTree* t : {&qs.ascending, &qs.constant, &qs.descending}) {
                std::vector<double> probes{0.0, 1.0};
                for (const auto& r : t->records()) {
                    probes.push_back(r.piece.lo);
                    probes.push_back(r.piece.hi);
                }
                for (int i = 0; i < 30; ++i) probes.push_back(detail::unit_double(rng));
                for (double lam : probes) {
                    const double top = t->empty() ? 0.0 : std::max(0.0, t->max_at(lam));
                    for (double frac : {0.0, 0.5, 0.9, 1.0, 1.1}) {
                        auto a = t->stab(lam, frac * top);
                        auto b = t->stab_linear(lam, frac * top);
                        std::sort(a.begin(), a.end());
                        ASSERT_EQ(a, b) << "edge " << e << " lambda " << lam;
                    }
                }
            }
        }
    }
}

TEST(QueryEccentricity, Fixtures) {
    const Network one = fixtures::single_edge();
    EXPECT_EQ(QueryStructure(one, all_pairs_distances(one)).eccentricity({0, 0.5}), 2.0);
    const Network tri = fixtures::triangle();
    const QueryStructure qt(tri, all_pairs_distances(tri));
    for (double lam : {0.0, 0.3, 1.0}) EXPECT_NEAR(qt.eccentricity({1, lam}), 6.0, 1e-12);
    const Network c4 = fixtures::unit_cycle(4);
    const QueryStructure qc(c4, all_pairs_distances(c4));
    EXPECT_EQ(qc.eccentricity(c4.vertex_point(0)), oracle::exact_eccentricity(c4, qc.distances(), c4.vertex_point(0)).ecc);
    EXPECT_EQ(qc.eccentricity(c4.vertex_point(0)), 2.0);
}

TEST(QueryEccentricityProperties, AgreesWithDiagram) {
    std::uint64_t seed = 1000;
    for (const Network& net : fixtures::random_networks(20)) {
        const DistanceMatrix d = all_pairs_distances(net);
        const QueryStructure qs(net, d);
        const auto ed = build_eccentricity_diagram(net, d);
        for (const NetworkPoint& p : fixtures::random_points(net, 500, ++seed)) {
            const double e = eccentricity_at(ed, p);
            ASSERT_NEAR(qs.eccentricity(p), e, kRelTol * e);
        }
    }
}

TEST(QueryRFar, TriangleFixture) {
    const Network tri = fixtures::triangle();
    const DistanceMatrix d = all_pairs_distances(tri);
    const NetworkPoint a = tri.point("AB", 0.0);

    // Oracle first: subdivided network with 1000 pieces per edge.
    const auto mask = oracle::sampled_far_oracle(tri, a, 5.0, 1000);
    const EdgeIndex bc = tri.edge_index("BC"), ca = tri.edge_index("CA");
    for (std::size_t i = 0; i <= 1000; ++i) {
        EXPECT_EQ(mask[bc][i], i >= 500) << i;  // w_B = 4 i / 1000 >= 2
        EXPECT_EQ(mask[ca][i], i == 0) << i;     // only C itself
        EXPECT_FALSE(mask[tri.edge_index("AB")][i]);
    }

    const auto r = QueryStructure(tri, d).r_far(a, 5.0);
    ASSERT_EQ(r.size(), 2u);
    EXPECT_EQ(r[0].edge, bc);
    EXPECT_NEAR(r[0].lo * 4.0, 2.0, 1e-12);
    EXPECT_NEAR(r[0].hi * 4.0, 4.0, 1e-12);
    EXPECT_EQ(r[1].edge, ca);
    EXPECT_TRUE(r[1].degenerate());
    EXPECT_NEAR(r[1].lo, 0.0, 1e-12);
}

TEST(QueryRFar, Trivia) {
    const Network tri = fixtures::triangle();
    const QueryStructure qs(tri, all_pairs_distances(tri));
    const NetworkPoint p = tri.point("BC", 0.3);
    EXPECT_TRUE(qs.r_far(p, 6.5).empty());
    EXPECT_THROW(qs.r_far(p, 0.0), Error);
    EXPECT_THROW(qs.r_far(p, -1.0), Error);
    // Tiny R: every edge is reported; other edges in full.
    const auto all = qs.r_far(p, 1e-9);
    std::vector<EdgeIndex> edges;
    for (const auto& iv : all) {
        edges.push_back(iv.edge);
        if (iv.edge != p.edge) {
            EXPECT_EQ(iv.lo, 0.0);
            EXPECT_EQ(iv.hi, 1.0);
        }
    }
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    EXPECT_EQ(edges.size(), 3u);
}

TEST(QueryRFar, OwnEdgeCanGiveTwoIntervals) {
    // Single edge of weight 4 from lambda 1/2: points at distance >= 1 on both sides.
    const Network one = fixtures::single_edge();
    const auto r = QueryStructure(one, all_pairs_distances(one)).r_far({0, 0.5}, 1.0);
    ASSERT_EQ(r.size(), 2u);
    EXPECT_EQ(r[0].lo, 0.0);
    EXPECT_EQ(r[0].hi, 0.25);
    EXPECT_EQ(r[1].lo, 0.75);
    EXPECT_EQ(r[1].hi, 1.0);
}

TEST(QueryRFarProperties, MatchesSampledOracleAndEndpointContract) {
    verify::Options o;
    o.rfar_pairs = 10;
    std::uint64_t seed = 1200;
    for (const Network& net : fixtures::random_networks(15, false, 1200)) {
        o.seed = ++seed;
        const auto r = verify::check_r_far(verify::Subject(net), o);
        EXPECT_TRUE(r.passed) << r.first_failure;
    }
}

TEST(QueryRFarProperties, EndpointsAtDistanceRUnlessClipped) {
    std::uint64_t seed = 1300;
    for (const Network& net : fixtures::random_networks(20, false, 1300)) {
        const DistanceMatrix d = all_pairs_distances(net);
        const QueryStructure qs(net, d);
        std::mt19937_64 rng(++seed);
        for (const NetworkPoint& p : fixtures::random_points(net, 30, ++seed)) {
            const double radius = qs.eccentricity(p) * (0.1 + 0.9 * detail::unit_double(rng));
            for (const auto& iv : qs.r_far(p, radius)) {
                for (double lam : {iv.lo, iv.hi}) {
                    const double dist = oracle::brute_point_distance(net, d, p, {iv.edge, lam});
                    if (lam > 1e-12 && lam < 1.0 - 1e-12) {
                        EXPECT_NEAR(dist, radius, 1e-9 * radius);
                    } else {
                        EXPECT_GE(dist, radius - 1e-9 * radius);
                    }
                }
            }
        }
    }
}

TEST(QueryRFarProperties, MonotoneInR) {
    std::uint64_t seed = 1400;
    for (const Network& net : fixtures::random_networks(20, false, 1400)) {
        const QueryStructure qs(net, all_pairs_distances(net));
        for (const NetworkPoint& p : fixtures::random_points(net, 20, ++seed)) {
            const double e = qs.eccentricity(p);
            const auto wide = qs.r_far(p, 0.3 * e);
            for (const auto& iv : qs.r_far(p, 0.7 * e)) EXPECT_TRUE(contains(wide, iv));
        }
    }
}

TEST(QueryFarthestSet, Fixtures) {
    const Network one = fixtures::single_edge();
    const auto f1 = QueryStructure(one, all_pairs_distances(one)).farthest_set({0, 0.25});
    ASSERT_EQ(f1.size(), 1u);
    EXPECT_EQ(f1[0].point.lambda, 1.0);

    const Network tri = fixtures::triangle();
    const auto f3 = QueryStructure(tri, all_pairs_distances(tri)).farthest_set(tri.point("AB", 0.0));
    ASSERT_EQ(f3.size(), 1u);
    EXPECT_EQ(f3[0].point.edge, tri.edge_index("BC"));
    EXPECT_DOUBLE_EQ(f3[0].point.lambda * 4.0, 3.0);
}

TEST(QueryFarthestSetProperties, MatchesDiagramAndOracle) {
    verify::Options o;
    o.farthest_points = 100;
    o.interval_samples = 20;
    std::uint64_t seed = 1500;
    for (const Network& net : fixtures::random_networks(15, false, 1500)) {
        o.seed = ++seed;
        const auto r = verify::check_farthest_sets(verify::Subject(net), o);
        EXPECT_TRUE(r.passed) << r.first_failure;
    }
}
