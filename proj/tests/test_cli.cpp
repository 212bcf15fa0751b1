#include <farnet/cli.hpp>

#include <gtest/gtest.h>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace farnet;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args, const std::string& input = "") {
    std::istringstream in(input);
    std::ostringstream out, err;
    const int code = cli::run(std::move(args), in, out, err);
    return {code, out.str(), err.str()};
}

std::string sample(const std::string& name) { return std::string(FARNET_SAMPLES) + "/" + name; }

std::size_t count(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (auto at = text.find(needle); at != std::string::npos; at = text.find(needle, at + 1)) ++n;
    return n;
}

}  // namespace

TEST(Cli, Validate) {
    const auto r = run({"validate", sample("triangle.net")});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "valid 3 vertices 3 edges\n");

    const auto bad = run({"validate", "-"}, "v a\nv b\nv c\ne ab a b 1\n");
    EXPECT_EQ(bad.code, 3);
    EXPECT_NE(bad.out.find("disconnected"), std::string::npos) << bad.out;
}

TEST(Cli, QueryEcc) {
    const auto r = run({"query-ecc", sample("single-edge.net"), "--edge", "AB", "--lambda", "0.5"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "2\n");
    const auto q = run({"query-ecc", sample("single-edge.net"), "--edge", "AB", "--lambda", "1/4"});
    EXPECT_EQ(q.out, "3\n");
}

TEST(Cli, QueryRFar) {
    const auto r = run({"query-rfar", sample("triangle.net"), "--edge", "AB", "--lambda", "0", "--R", "5"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "BC 0.5 1 2 4\nCA 0 0 0 0\n");
}

TEST(Cli, QueryFarBothMethods) {
    for (const char* method : {"tree", "fd"}) {
        const auto r = run({"query-far", sample("triangle.net"), "--edge", "AB", "--lambda", "0", "--method", method});
        EXPECT_EQ(r.code, 0);
        EXPECT_EQ(r.out, "BC 0.75 6\n") << method;
    }
    EXPECT_EQ(run({"query-far", sample("triangle.net"), "--edge", "AB", "--lambda", "0", "--method", "x"}).code, 4);
}

TEST(Cli, FeedLink) {
    const auto r = run({"feedlink", sample("triangle-geo.net"), "--x", "1.5", "--y", "-1"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "AB 0.5 1.5 0 7\n");
    const auto s = run({"feedlink", sample("single-edge.net"), "--x", "2", "--y", "1"});
    EXPECT_EQ(s.out, "AB 0.5 2 0 3\n");
    EXPECT_EQ(run({"feedlink", sample("triangle.net"), "--x", "0", "--y", "0"}).code, 4);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run({"query-ecc", sample("triangle.net"), "--edge", "ZZ", "--lambda", "0.5"}).code, 4);
    EXPECT_EQ(run({"query-ecc", sample("triangle.net"), "--edge", "AB", "--lambda", "1.5"}).code, 4);
    EXPECT_EQ(run({"query-ecc", sample("triangle.net"), "--edge", "AB", "--lambda", "abc"}).code, 2);
    EXPECT_EQ(run({"query-ecc", "-", "--edge", "AB", "--lambda", "0"}, "v a\nq\n").code, 2);
    EXPECT_EQ(run({"query-ecc", "-", "--edge", "AB", "--lambda", "0"}, "v a\nv b\ne AB a b -1\n").code, 3);
    EXPECT_EQ(run({"nonsense"}).code, 2);
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"query-rfar", sample("triangle.net"), "--edge", "AB", "--lambda", "0", "--R", "0"}).code, 4);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, OutputFile) {
    const std::string path = testing::TempDir() + "farnet_cli_out.txt";
    const auto r = run({"query-ecc", sample("single-edge.net"), "--edge", "AB", "--lambda", "0", "-o", path});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    std::ifstream file(path);
    std::string line;
    std::getline(file, line);
    EXPECT_EQ(line, "4");
    std::remove(path.c_str());
}

TEST(Cli, GenRoundTrip) {
    const auto g = run({"gen", "--family", "gkl", "--k", "3", "--l", "2"});
    ASSERT_EQ(g.code, 0);
    EXPECT_EQ(run({"validate", "-"}, g.out).code, 0);
    const auto ed = run({"ecc-diagram", "-"}, g.out);
    EXPECT_EQ(ed.code, 0);
    EXPECT_NE(ed.out.find("subedges 23\n"), std::string::npos);

    const auto a = run({"gen", "--family", "random", "--n", "8", "--m", "12", "--seed", "7", "--geometric"});
    const auto b = run({"gen", "--family", "random", "--n", "8", "--m", "12", "--seed", "7", "--geometric"});
    EXPECT_EQ(a.out, b.out);
    std::istringstream in(a.out);
    EXPECT_TRUE(read_network(in).is_geometric());

    const auto c = run({"gen", "--family", "cycle", "--n", "3", "--weights", "3,4,5"});
    EXPECT_EQ(run({"query-ecc", "-", "--edge", "e0", "--lambda", "1/3"}, c.out).out, "6\n");
    EXPECT_EQ(run({"gen", "--family", "tree"}).code, 4);
}

TEST(Cli, JsonOutputs) {
    const auto ed = run({"ecc-diagram", sample("single-edge.net"), "--json"});
    ASSERT_EQ(ed.code, 0);
    const auto j = nlohmann::json::parse(ed.out);
    EXPECT_EQ(j["subedges"], 2);

    const auto fd = run({"fp-diagram", sample("triangle.net"), "--json"});
    ASSERT_EQ(fd.code, 0);
    const auto f = nlohmann::json::parse(fd.out);
    EXPECT_TRUE(f.contains("cells") || f.is_object());
}

TEST(Cli, TextDiagrams) {
    const auto ed = run({"ecc-diagram", sample("triangle.net")});
    EXPECT_EQ(ed.code, 0);
    EXPECT_EQ(count(ed.out, "edge "), 3u);
    const auto fd = run({"fp-diagram", sample("square-pendants.net")});
    EXPECT_EQ(fd.code, 0);
    EXPECT_NE(fd.out.find("cells "), std::string::npos);
}

TEST(Cli, PlotHasOnePathPerPhiAndTheEnvelope) {
    const auto r = run({"plot", sample("triangle.net"), "--edge", "AB"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(count(r.out, "class=\"phi\""), 3u);
    EXPECT_EQ(count(r.out, "class=\"envelope\""), 1u);
    EXPECT_EQ(count(r.out, "<svg "), 1u);
}

TEST(Cli, Verify) {
    const auto r = run({"verify", sample("square-pendants.net"), "--samples", "200", "--points", "40"});
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_EQ(count(r.out, "FAIL"), 0u);
    EXPECT_GT(count(r.out, "PASS"), 5u);
}
