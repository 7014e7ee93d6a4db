#include "cli.hpp"

#include "procevo/generator.hpp"
#include "procevo/text_io.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <sstream>

namespace procevo {
namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        GeneratorConfig config;
        config.seed = 3;
        config.version_count = 15;
        config.malformed_versions = {6};
        text_io::write_file(dir_.path() / "gen.conf", config.to_text());
        corpus_ = (dir_.path() / "corpus").string();
        repo_ = (dir_.path() / "repo").string();
    }

    void ingest() {
        ASSERT_EQ(call({"generate", "--config", (dir_.path() / "gen.conf").string(), "--out", corpus_}).code, 0);
        const Result r = call({"ingest", corpus_, "--repo", repo_});
        ASSERT_EQ(r.code, 0) << r.err;
        ASSERT_EQ(r.out.rfind("attempted=15 loaded=14 failed=1", 0), 0u) << r.out;
    }

    testing::TempDir dir_;
    std::string corpus_;
    std::string repo_;
};

TEST_F(CliTest, UsageErrorsExitTwo) {
    EXPECT_EQ(call({}).code, cli::kExitUsageError);
    EXPECT_EQ(call({"frobnicate"}).code, cli::kExitUsageError);
    EXPECT_EQ(call({"diff", "--repo", repo_, "--base", "1"}).code, cli::kExitUsageError);
    EXPECT_EQ(call({"diff", "--repo", repo_, "--base", "x", "--target", "2"}).code, cli::kExitUsageError);
    EXPECT_EQ(call({"metrics", "--repo", repo_, "--metric", "beauty"}).code, cli::kExitUsageError);
    EXPECT_EQ(call({"--help"}).code, cli::kExitOk);
}

TEST_F(CliTest, DomainErrorsExitOne) {
    EXPECT_EQ(call({"list", "--repo", repo_}).code, cli::kExitDomainError);
    EXPECT_EQ(call({"ingest", (dir_.path() / "nothing").string(), "--repo", repo_}).code, cli::kExitDomainError);
    ingest();
    EXPECT_EQ(call({"diff", "--repo", repo_, "--base", "1", "--target", "6"}).code, cli::kExitDomainError);
    EXPECT_EQ(call({"metrics", "--repo", repo_, "--metric", "changes"}).code, cli::kExitDomainError);
    text_io::write_file(dir_.path() / "bad.rq", "SELECT ?x { ?x ?p }");
    const Result q = call({"query", "--repo", repo_, "--version", "1", "--query", (dir_.path() / "bad.rq").string()});
    EXPECT_EQ(q.code, cli::kExitDomainError);
    EXPECT_NE(q.err.find("bad.rq"), std::string::npos);
}

TEST_F(CliTest, DiffOfAVersionWithItselfIsAllCommon) {
    ingest();
    const Result r = call({"diff", "--repo", repo_, "--base", "3", "--target", "3"});
    ASSERT_EQ(r.code, 0);
    ASSERT_FALSE(r.out.empty());
    std::istringstream lines(r.out);
    for (std::string line; std::getline(lines, line);) EXPECT_EQ(line.substr(0, 2), "= ");
}

TEST_F(CliTest, DetectThenMetrics) {
    ingest();
    ASSERT_EQ(call({"detect", "--repo", repo_}).code, 0);
    const Result csv = call({"export", "--repo", repo_, "--changes"});
    EXPECT_EQ(csv.out, text_io::read_file(std::filesystem::path(corpus_) / "groundtruth.csv"));
    const Result m = call({"metrics", "--repo", repo_, "--metric", "changes", "--x", "time"});
    ASSERT_EQ(m.code, 0) << m.err;
    EXPECT_EQ(m.out.rfind("metric,group,x,value\n", 0), 0u);
    const std::string svg = (dir_.path() / "c.svg").string();
    EXPECT_EQ(call({"plot", "--repo", repo_, "--metric", "complexity", "--out", svg}).code, 0);
    EXPECT_NE(text_io::read_file(svg).find("<svg"), std::string::npos);
    EXPECT_EQ(call({"metrics", "--repo", repo_, "--metric", "matrix", "--module", "m01"}).code, 0);
}

TEST_F(CliTest, QueryOnComparison) {
    ingest();
    text_io::write_file(dir_.path() / "q.rq", "SELECT ?e { ?e schema:type ?t ONLYTARGET }");
    const Result r =
        call({"query", "--repo", repo_, "--base", "1", "--target", "2", "--query", (dir_.path() / "q.rq").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.rfind("?e\n", 0), 0u);
}

} // namespace
} // namespace procevo
