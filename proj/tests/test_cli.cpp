#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "bruhat/cli.hpp"

using namespace bruhat;
namespace fs = std::filesystem;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::size_t occurrences(const std::string& s, const std::string& needle) {
    std::size_t n = 0;
    for (std::size_t at = 0; (at = s.find(needle, at)) != std::string::npos; ++at) ++n;
    return n;
}

}  // namespace

TEST(Cli, AnalyzeWorkedExample) {
    const CliRun r = cli({"--json", "analyze", "4132"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j.at("gf_below"), "1 + 2*q + 2*q^2 + 2*q^3 + q^4");
    EXPECT_EQ(j.at("gf_above"), "1 + q + q^2");
    EXPECT_EQ(j.at("product_is_qfactorial"), true);
    EXPECT_EQ(j.at("separable"), true);
    EXPECT_EQ(j.at("length"), 4);
    EXPECT_EQ(j.at("descents"), (std::vector<int>{1, 3}));
}

TEST(Cli, AnalyzeIdentityAndNonSeparable) {
    auto j = nlohmann::json::parse(cli({"analyze", "1234", "--json"}).out);
    EXPECT_EQ(j.at("gf_below"), "1");
    j = nlohmann::json::parse(cli({"analyze", "2413", "--json"}).out);
    EXPECT_EQ(j.at("separable"), false);
    EXPECT_EQ(j.at("product_is_qfactorial"), false);
    EXPECT_EQ(j.at("gf_below"), "1 + 2*q + q^2 + q^3");
    EXPECT_EQ(j.at("gf_above"), "1 + 2*q + q^2 + q^3");
}

TEST(Cli, AnalyzeTextTable) {
    const CliRun r = cli({"analyze", "4132"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("gf_above              1 + q + q^2"), std::string::npos);
}

TEST(Cli, AnalyzeReproducesRankSizesOfS4) {
    std::map<int, int> per_rank;
    for_each_permutation(4, [&](const Permutation& p) {
        const auto j = nlohmann::json::parse(cli({"--json", "analyze", p.to_string()}).out);
        ++per_rank[j.at("length").get<int>()];
    });
    EXPECT_EQ(per_rank, (std::map<int, int>{{0, 1}, {1, 3}, {2, 5}, {3, 6}, {4, 5}, {5, 3}, {6, 1}}));
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(cli({"analyze", "1224"}).code, 2);
    EXPECT_EQ(cli({"analyze"}).code, 2);
    EXPECT_EQ(cli({}).code, 2);
    EXPECT_EQ(cli({"frobnicate"}).code, 2);
    EXPECT_EQ(cli({"verify", "no-such-suite"}).code, 2);
    EXPECT_EQ(cli({"interval", "4132", "--side", "sideways"}).code, 2);
    EXPECT_EQ(cli({"bijection", "4132", "--invert", "12"}).code, 1);
    EXPECT_EQ(cli({"--help"}).code, 0);
}

TEST(Cli, TreeDotForExample) {
    const CliRun r = cli({"tree", "4231", "--dot"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(occurrences(r.out, "Negative"), 2u);
    EXPECT_EQ(occurrences(r.out, "Positive"), 1u);
    const CliRun j = cli({"--json", "tree", "4231"});
    EXPECT_EQ(nlohmann::json::parse(j.out).at("sign"), "negative");
    EXPECT_EQ(cli({"tree", "4231"}).out, "- [1..4]\n  4\n  - [1..3]\n    + [2..3]\n      2\n      3\n    1\n");
    const CliRun bad = cli({"tree", "2413"});
    EXPECT_EQ(bad.code, 1);
    EXPECT_NE(bad.err.find("2413"), std::string::npos);
}

TEST(Cli, Interval) {
    CliRun r = cli({"interval", "4132", "--side", "above", "--gf"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "1 + q + q^2\n");
    r = cli({"interval", "4132", "--gf"});
    EXPECT_EQ(r.out, "1 + 2*q + 2*q^2 + 2*q^3 + q^4\n");
    r = cli({"interval", "4132", "--dot"});
    EXPECT_EQ(occurrences(r.out, "->"), cover_edges(lower_interval(Permutation::parse("4132"))).size());
    r = cli({"--json", "interval", "4132", "--side", "above"});
    EXPECT_EQ(nlohmann::json::parse(r.out).at("ranks").size(), 3u);
    r = cli({"interval", "12345678901"});
    EXPECT_EQ(r.code, 2);
    r = cli({"interval", "1,2,3,4,5,6,7,8,9,10,11"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("--force"), std::string::npos);
    r = cli({"interval", "1,2,3,4,5,6,7,8,9,10,11", "--force", "--gf"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.err.find("estimated memory"), std::string::npos);
}

TEST(Cli, VerifyMainTheorem) {
    const CliRun r = cli({"verify", "main-theorem", "--n", "5"});
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("[90 checked]"), std::string::npos) << r.out;
    EXPECT_EQ(occurrences(r.out, "FAIL"), 0u);
    const CliRun six = cli({"verify", "main-theorem", "--n", "6"});
    EXPECT_EQ(six.code, 0);
    EXPECT_NE(six.out.find("[394 checked]"), std::string::npos) << six.out;
}

TEST(Cli, VerifyEverySuiteSmall) {
    for (const auto& [name, fn] : verification_suites()) {
        const CliRun r = cli({"--json", "verify", name, "--n", "4"});
        EXPECT_EQ(r.code, 0) << name << "\n" << r.out << r.err;
        const auto j = nlohmann::json::parse(r.out);
        EXPECT_EQ(j.at("passed"), true) << name;
        for (const auto& p : j.at("properties")) EXPECT_GT(p.at("checked").get<int>(), 0) << name;
    }
}

TEST(Cli, VerifyGuard) {
    const CliRun r = cli({"verify", "ff", "--n", "9"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("--force"), std::string::npos);
}

TEST(Cli, Survey) {
    const fs::path dir = fs::temp_directory_path() / "bruhat_cli_survey";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const CliRun r = cli({"--json", "survey", "--n", "5", "--out", (dir / "s.csv").string(), "--summary",
                       (dir / "sum.json").string(), "--witnesses", (dir / "w.json").string(), "--threads", "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(nlohmann::json::parse(r.out).at("count_separable"), 90);
    std::ifstream sum(dir / "sum.json");
    EXPECT_EQ(nlohmann::json::parse(sum).at("total"), 120);
    std::ifstream w(dir / "w.json");
    EXPECT_EQ(nlohmann::json::parse(w).at("n"), 5);
    EXPECT_TRUE(fs::exists(dir / "s.csv"));
    EXPECT_EQ(cli({"survey", "--n", "9"}).code, 1);
    EXPECT_EQ(cli({"survey", "--n", "4", "--resume"}).code, 2);
    const CliRun text = cli({"survey", "--n", "4"});
    EXPECT_NE(text.out.find("separable                     22"), std::string::npos) << text.out;
    fs::remove_all(dir);
}

TEST(Cli, Bijection) {
    CliRun r = cli({"bijection", "4132", "--check"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("bijection: yes"), std::string::npos);
    r = cli({"bijection", "2413", "--check"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("domain: 25"), std::string::npos);
    r = cli({"bijection", "4132"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out.rfind("u,v,w\n", 0), 0u);
    EXPECT_EQ(occurrences(r.out, "\n"), 25u);
    r = cli({"bijection", "4132", "--invert", "1234"});
    EXPECT_EQ(r.out, "4132 4132\n");
    r = cli({"bijection", "21", "--invert", "21", "--json"});
    EXPECT_EQ(nlohmann::json::parse(r.out).at("u"), "12");
    r = cli({"bijection", "2413", "--invert", "1234"});
    EXPECT_EQ(r.code, 1);
    r = cli({"bijection", "4132", "--invert", "2143", "--map", "phi-prime"});
    std::istringstream uv(r.out);
    std::string u, v;
    uv >> u >> v;
    EXPECT_EQ(phi_prime(Permutation::parse(u), Permutation::parse(v)), Permutation::parse("2143"));
}

TEST(Cli, Deterministic) {
    for (const std::vector<std::string>& args :
         {std::vector<std::string>{"interval", "35142", "--dot"}, {"bijection", "4132"}, {"tree", "532146", "--json"}}) {
        EXPECT_EQ(cli(args).out, cli(args).out);
    }
}
