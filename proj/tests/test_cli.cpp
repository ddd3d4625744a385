#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "fibc_cli.hpp"

using namespace fibc;

namespace {

struct CliRun {
    int code;
    std::string out, err;
};

CliRun fibc_run(std::vector<std::string> args) {
    args.insert(args.begin(), "fibc");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(int(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path tmpdir() {
    auto d = std::filesystem::temp_directory_path() / "fibc_cli_test";
    std::filesystem::create_directories(d);
    return d;
}

}  // namespace

TEST(Cli, BasisDimension) {
    const CliRun r = fibc_run({"basis", "--anyons", "12", "--charge", "vac", "--list"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out.rfind("dimension 89\n", 0), 0u);
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 90);
}

TEST(Cli, EvalTenthPowerIsIdentity) {
    const CliRun r = fibc_run({"eval", "--anyons", "3", "--charge", "tau", "--word", "s1^10", "--target", "I"});
    ASSERT_EQ(r.code, 0) << r.err;
    const json j = json::parse(r.out);
    EXPECT_LT(j["results"][0]["distance"].get<double>(), 1e-10);
    EXPECT_LT(max_abs(matrix_from_json(j["results"][0]["matrix"]) - Mat::Identity(2, 2)), 1e-10);
}

TEST(Cli, ShardedSearchMergesToUnsharded) {
    const auto d = tmpdir();
    std::vector<std::string> files;
    for (int k = 0; k < 4; ++k) {
        const std::string f = (d / ("r" + std::to_string(k) + ".json")).string();
        const CliRun r = fibc_run({"search", "--target", "iX", "--length", "16", "--weave", "--endpoint", "same", "--shard", std::to_string(k) + "/4",
                                "--top", "8", "--out", f});
        ASSERT_EQ(r.code, 0) << r.err;
        files.push_back(f);
    }
    std::vector<std::string> margs = {"merge"};
    margs.insert(margs.end(), files.begin(), files.end());
    margs.insert(margs.end(), {"--top", "8"});
    const CliRun m = fibc_run(margs);
    ASSERT_EQ(m.code, 0) << m.err;
    const CliRun u = fibc_run({"search", "--target", "iX", "--length", "16", "--weave", "--endpoint", "same", "--top", "8", "--threads", "2"});
    ASSERT_EQ(u.code, 0) << u.err;
    const json jm = json::parse(m.out), ju = json::parse(u.out);
    EXPECT_EQ(jm["candidates"], ju["candidates"]);
    EXPECT_EQ(jm["enumerated_count"], ju["enumerated_count"]);

    // eval of a printed word reproduces its recorded error
    const std::string w = ju["candidates"][0]["word"];
    const CliRun e = fibc_run({"eval", "--anyons", "3", "--charge", "tau", "--word", w, "--target", "iX"});
    ASSERT_EQ(e.code, 0) << e.err;
    EXPECT_NEAR(json::parse(e.out)["results"][0]["distance"].get<double>(), ju["candidates"][0]["error"].get<double>(), 1e-12);
}

TEST(Cli, WordsFileBatch) {
    const auto f = (tmpdir() / "words.txt").string();
    write_text_file(f, "# comment\ns1^2 s2^2\n\ns2^-4\n");
    const CliRun r = fibc_run({"eval", "--words-file", f});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(json::parse(r.out)["results"].size(), 2u);
}

TEST(Cli, ErrorsAreSingleLineWithExitCodes) {
    const std::vector<std::pair<std::vector<std::string>, int>> cases = {
        {{"frobnicate"}, 2},
        {{"eval", "--word", "s1^x"}, 2},
        {{"eval", "--words-file", "/nonexistent/words.txt"}, 2},
        {{"search", "--target", "iX", "--length", "8", "--shard", "4/4"}, 2},
        {{"search", "--target", "iX", "--length", "8", "--shard", "x"}, 2},
        {{"search", "--target", "iX", "--length", "1", "--weave"}, 1},
        {{"merge", "/nonexistent/a.json"}, 2},
        {{"build", "--kind", "m", "--r", "I"}, 2},
        {{"heatmap", "--preset", "m-identity-ix"}, 2},
    };
    for (const auto& [args, code] : cases) {
        const CliRun r = fibc_run(args);
        EXPECT_EQ(r.code, code) << args.front() << ": " << r.err;
        EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1) << r.err;
        EXPECT_EQ(r.err.rfind("fibc: ", 0), 0u);
    }
}

TEST(Cli, BuildScoreAndHeatmap) {
    const auto d = tmpdir();
    const std::string circ = (d / "m.json").string(), img = (d / "m.ppm").string();
    ASSERT_EQ(fibc_run({"build", "--kind", "m", "--r", "X", "--i", "I", "--s", "iX", "--out", circ}).code, 0);
    const CliRun s = fibc_run({"score", "--circuit", circ});
    ASSERT_EQ(s.code, 0) << s.err;
    EXPECT_LT(json::parse(s.out)["overall_error"].get<double>(), 1e-9);
    const CliRun h = fibc_run({"heatmap", "--circuit", circ, "--out", img});
    ASSERT_EQ(h.code, 0) << h.err;
    EXPECT_EQ(std::filesystem::file_size(img), std::string("P6\n8 8\n255\n").size() + 8 * 8 * 3);
}

TEST(Cli, ReportIsByteIdentical) {
    const auto d = tmpdir();
    const std::string a = (d / "a.md").string(), b = (d / "b.md").string();
    ASSERT_EQ(fibc_run({"report", "--L", "48", "--out", a}).code, 0);
    ASSERT_EQ(fibc_run({"report", "--L", "48", "--out", b}).code, 0);
    auto slurp = [](const std::string& p) {
        std::ifstream in(p);
        return std::string(std::istreambuf_iterator<char>(in), {});
    };
    EXPECT_EQ(slurp(a), slurp(b));
    EXPECT_EQ(slurp(a + ".json"), slurp(b + ".json"));
    EXPECT_NE(slurp(a).find("| Length at L=48 | 1472 | 1200 |"), std::string::npos);
}

TEST(Cli, ProfileFileOverride) {
    const auto f = (tmpdir() / "left.json").string();
    write_text_file(f, R"({"handedness":"left","reading_order":"printed-left-last","weft_embedding":"reflected"})");
    const CliRun r = fibc_run({"--profile", f, "eval", "--word", "s1^1"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(json::parse(r.out)["profile"]["handedness"], "left");
    write_text_file(f, "{}");
    EXPECT_EQ(fibc_run({"--profile", f, "eval", "--word", "s1^1"}).code, 2);
}

TEST(Cli, RoleParsing) {
    const Role d = cli::parse_role("deutsch:0.3");
    EXPECT_TRUE(d.is_exact());
    EXPECT_NEAR(std::abs(d.target(0, 1) - std::sin(0.3)), 0, 1e-15);
    const Role w = cli::parse_role("iX:s1^2 s2^-2");
    EXPECT_FALSE(w.is_exact());
    EXPECT_THROW(cli::parse_role("bogus"), InvalidInput);
}
