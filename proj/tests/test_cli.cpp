#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "imgnn/cli.hpp"

namespace fs = std::filesystem;

namespace {

int run(std::initializer_list<std::string> args) {
    std::vector<std::string> argv_s{"imgnn"};
    argv_s.insert(argv_s.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_s) argv.push_back(a.c_str());
    return imgnn::run_cli(static_cast<int>(argv.size()), argv.data());
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string str(const std::string& leaf = "") const {
        return leaf.empty() ? path.string() : (path / leaf).string();
    }
};

}  // namespace

TEST_CASE("unknown subcommands and flags exit 2") {
    CHECK(run({"frobnicate"}) == 2);
    CHECK(run({"stats", "--no-such-flag"}) == 2);
    CHECK(run({}) == 2);
}

TEST_CASE("missing inputs exit 1") {
    CHECK(run({"stats", "--input", "/nonexistent/file.edges"}) == 1);
    CHECK(run({"rank", "--input", "ba:20:2", "--method", "nope"}) == 1);
}

TEST_CASE("stats and generator specs work end to end") {
    TempDir dir("imgnn_cli_stats");
    CHECK(run({"stats", "--input", "ba:30:2:5", "--save", dir.str("g.edges")}) == 0);
    CHECK(fs::exists(dir.str("g.edges")));
    CHECK(run({"stats", "--input", dir.str("g.edges")}) == 0);
}

TEST_CASE("oracle subcommand runs on a small file") {
    TempDir dir("imgnn_cli_oracle");
    {
        std::ofstream out(dir.str("p3.edges"));
        out << "0 1\n1 2\n";
    }
    CHECK(run({"oracle", "--input", dir.str("p3.edges"), "--mu", "1.0",
               "--runs", "1"}) == 0);
}

TEST_CASE("full pipeline: gen-data, train, score, rank, evaluate") {
    TempDir dir("imgnn_cli_pipeline");
    CHECK(run({"gen-data", "--out", dir.str("corpus"), "--ratio", "1.5",
               "--runs", "100", "--group", "er:8:0.3:4", "--seed", "7"}) == 0);
    CHECK(fs::exists(dir.str("corpus/manifest.json")));

    CHECK(run({"train", "--corpus", dir.str("corpus"), "--out", dir.str("model.json"),
               "--epochs", "2", "--log", dir.str("train.csv"), "--seed", "1"}) == 0);
    CHECK(fs::exists(dir.str("model.json")));
    CHECK(fs::exists(dir.str("train.csv")));

    CHECK(run({"score", "--input", "ba:20:2:3", "--model", dir.str("model.json"),
               "--out", dir.str("scores.csv")}) == 0);
    CHECK(fs::exists(dir.str("scores.csv")));

    CHECK(run({"rank", "--input", "ba:20:2:3", "--method", "imgnn", "--model",
               dir.str("model.json"), "--out", dir.str("rank.csv")}) == 0);

    CHECK(run({"evaluate", "--network", "ba:40:2:3", "--method", "imgnn",
               "--model", dir.str("model.json"), "--mu-ratio", "1.5",
               "--runs", "50"}) == 0);
}

TEST_CASE("baseline and sweep subcommands") {
    TempDir dir("imgnn_cli_sweep");
    CHECK(run({"baseline", "--input", "ba:20:2:3", "--method", "voterank",
               "--k", "5", "--out", dir.str("trace.csv")}) == 0);
    CHECK(fs::exists(dir.str("trace.csv")));

    CHECK(run({"sweep", "--networks", "ba:30:2:3", "--methods", "degree",
               "--methods", "pagerank", "--ratios", "1.5", "--out",
               dir.str("run"), "--runs", "30"}) == 0);
    CHECK(fs::exists(dir.str("run/records.csv")));
    CHECK(fs::exists(dir.str("run/manifest.json")));
}

TEST_CASE("config files supply defaults per subcommand section") {
    TempDir dir("imgnn_cli_config");
    {
        std::ofstream cfg(dir.str("cfg.ini"));
        cfg << "[stats]\ninput=ba:25:2:4\n";
    }
    CHECK(run({"--config", dir.str("cfg.ini"), "stats"}) == 0);
    // Unknown config key -> config error exit code.
    {
        std::ofstream cfg(dir.str("bad.ini"));
        cfg << "[stats]\nno_such_option=1\n";
    }
    CHECK(run({"--config", dir.str("bad.ini"), "stats", "--input", "ba:10:2"}) == 1);
}
