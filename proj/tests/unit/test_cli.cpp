#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "treepack/cli.hpp"

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "treepack");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = treepack::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string data(const char* name) { return std::string(TREEPACK_DATA_DIR) + "/" + name; }

std::filesystem::path scratch() {
    auto dir = std::filesystem::temp_directory_path() / "treepack_cli_test";
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("estimate-degree on the star") {
    auto r = run({"estimate-degree", "--eps", "0.1", "--seed", "1", "--format", "text", data("star6.st")});
    CHECK(r.code == 0);
    CHECK(r.out == "B=5\n");
    auto j = nlohmann::json::parse(run({"estimate-degree", data("star6.st")}).out);
    CHECK(j["bound"] == 5);
    CHECK(j["schema"] == 1);
}

TEST_CASE("solve-lp exit codes") {
    auto bad = run({"solve-lp", "--eps", "0.1", data("star6_center1.st")});
    CHECK(bad.code == 1);
    auto j = nlohmann::json::parse(bad.out);
    CHECK(j["status"] == "Infeasible");
    CHECK(j["report"]["certified_infeasible"] == true);

    auto ok = run({"solve-lp", data("k4.st")});
    CHECK(ok.code == 0);
    CHECK(nlohmann::json::parse(ok.out)["status"] == "Feasible");
}

TEST_CASE("round on K3 gives two-thirds marginals") {
    auto r = run({"round", "--trials", "1000", "--seed", "7", data("k3.st")});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    for (const auto& m : j["marginals"]) {
        double f = m["empirical"].get<double>();
        CHECK(std::abs(f - 2.0 / 3) < 0.07);
    }
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"solve-lp", "--eps", "1.5", data("k4.st")}).code == 2);
    CHECK(run({"solve-lp", data("missing.st")}).code == 2);
    CHECK(run({"solve-lp", "--merge-backend", "fast", data("k4.st")}).code == 2);
    CHECK(run({"solve-lp", "--dynmst-backend", "fast", data("k4.st")}).code == 2);
    CHECK(run({"solve-lp", "--format", "xml", data("k4.st")}).code == 2);
    CHECK(run({"oracle", "--limit", "10", data("k4.st")}).code == 2);

    auto dir = scratch();
    std::ofstream(dir / "bad.st") << "p st 2 1 1\ne 0 0 1 0\nr 0 1\na 0 0 1.5\n";
    auto r = run({"solve-lp", (dir / "bad.st").string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("line 4") != std::string::npos);
    CHECK(r.err.find("coefficient out of range") != std::string::npos);
}

TEST_CASE("json output is byte-identical per seed") {
    for (const char* verb : {"solve-lp", "round", "crossing", "bdst", "sparsify"}) {
        auto a = run({verb, "--seed", "3", "--trials", "5", data("k10.st")});
        auto b = run({verb, "--seed", "3", "--trials", "5", data("k10.st")});
        CHECK(a.code == b.code);
        CHECK(a.out == b.out);
    }
    auto t1 = run({"crossing", "--seed", "3", "--trials", "12", "--jobs", "1", data("k10.st")});
    auto t4 = run({"crossing", "--seed", "3", "--trials", "12", "--jobs", "4", data("k10.st")});
    CHECK(t1.out == t4.out);
}

TEST_CASE("oracle verb") {
    auto j = nlohmann::json::parse(run({"oracle", data("petersen.st")}).out);
    CHECK(j["trees"] == 2000);
    CHECK(j["counts_match"] == true);
    CHECK(j["min_max_degree"] == 2);
}

TEST_CASE("min-degree and bdst verbs") {
    auto md = nlohmann::json::parse(run({"min-degree", data("petersen.st")}).out);
    CHECK(md["tree"]["max_degree"].get<int>() <= 3);
    auto nu = run({"min-degree", "--nonuniform", data("star6_center1.st")});
    CHECK(nu.code == 1);  // missing rows default to n-1; the center row is infeasible
    auto st = run({"min-degree", "--nonuniform", data("star6.st")});
    CHECK(st.code == 0);
    auto bd = run({"bdst", data("k10.st")});
    CHECK(bd.code == 0);
    auto j = nlohmann::json::parse(bd.out);
    CHECK(j["tree"]["max_degree"].get<int>() <= j["report"]["guarantee"].get<int>());
}

TEST_CASE("decompose writes a file that round reads back") {
    auto dir = scratch();
    auto dec = (dir / "k4.dec").string();
    auto r = run({"decompose", "--out", dec, data("k4.st")});
    REQUIRE(r.code == 0);
    auto back = run({"round", "--decomposition", dec, "--trials", "1", data("k4.st")});
    CHECK(back.code == 0);
    auto j = nlohmann::json::parse(back.out);
    CHECK(j["tree"]["edges"].size() == 3);

    std::ofstream(dir / "x.txt") << "x 0 0.4\nx 1 0.4\nx 2 0.4\n";
    auto np = run({"decompose", "--x", (dir / "x.txt").string(), data("k3.st")});
    CHECK(np.code == 1);
    std::ofstream(dir / "broken.dec") << "d 3 2\nb 0 1\ns 0.5 | |\ns 0.5 | 0 | 0\n";
    CHECK(run({"round", "--decomposition", (dir / "broken.dec").string(), data("k3.st")}).code == 2);
}

TEST_CASE("gen, solve-mincost and text formats") {
    auto g1 = run({"gen", "--kind", "random_gnm", "--n", "20", "--m", "50", "--seed", "7", "--format", "text"});
    auto g2 = run({"gen", "--kind", "random_gnm", "--n", "20", "--m", "50", "--seed", "7", "--format", "text"});
    CHECK(g1.code == 0);
    CHECK(g1.out == g2.out);
    CHECK(g1.out.rfind("p st 20 50", 0) == 0);
    CHECK(run({"gen", "--kind", "random_gnm", "--n", "20", "--m", "5"}).code == 2);

    auto mc = nlohmann::json::parse(run({"solve-mincost", data("c4_chord.st")}).out);
    CHECK(mc["status"] == "Feasible");
    CHECK(mc["report"]["lp_cost"].get<double>() <= 3.3 + 1e-9);

    auto timing = nlohmann::json::parse(run({"solve-lp", "--timing", data("k4.st")}).out);
    CHECK(timing["report"].contains("wall_ms"));
    auto plain = nlohmann::json::parse(run({"solve-lp", data("k4.st")}).out);
    CHECK_FALSE(plain["report"].contains("wall_ms"));
}
