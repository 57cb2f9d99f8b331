#include "cli.hpp"

#include "capedu/csv.hpp"

#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "capedu");
    std::ostringstream out, err;
    const int code = capedu::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string scenario(const std::string& name) {
    return std::string(CAPEDU_SCENARIO_DIR) + "/" + name;
}

std::string value_of(const std::string& text, const std::string& key) {
    const auto pos = text.find(key + "=");
    REQUIRE(pos != std::string::npos);
    const auto start = pos + key.size() + 1;
    return text.substr(start, text.find('\n', start) - start);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("capedu_cli_" + std::to_string(reinterpret_cast<std::uintptr_t>(this)) + "_" +
                std::to_string(std::rand()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string operator/(const std::string& name) const { return (path / name).string(); }
};

void write(const std::string& path, const std::string& text) {
    std::ofstream(path, std::ios::binary) << text;
}

} // namespace

TEST_CASE("equilibrium prints the reference fixed point") {
    const Result r = run({"equilibrium", "--scenario", scenario("fig1.json")});
    REQUIRE(r.code == 0);
    CHECK(value_of(r.out, "K0") == "3.8055");
    CHECK(value_of(r.out, "E0") == "0.5708");
    CHECK(value_of(r.out, "Y0") == "1.4271");
    CHECK(value_of(r.out, "eigenvalues") == "-0.0763,-0.2212");
    CHECK(value_of(r.out, "class") == "StableNode");

    const Result manifold = run({"equilibrium", "--scenario", scenario("manifold.json")});
    CHECK(value_of(manifold.out, "invariant_manifold") == "K=4*E");

    const Result controlled =
        run({"equilibrium", "--scenario", scenario("fig4a_p040.json"), "--precision", "3"});
    REQUIRE(controlled.code == 0);
    CHECK(value_of(controlled.out, "Y0") == "1.942");
    CHECK(value_of(controlled.out, "C0") == "0.777");
}

TEST_CASE("simulate writes the trajectory CSV") {
    TempDir dir;
    const Result r = run({"simulate", "--scenario", scenario("fig2_left_sr010.json"), "--out",
                          dir / "t.csv", "--svg", dir / "t.svg"});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    const std::string csv = slurp(dir / "t.csv");
    const capedu::Trajectory t = capedu::read_trajectory_csv(csv);
    CHECK(t.t.back() == 200.0);
    CHECK(std::abs(t.Y.back() - 1.43) <= 0.01);
    CHECK(slurp(dir / "t.svg").find("</svg>") != std::string::npos);

    SUBCASE("stdout and file output agree, reruns are byte-identical") {
        const Result again = run({"simulate", "--scenario", scenario("fig2_left_sr010.json")});
        CHECK(again.out == csv + "\n");
        CHECK(run({"simulate", "--scenario", scenario("fig2_left_sr010.json")}).out == again.out);
    }
}

TEST_CASE("sweep over delta_r") {
    const Result r = run({"sweep", "--scenario", scenario("fig2c_dr025.json"), "--param",
                          "delta_r", "--values", "0.25,0.15", "--at", "200", "--jobs", "2"});
    REQUIRE(r.code == 0);
    std::istringstream lines(r.out);
    std::string header, first, second;
    std::getline(lines, header);
    std::getline(lines, first);
    std::getline(lines, second);
    CHECK(header == "value,Y,C,error");
    CHECK(first.rfind("0.25,1.42", 0) == 0);
    CHECK(second.rfind("0.15,1.79", 0) == 0);

    const Result bad = run({"sweep", "--scenario", scenario("fig2c_dr025.json"), "--param",
                            "delta_r", "--values", "0.25,abc"});
    CHECK(bad.code == 1);
    const Result unknown = run({"sweep", "--scenario", scenario("fig2c_dr025.json"), "--param",
                                "gamma", "--values", "0.25"});
    CHECK(unknown.code == 2);
}

TEST_CASE("tipping reports p_star") {
    const Result r = run({"tipping", "--scenario", scenario("fig4a_p047.json")});
    REQUIRE(r.code == 0);
    CHECK(std::abs(std::stod(value_of(r.out, "p_star")) - 0.466) <= 0.005);
    CHECK(value_of(r.out, "horizon") == "200");

    const Result narrow = run({"tipping", "--scenario", scenario("fig4a_p047.json"), "--p-min",
                               "0.30", "--p-max", "0.35"});
    CHECK(narrow.code == 3);
    CHECK(narrow.err.find("error:") != std::string::npos);

    const Result basic = run({"tipping", "--scenario", scenario("fig1.json")});
    CHECK(basic.code == 2);
}

TEST_CASE("chaos prints the running average") {
    const Result r = run({"chaos", "--horizon", "100"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("A(100)=", 0) == 0);
    CHECK(std::abs(std::stod(value_of(r.out, "A(100)")) - 0.14) <= 0.05);

    TempDir dir;
    const Result with_csv = run({"chaos", "--horizon", "1", "--out", dir / "x.csv"});
    REQUIRE(with_csv.code == 0);
    const std::string csv = slurp(dir / "x.csv");
    CHECK(csv.rfind("t,x,y,z,A\n0,0.5,0,0,\n0.01,", 0) == 0);
    CHECK(run({"chaos", "--horizon", "1e2"}).out == r.out);
}

TEST_CASE("phase writes field samples and orbits") {
    TempDir dir;
    const Result r = run({"phase", "--scenario", scenario("fig1.json"), "--grid", "3x2",
                          "--horizon", "50", "--out", dir / "p.csv", "--svg", dir / "p.svg"});
    REQUIRE(r.code == 0);
    const std::string csv = slurp(dir / "p.csv");
    CHECK(csv.rfind("record,index,t,K,E,dK,dE\n", 0) == 0);
    std::size_t field_rows = 0;
    for (std::size_t pos = csv.find("\nfield,"); pos != std::string::npos;
         pos = csv.find("\nfield,", pos + 1))
        ++field_rows;
    CHECK(field_rows == 6);
    CHECK(slurp(dir / "p.svg").find("equilibrium") != std::string::npos);

    CHECK(run({"phase", "--scenario", scenario("fig1.json"), "--grid", "three"}).code == 1);
    CHECK(run({"phase", "--scenario", scenario("fig1.json"), "--k-range", "-1,2"}).code == 3);
}

TEST_CASE("plot renders several CSVs") {
    TempDir dir;
    for (const char* p : {"040", "047", "055"}) {
        const std::string name = std::string("fig4a_p") + p;
        REQUIRE(run({"simulate", "--scenario", scenario(name + ".json"), "--out",
                     dir / (name + ".csv")})
                    .code == 0);
    }
    const Result r = run({"plot", "--csv", dir / "fig4a_p040.csv", "--csv", dir / "fig4a_p047.csv",
                          "--csv", dir / "fig4a_p055.csv", "--column", "C", "--out",
                          dir / "c.svg"});
    REQUIRE(r.code == 0);
    const std::string svg = slurp(dir / "c.svg");
    CHECK(svg.find("fig4a_p047") != std::string::npos);
    CHECK(run({"plot", "--csv", dir / "fig4a_p040.csv", "--column", "nope"}).code == 1);
    CHECK(run({"plot", "--csv", dir / "missing.csv"}).code == 1);
}

TEST_CASE("help and usage errors") {
    for (const char* sub : {"simulate", "equilibrium", "sweep", "tipping", "chaos", "phase", "plot"}) {
        CAPTURE(sub);
        const Result r = run({sub, "--help"});
        CHECK(r.code == 0);
        CHECK(r.out.find("--") != std::string::npos);
    }
    const Result sweep_help = run({"sweep", "--help"});
    for (const char* flag : {"--scenario", "--param", "--values", "--at", "--jobs", "--out"})
        CHECK(sweep_help.out.find(flag) != std::string::npos);

    CHECK(run({}).code == 1);
    CHECK(run({"frobnicate"}).code == 1);
    CHECK(run({"simulate"}).code == 1);
    CHECK(run({"chaos", "--horizon", "1,5"}).code == 1);
    CHECK(run({"simulate", "--scenario", "/nonexistent/x.json"}).code == 1);
}

TEST_CASE("failures leave no output file") {
    TempDir dir;
    write(dir / "bad.json", R"({"kind": "basic"})");
    const Result parse = run({"simulate", "--scenario", dir / "bad.json", "--out", dir / "o.csv"});
    CHECK(parse.code == 2);
    CHECK(parse.err.find("error:") != std::string::npos);
    CHECK_FALSE(fs::exists(dir / "o.csv"));

    // increasing returns from a huge start blow up in finite time
    write(dir / "blowup.json", R"({
  "kind": "basic",
  "params": {"s_k": 0.5, "s_r": 0.5, "delta_k": 0.01, "delta_r": 0.01, "alpha": 0.9, "beta": 0.9},
  "initial": {"K": 1e6, "E": 1e6},
  "horizon": 1000,
  "sample_step": 1,
  "integrator": {"rel_tol": 1e-8, "abs_tol": 1e-10, "max_steps": 2000}
})");
    const Result numeric =
        run({"simulate", "--scenario", dir / "blowup.json", "--out", dir / "o.csv"});
    CHECK(numeric.code == 3);
    CHECK(numeric.err.find("alpha + beta") != std::string::npos);
    CHECK_FALSE(fs::exists(dir / "o.csv"));
    CHECK_FALSE(fs::exists(dir / "o.csv.tmp"));

    write(dir / "ak.json", R"({
  "kind": "basic",
  "params": {"s_k": 0.4, "s_r": 0.1, "delta_k": 0.15, "delta_r": 0.25, "alpha": 0.4, "beta": 0.6},
  "initial": {"K": 4, "E": 1},
  "horizon": 10,
  "sample_step": 1
})");
    const Result eq = run({"equilibrium", "--scenario", dir / "ak.json", "--out",
                           dir / "eq.txt"});
    CHECK(eq.code == 3);
    CHECK_FALSE(fs::exists(dir / "eq.txt"));
}
