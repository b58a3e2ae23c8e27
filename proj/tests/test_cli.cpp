#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "betasplit/cli.hpp"
#include "betasplit/verify.hpp"

using namespace betasplit;
using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::dispatch(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST_CASE("constants") {
    const Run r = run({"constants"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(std::abs(j.at("c0").get<double>() - 0.795155660439) < 5e-11);
    CHECK(std::abs(j.at("b0").get<double>() - 0.78234) < 5e-6);
    CHECK(std::abs(j.at("mu").get<double>() - 0.6079) < 5e-5);
    CHECK(std::abs(j.at("sigma2").get<double>() - 0.5401) < 5e-5);
    CHECK(std::abs(j.at("sigma_star").get<double>() - 1.457) < 5e-4);
}

TEST_CASE("roots") {
    const Run r = run({"roots", "--count", "2"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j.at("roots").size() == 2);
    CHECK(std::abs(j["roots"][0]["root"].get<double>() + 0.567) < 5e-4);
    CHECK(std::abs(j["roots"][1]["root"].get<double>() + 1.628) < 5e-4);
    CHECK(j.at("positive_root").get<double>() == doctest::Approx(1.0));
}

TEST_CASE("exact tables") {
    const Run r = run({"exact", "--nmax", "5", "--kmax", "2"});
    REQUIRE(r.code == 0);
    const auto rows = csv(r.out);
    REQUIRE(rows.size() == 6);
    CHECK(rows[0] == std::vector<std::string>{"n", "ED", "ED2", "EL", "ELambda"});
    CHECK(std::stod(rows[3][1]) == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
    CHECK(std::stod(rows[3][2]) == doctest::Approx(28.0 / 9.0).epsilon(1e-14));
    const Run rj = run({"exact", "--nmax", "5", "--format", "json"});
    const json j = json::parse(rj.out);
    CHECK(j.at("EL").at(2).get<double>() == doctest::Approx(5.0 / 3.0));
    CHECK(j.at("ELambda").size() == 5);
}

TEST_CASE("asympt") {
    const Run r = run({"asympt", "--quantity", "ED", "--n", "1000"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j.at("terms").at(0).at("label") == "main");
    CHECK(j.at("terms").size() == 4);
    double s = 0.0;
    for (const auto& t : j["terms"]) s += t["value"].get<double>();
    CHECK(s == doctest::Approx(j["value"].get<double>()).epsilon(1e-13));
    CHECK(run({"asympt", "--quantity", "moment", "--k", "3", "--n", "200"}).code == 0);
}

TEST_CASE("mellin") {
    const Run r = run({"mellin", "--kind", "ELambda", "--n", "3"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    for (const char* key : {"kind", "n", "k", "sigma", "value", "est_error", "panels"}) CHECK(j.contains(key));
    CHECK(j["value"].get<double>() == doctest::Approx(5.0 / 3.0).epsilon(1e-10));
    CHECK(run({"mellin", "--kind", "nope", "--n", "3"}).code == 1);
    CHECK(run({"mellin", "--kind", "ED", "--n", "3", "--sigma", "-0.0001"}).code == 1);
}

TEST_CASE("mgf and ldp csv") {
    const Run m = run({"mgf", "--n", "50,100", "--z", "-1,0.5"});
    REQUIRE(m.code == 0);
    const auto rows = csv(m.out);
    CHECK(rows.size() == 5);
    CHECK(rows[0] == std::vector<std::string>{"n", "z", "exact", "approx", "ratio"});
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(std::abs(std::stod(rows[i][4]) - 1.0) < 0.01);
    CHECK(run({"mgf", "--n", "10", "--z", "1.5"}).code == 1);

    const Run l = run({"ldp", "--x", "0.3,1,2"});
    REQUIRE(l.code == 0);
    const auto lr = csv(l.out);
    CHECK(lr[0] == std::vector<std::string>{"x", "rho_hat", "lambda_star", "derivative", "regime"});
    CHECK(lr[1][4] == "lower_exact");
    CHECK(lr[2][4] == "upper_exact");
    CHECK(lr[3][4] == "upper_bound_only");
    CHECK(std::stod(lr[3][2]) == doctest::Approx(1.0));
}

TEST_CASE("simulate determinism and dump") {
    const std::vector<std::string> args = {"simulate", "--n", "1000", "--samples", "2000", "--seed", "17", "--x-grid", "0.5,1"};
    const Run a = run(args);
    const Run b = run(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    const json j = json::parse(a.out);
    CHECK(j.at("count").get<int>() == 2000);
    CHECK(j.at("extra").contains("tail_x=0.5"));
    CHECK(j.contains("stderr"));
    std::vector<std::string> with_threads = {"--threads", "3"};
    with_threads.insert(with_threads.end(), args.begin(), args.end());
    CHECK(run(with_threads).out == a.out);

    const std::string path = "cli_dump_test.csv";
    const Run d = run({"simulate", "--n", "50", "--samples", "7", "--mode", "tree", "--dump", path});
    REQUIRE(d.code == 0);
    std::ifstream f(path);
    std::string line;
    int lines = 0;
    while (std::getline(f, line)) ++lines;
    CHECK(lines == 8);
    std::remove(path.c_str());
}

TEST_CASE("verify core") {
    const std::string path = "cli_verify_core.json";
    const Run r = run({"verify", "--suite", "core", "--json", path});
    CHECK(r.code == 0);
    CHECK(r.out.find("all rows passed") != std::string::npos);
    std::ifstream f(path);
    const json j = json::parse(f);
    const verify::Report rep = verify::Report::from_json(j);
    CHECK(rep.suite == "core");
    CHECK(rep.passed());
    // pass/fail is recomputable from stored metric and bound.
    for (const verify::Row& row : rep.rows) CHECK(row.pass == (row.metric <= row.bound));
    CHECK(rep.to_json() == j);
    std::remove(path.c_str());
}

TEST_CASE("usage errors") {
    CHECK(run({}).code == 1);
    CHECK(run({"frobnicate"}).code == 1);
    CHECK(run({"verify", "--suite", "nope"}).code == 1);
    CHECK(run({"simulate", "--mode", "forest"}).code == 1);
    CHECK(run({"exact", "--nmax", "100000"}).code == 1);
    const Run h = run({"--help"});
    CHECK(h.code == 0);
    CHECK(h.out.find("verify") != std::string::npos);
}

TEST_CASE("numerical contract failures map to exit 2") {
    CHECK(run({"simulate", "--mode", "tree", "--n", "200000000", "--samples", "1"}).code == 2);
}
