#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pointpair/analysis.hpp"
#include "pointpair/cli.hpp"

using namespace pointpair;
using json = nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run ppf(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<json> lines(const std::string& s) {
    std::vector<json> v;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) v.push_back(json::parse(l));
    return v;
}

json summary(const Run& r) {
    REQUIRE(r.code == 0);
    const auto v = lines(r.out);
    REQUIRE(!v.empty());
    return v.back();
}

Point point_of(const json& a) { return Point(a.get<std::vector<double>>()); }

} // namespace

TEST_CASE("eval and dist") {
    const auto s = summary(ppf({"eval", "--domain", "ball:2", "--metric", "ppf", "--x", "0.5,0", "--y", "-0.5,0"}));
    CHECK(s["command"] == "eval");
    CHECK(s["result"]["value"].get<double>() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(s.contains("inputs"));
    CHECK(s.contains("diagnostics"));
    const auto d = summary(ppf({"dist", "--domain", "interval:-1:1", "--x", "0.3"}));
    CHECK(d["result"]["d"].get<double>() == doctest::Approx(0.7));
}

TEST_CASE("validation errors exit 2 with one line") {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"eval", "--domain", "sphere:2", "--x", "0", "--y", "1"},
             {"eval", "--domain", "ball:2", "--metric", "ppq", "--x", "0,0", "--y", "0.1,0"},
             {"eval", "--domain", "ball:2", "--x", "2,0", "--y", "0.1,0"},
             {"eval", "--domain", "ball:2", "--x", "0,0,0", "--y", "0.1,0"},
             {"eval", "--domain", "ball:2", "--x", "0,0"},
             {"quasi", "--domain", "ball:2", "--budget", "10"},
             {"witness", "nonsense"},
             {"oracle", "lemma99"},
             {"quasi", "--domain", "ball:2", "--format", "svg"},
             {"frobnicate"},
             {}}) {
        CAPTURE(args.size());
        const auto r = ppf(args);
        CHECK(r.code == 2);
        CHECK(r.out.empty());
        CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);
    }
}

TEST_CASE("quasi summary re-derives from its witness") {
    const auto s = summary(ppf({"quasi", "--domain", "interval:-1:1", "--metric", "ppf", "--budget", "100000", "--seed", "1"}));
    const double c = s["result"]["c_hat"];
    CHECK(std::abs(c - std::sqrt(5.0) / 2) < 1e-6);
    const auto& w = s["result"]["witness"];
    const Triple t{point_of(w["x"]), point_of(w["y"]), point_of(w["z"])};
    CHECK(triangle_ratio(MetricSpec::point_pair(), Domain::interval(-1, 1), t) == c);
    CHECK(std::abs(t.x[0] + 1.0 / 3) < 1e-4);
}

TEST_CASE("violate reports found without signalling through the exit code") {
    const auto yes = summary(ppf({"violate", "--domain", "rplus", "--metric", "ppf:alpha=13", "--seed", "1"}));
    CHECK(yes["result"]["found"] == true);
    const auto& w = yes["result"]["triple"];
    const Triple t{point_of(w["x"]), point_of(w["y"]), point_of(w["z"])};
    CHECK(triangle_ratio(MetricSpec::generalized(13.0), Domain::positive_axis(), t) == yes["result"]["ratio"].get<double>());
    const auto no = summary(ppf({"violate", "--domain", "rplus", "--metric", "ppf:alpha=12", "--budget", "20000"}));
    CHECK(no["result"]["found"] == false);
}

TEST_CASE("threshold writes probe records before the summary") {
    const auto r = ppf({"threshold", "--domain", "rplus", "--lo", "1", "--hi", "50", "--tol", "0.02"});
    REQUIRE(r.code == 0);
    const auto v = lines(r.out);
    const auto& s = v.back();
    CHECK(s["result"]["brackets_12"] == true);
    CHECK(s["result"]["width"].get<double>() <= 0.02);
    CHECK(v.size() == s["result"]["probes"].get<std::size_t>() + 1);
    CHECK(v.front()["record"] == "probe");
}

TEST_CASE("witness kinds") {
    const auto b = summary(ppf({"witness", "ball", "--alpha", "4"}));
    CHECK(std::abs(b["result"]["ratio"].get<double>() - std::sqrt(1.125)) < 1e-12);
    const auto sh = summary(ppf({"witness", "sharpness", "--domain", "ball:2"}));
    CHECK(std::abs(sh["result"]["ratio"].get<double>() - std::sqrt(5.0) / 2) < 1e-12);
    const auto rp = summary(ppf({"witness", "rplus", "--alpha", "13", "--t", "2.2"}));
    CHECK(rp["result"]["ratio"].get<double>() > 1.0);
    const auto cs = summary(ppf({"witness", "cstar", "--alpha", "4"}));
    CHECK(cs["result"]["k"].get<double>() == doctest::Approx(1.0 / 3));
    const auto cl = summary(ppf({"witness", "classify", "--domain", "interval:3:7"}));
    CHECK(cl["result"]["metric"] == false);
    CHECK(ppf({"witness", "rplus", "--alpha", "12", "--t", "2.1"}).code == 2);
    CHECK(ppf({"witness", "classify", "--domain", "ball:2"}).code == 2);
}

TEST_CASE("oracle summaries and record streams") {
    const auto h = summary(ppf({"oracle", "h"}));
    CHECK(h["result"]["failures"] == 0);
    const auto rp = summary(ppf({"oracle", "rplus", "--alpha", "13"}));
    CHECK(rp["result"]["nonnegative"] == false);
    const auto csv = ppf({"oracle", "lemma41", "--budget", "10", "--format", "csv"});
    REQUIRE(csv.code == 0);
    CHECK(csv.out.rfind("index,inputs,margin\n", 0) == 0);
    CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == 11);
}

TEST_CASE("disk output formats") {
    const std::vector<std::string> base{"disk", "--domain", "punctured:2", "--metric", "ppf:alpha=3.5",
                                        "--center", "0.5,0", "--level", "0.5"};
    const auto s = summary(ppf(base));
    CHECK(s["result"]["crossings"] == 360);
    CHECK(s["diagnostics"]["max_level_residual"].get<double>() <= 1e-6);
    CHECK(std::abs(s["result"]["first"][0].get<double>() - 1.405455) < 1e-6);

    auto args = base;
    args.insert(args.end(), {"--rays", "8", "--format", "csv"});
    const auto csv = ppf(args);
    REQUIRE(csv.code == 0);
    CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == 9);

    const std::string path = "cli_disk_test.svg";
    args = base;
    args.insert(args.end(), {"--format", "svg", "--out", path});
    const auto svg = ppf(args);
    REQUIRE(svg.code == 0);
    CHECK(lines(svg.out).back()["command"] == "disk");
    std::ifstream f(path);
    const std::string body((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    CHECK(body.find("</svg>") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("conjecture reports are labelled evidence") {
    const auto a = summary(ppf({"conjecture", "axis3d-metric", "--budget", "20000"}));
    CHECK(a["result"]["label"] == "evidence");
    CHECK(a["result"].contains("found"));
    const auto b = summary(ppf({"conjecture", "ball-cstar", "--budget", "20000"}));
    CHECK(b["result"]["label"] == "evidence");
    CHECK(b["result"]["rows"].size() == 3);
}

TEST_CASE("summaries are byte-identical across runs and worker counts") {
    const std::vector<std::string> base{"quasi", "--domain", "ball:2", "--budget", "20000", "--seed", "4"};
    auto four = base;
    four.insert(four.end(), {"--workers", "4"});
    const auto a = ppf(base), b = ppf(base), c = ppf(four);
    CHECK(a.out == b.out);
    // The worker count is not part of the recorded inputs, so the bytes match.
    CHECK(a.out == c.out);
}
