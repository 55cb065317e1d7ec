#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "heredilat/cli.hpp"

using namespace heredilat;
using namespace heredilat::cli;
namespace fs = std::filesystem;

namespace {

struct TempFile {
    fs::path path;
    explicit TempFile(const std::string& name, const std::string& body = {})
        : path(fs::temp_directory_path() / ("heredilat_test_" + name)) {
        if (!body.empty()) std::ofstream(path) << body;
    }
    ~TempFile() { fs::remove(path); }
    std::string str() const { return path.string(); }
};

struct Result {
    int code;
    std::string out, err;
};

Result invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("lattice files round-trip") {
    for (const auto& name : order::fixture_names()) {
        CAPTURE(name);
        const auto lat = order::fixture_lattice(name);
        const auto ol = order::fixture_ortholattice(name);
        TempFile f(name + ".json");
        save_lattice(f.str(), lat, ol ? &*ol : nullptr);
        const auto back = load_lattice(f.str());
        CHECK(back.lattice == lat);
        CHECK(back.ortho.has_value() == ol.has_value());
        if (ol) CHECK(*back.ortho == *ol);
    }
}

TEST_CASE("lattice parse errors name file, line and field") {
    const std::string bad_ortho = "{\n  \"n\": 4,\n  \"cover\": [[0,1],[0,2],[1,3],[2,3]],\n  \"ortho\": [3,2,1]\n}\n";
    try {
        parse_lattice(bad_ortho, "b4.json");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("b4.json:4:") == 0);
        CHECK(msg.find("'ortho'") != std::string::npos);
    }

    try {
        parse_lattice("{\n  \"n\": 2,\n  \"cover\": [[0,1]\n", "trunc.json");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("trunc.json:") == 0);
    }

    CHECK_THROWS_AS(parse_lattice(R"({"cover": []})", "x"), ParseError);
    CHECK_THROWS_AS(parse_lattice(R"({"n": 2, "cover": [[0, 5]]})", "x"), ParseError);
    CHECK_THROWS_AS(parse_lattice(R"({"n": 2, "cover": [[0, 1]], "names": ["0"]})", "x"), ParseError);
    // kernel rejections carry through as validation errors
    CHECK_THROWS_AS(parse_lattice(R"({"n": 3, "cover": [[0,1],[1,2],[2,1]]})", "x"), ValidationError);
    CHECK_THROWS_AS(parse_lattice(R"({"n": 3, "cover": [[0,1],[0,2]]})", "x"), ValidationError);
    CHECK_THROWS_AS(parse_lattice(R"({"n": 4, "cover": [[0,1],[0,2],[1,3],[2,3]], "ortho": [3,1,2,0]})", "x"),
                    ValidationError);
}

TEST_CASE("matrix files") {
    const auto la = parse_algebra(R"({"dims": [1, 2], "matrices": {
        "e": [[[1, 0]], [[0,0],[0,0],[0,0],[1,0]]],
        "n": [[0], [[[0,0],[2,0]], [[0,0],[0,0]]]]
    }})", "m.json");
    CHECK(la.alg.dims() == std::vector<int>{1, 2});
    REQUIRE(la.matrices.size() == 2);
    CHECK(la.matrices[0].first == "e");
    CHECK(la.matrices[1].second.block(1)(0, 1) == matalg::Complex(2.0, 0.0));
    const auto back = parse_algebra(algebra_to_json(la.alg, la.matrices).dump(), "m2.json");
    CHECK(matalg::approx_equal(back.matrices[1].second, la.matrices[1].second, 0.0));

    CHECK_THROWS_AS(parse_algebra(R"({"dims": [2], "matrices": {"a": [[[1,0],[0,0],[0,0]]]}})", "x"), ValidationError);
    CHECK_THROWS_AS(parse_algebra(R"({"dims": [2], "matrices": {"a": [[1,0,0,0],[1]]}})", "x"), ValidationError);
    CHECK_THROWS_AS(parse_algebra(R"({"dims": [0]})", "x"), ValidationError);
    CHECK_THROWS_AS(parse_algebra(R"({"dims": [2], "matrices": {"a": [["x","y","z","w"]]}})", "x"), ParseError);
}

TEST_CASE("check-lattice reports false flags without failing") {
    const auto r = invoke({"check-lattice", "--fixture", "O6"});
    CHECK(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK_FALSE(j["profile"]["orthomodular"]["holds"].get<bool>());
    CHECK(j["profile"]["orthomodular"]["witness"] == json::array({"a", "b'"}));

    const auto mo2 = json::parse(invoke({"check-lattice", "--fixture", "MO2"}).out);
    CHECK(mo2["center"] == json::array({"0", "1"}));
    CHECK(mo2["elements"][1]["pseudocomplement"].is_null());

    TempFile bad("bad.json", "{\"n\": 3, \"cover\": [[0,1],[1,2]");
    const auto e = invoke({"check-lattice", "--lattice", bad.str()});
    CHECK(e.code == 2);
    CHECK(e.err.find(bad.str()) != std::string::npos);
    CHECK(invoke({"check-lattice", "--lattice", "/nonexistent/x.json"}).code == 2);
    CHECK(invoke({"check-lattice", "--fixture", "Q7"}).code == 2);
    CHECK(invoke({"check-lattice"}).code == 2);
    CHECK(invoke({"no-such-command"}).code == 2);
    CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("decompose") {
    const auto r = invoke({"decompose", "--fixture", "MO2xB4", "--class", "mo2-powers"});
    CHECK(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["certificate"]["p"] == "(1,0)");
    CHECK(j["pass"].get<bool>());

    TempFile gen("mo2.json");
    const auto mo2 = *order::fixture_ortholattice("MO2");
    save_lattice(gen.str(), mo2.lattice(), &mo2);
    const auto viaf = json::parse(invoke({"decompose", "--fixture", "MO2xB4", "--class", gen.str()}).out);
    CHECK(viaf["certificate"]["p"] == "(1,0)");

    CHECK(json::parse(invoke({"decompose", "--fixture", "B4", "--class", "boolean"}).out)["certificate"]["p"] == "1");
    CHECK(invoke({"decompose", "--fixture", "M3", "--class", "modular"}).code == 2);
    CHECK(invoke({"decompose", "--fixture", "B4", "--class", "/nonexistent.json"}).code == 2);
}

TEST_CASE("verify-paper is deterministic and lists its suites") {
    const std::vector<std::string> args{"verify-paper", "--seed", "7", "--trials", "10"};
    const auto a = invoke(args), b = invoke(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    const auto j = json::parse(a.out);
    std::vector<std::string> suites;
    for (const auto& s : j["suites"]) {
        suites.push_back(s["suite"]);
        for (const auto& c : s["checks"]) CHECK_FALSE(c["anchor"].get<std::string>().empty());
    }
    for (const char* want : {"trieq", "Idist", "sasaki", "speclab", "decomp"})
        CHECK(std::find(suites.begin(), suites.end(), want) != suites.end());

    CHECK(invoke({"verify-paper", "--seed", "8", "--trials", "10"}).out != a.out);
    CHECK(invoke({"verify-paper", "--suite", "nope"}).code == 2);
    CHECK(invoke({"verify-paper", "--trials", "0"}).code == 2);
    CHECK(invoke({"verify-paper", "--tol", "-1"}).code == 2);
}

TEST_CASE("HEREDILAT_SEED sets the default seed") {
    ::setenv("HEREDILAT_SEED", "99", 1);
    const auto j = json::parse(invoke({"verify-paper", "--suite", "Idist", "--trials", "3"}).out);
    CHECK(j["config"]["seed"] == 99);
    const auto k = json::parse(invoke({"verify-paper", "--suite", "Idist", "--trials", "3", "--seed", "5"}).out);
    CHECK(k["config"]["seed"] == 5);
    ::unsetenv("HEREDILAT_SEED");
}

TEST_CASE("speclab command") {
    const auto r = invoke({"speclab", "--lemma", "c1e", "--dims", "6", "--trials", "3", "--seed", "42"});
    CHECK(r.code == 0);
    const auto j = json::parse(r.out);
    REQUIRE(j.size() == 3);
    CHECK(j[0]["lemma"] == "c1e");
    CHECK(j[0]["inputs_digest"].get<std::string>().rfind("seed:42/trial:0/", 0) == 0);
    CHECK(j[0]["margin"].get<double>() >= 0.0);

    const auto fixed = json::parse(invoke({"speclab", "--lemma", "1-c", "--trials", "2", "--eps", "0.2"}).out);
    CHECK(fixed[1]["eps"] == 0.2);
    CHECK(json::parse(invoke({"speclab", "--trials", "2"}).out).size() == 14);
    CHECK(invoke({"speclab", "--lemma", "nope"}).code == 2);
    CHECK(invoke({"speclab", "--dims", "2,x"}).code == 2);
    CHECK(invoke({"speclab", "--eps", "0"}).code == 2);
}

TEST_CASE("sasaki command") {
    TempFile m("nil.json", R"({"dims": [2], "matrices": {"a": [[[0,0],[1,0],[0,0],[0,0]]], "b": [[[1,0],[0,0],[0,0],[0,0]]]}})");
    const auto r = invoke({"sasaki", "--matrices", m.str(), "--name", "a"});
    CHECK(r.code == 0);
    const auto j = json::parse(r.out);
    REQUIRE(j.size() == 1);
    CHECK(j[0]["matrix"] == "a");
    CHECK(j[0]["pass"].get<bool>());
    CHECK(invoke({"sasaki", "--matrices", m.str()}).code == 2);  // b is not nilpotent
    CHECK(invoke({"sasaki", "--matrices", m.str(), "--name", "zz"}).code == 2);
    CHECK(invoke({"sasaki", "--trials", "5", "--seed", "3"}).code == 0);
}
