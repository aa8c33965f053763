#include <doctest.h>

#include <filesystem>

#include "helpers.hpp"
#include "qvm/io.hpp"

using namespace qvm;
using namespace testutil;
using io::json;

namespace {

std::string fixture(const std::string& name) { return std::string(QVM_FIXTURE_DIR) + "/" + name; }

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error thrown");
    return ErrorKind::Parse;
}

} // namespace

TEST_CASE("scalar text forms") {
    io::Warnings w;
    Gauss z = Gauss::parse("1/2+3/4i");
    CHECK(z == Gauss(Rat(1, 2), Rat(3, 4)));
    CHECK(z.str() == "1/2+3/4i");
    CHECK(Gauss::parse(z.str()) == z);
    CHECK(io::scalar_to_json(z) == json{{"re", "1/2"}, {"im", "3/4"}});
    CHECK(io::scalar_to_json(Gauss(Rat(-7, 3))) == json("-7/3"));
    CHECK(io::scalar_from_json(io::scalar_to_json(z), w, "z") == z);
    CHECK(io::scalar_from_json(json(5), w, "n") == Gauss(5));
    CHECK(io::scalar_from_json(json("-i"), w, "n") == Gauss(Rat(0), Rat(-1)));
    CHECK(w.empty());

    CHECK(io::scalar_from_json(json("6/4"), w, "x") == Gauss(Rat(3, 2)));
    REQUIRE(w.size() == 1);
    CHECK(w[0].find("3/2") != std::string::npos);
    CHECK(io::scalar_from_json(json{{"re", "2/4"}, {"im", "0"}}, w, "y") == Gauss(Rat(1, 2)));
    CHECK(w.size() == 2);

    CHECK(kind_of([&] { io::scalar_from_json(json(0.5), w, "f"); }) == ErrorKind::Parse);
    CHECK(kind_of([&] { io::scalar_from_json(json("1/0"), w, "f"); }) == ErrorKind::Parse);
    CHECK(kind_of([&] { io::scalar_from_json(json{{"re", "1"}}, w, "f"); }) == ErrorKind::Parse);
    CHECK(kind_of([&] { io::scalar_from_json(json{{"re", "i"}, {"im", "0"}}, w, "f"); }) == ErrorKind::Parse);
}

TEST_CASE("matrices keep their shape when empty") {
    io::Warnings w;
    GMat m = io::matrix_from_json(json::array(), 0, 3, w, "m");
    CHECK(m.rows() == 0);
    CHECK(m.cols() == 3);
    GMat e = mat({{1, -2}, {0, 4}});
    CHECK(io::matrix_from_json(io::matrix_to_json(e), 2, 2, w, "e") == e);
    CHECK(kind_of([&] { io::matrix_from_json(io::matrix_to_json(e), 2, 3, w, "e"); }) == ErrorKind::ShapeMismatch);
    CHECK(kind_of([&] { io::matrix_from_json(json::parse("[[1,2],[3]]"), -1, -1, w, "r"); }) == ErrorKind::ShapeMismatch);
}

TEST_CASE("representation points roundtrip") {
    std::mt19937_64 rng(4);
    QuiverMult q = star_quiver({3, 1, 2});
    GRep B = random_point(rng, q, {2, 1, 0, 1});
    B.fwd[0](0, 0) = Gauss(Rat(-2, 3), Rat(5, 7));
    io::Warnings w;
    json j = io::rep_to_json(B);
    CHECK(io::rep_from_json(j, w) == B);
    CHECK(io::rep_to_json(io::rep_from_json(j, w)) == j);
    CHECK(w.empty());
    CHECK(io::quiver_from_json(io::quiver_to_json(q)) == q);
}

TEST_CASE("shape errors name the arrow") {
    std::mt19937_64 rng(5);
    GRep B = random_point(rng, star_quiver({2, 1}), {2, 1, 1});
    json j = io::rep_to_json(B);
    j["mats"]["a2"]["fwd"] = io::matrix_to_json(mat({{1, 2, 3}}));
    io::Warnings w;
    try {
        io::rep_from_json(j, w);
        FAIL("accepted a wrong shape");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ShapeMismatch);
        CHECK(std::string(e.what()).find("arrow 'a2'") != std::string::npos);
    }
    json k = io::rep_to_json(B);
    k["mats"].erase("a1");
    CHECK(kind_of([&] { io::rep_from_json(k, w); }) == ErrorKind::Parse);
}

TEST_CASE("quiver, dims and lambda sections") {
    json q = json::parse(R"({"vertices":["c","x","y"],"arrows":[{"id":"p","out":"x","in":"c"},{"id":"r","out":"y","in":"c"}],"mult":{"x":3}})");
    QuiverMult Q = io::quiver_from_json(q);
    CHECK(Q.mult == std::vector<int>{1, 3, 1});
    CHECK(Q.arrows[1].out == 2);
    io::Warnings w;
    Lambda lam = io::lambda_from_json(json::parse(R"({"c":["1"],"x":["0","1/2",{"re":"1","im":"-1"}],"y":[2]})"), Q, w);
    CHECK(lam[1][2] == Gauss(Rat(1), Rat(-1)));
    CHECK(io::lambda_from_json(io::lambda_to_json(Q, lam), Q, w) == lam);
    CHECK(kind_of([&] { io::lambda_from_json(json::parse(R"({"c":["1"],"x":["0"],"y":[2]})"), Q, w); }) == ErrorKind::ShapeMismatch);
    CHECK(io::dims_from_json(json::parse(R"({"c":2,"x":1,"y":0})"), Q) == IntVec{2, 1, 0});
    CHECK(kind_of([&] { io::dims_from_json(json::parse(R"({"c":2,"x":1})"), Q); }) == ErrorKind::Parse);
    CHECK(kind_of([&] { io::quiver_from_json(json::parse(R"({"vertices":["a"],"arrows":[{"id":"l","out":"a","in":"a"}]})")); }) ==
          ErrorKind::Parse);
    CHECK(kind_of([&] { io::quiver_from_json(json::parse(R"({"vertices":["a","b"],"arrows":[{"id":"l","out":"a","in":"z"}]})")); }) ==
          ErrorKind::Parse);
}

TEST_CASE("systems") {
    io::Warnings w;
    MeromorphicSystem A = double_pole_example(Gauss(1), Gauss(2), Gauss(-3), Gauss(4), Gauss(-3), {Gauss(0), Gauss(Rat(1, 2), Rat(1))});
    json j = io::system_to_json(A);
    CHECK(j["poles"][0]["order"] == 2);
    CHECK(io::system_from_json(j, w) == A);
    json bad = j;
    bad["poles"][1]["order"] = 3;
    CHECK(kind_of([&] { io::system_from_json(bad, w); }) == ErrorKind::ShapeMismatch);
    json no_order = j;
    no_order["poles"][0].erase("order");
    CHECK(io::system_from_json(no_order, w) == A);
    json same = j;
    same["poles"][1]["t"] = "0";
    CHECK(kind_of([&] { io::system_from_json(same, w); }) == ErrorKind::ShapeMismatch);
}

TEST_CASE("bundles") {
    for (const char* name : {"d4_quiver.json", "double_pole_system.json", "star22_point.json", "star211_point.json"}) {
        CAPTURE(name);
        json j = io::read_json_file(fixture(name));
        io::Warnings w;
        io::Bundle b = io::bundle_from_json(j, w);
        CHECK(w.empty());
        CHECK(io::bundle_to_json(b) == j);
    }

    io::Warnings w;
    io::Bundle b = io::parse_bundle(fixture("star211_point.json"), w);
    REQUIRE(b.rep);
    REQUIRE(b.lambda);
    CHECK(check_level(*b.rep, *b.lambda));
    CHECK(b.seed.has_value());

    // sections that disagree with each other
    json j = io::read_json_file(fixture("star211_point.json"));
    j["dims"] = {{"0", 1}, {"1", 1}, {"2", 1}, {"3", 1}};
    CHECK(kind_of([&] { io::bundle_from_json(j, w); }) == ErrorKind::ShapeMismatch);
    json k = io::read_json_file(fixture("star211_point.json"));
    k["quiver"] = io::quiver_to_json(star_quiver({3, 1, 1}));
    CHECK(kind_of([&] { io::bundle_from_json(k, w); }) == ErrorKind::GraphMismatch);
    json u = io::read_json_file(fixture("d4_quiver.json"));
    u["note"] = "kept";
    CHECK(io::bundle_to_json(io::bundle_from_json(u, w)) == u);

    const auto path = std::filesystem::temp_directory_path() / "qvm_bundle_roundtrip.json";
    io::serialize_bundle(b, path.string());
    CHECK(io::bundle_to_json(io::parse_bundle(path.string(), w)) == io::bundle_to_json(b));
    std::filesystem::remove(path);
    CHECK(kind_of([&] { io::parse_bundle("/nonexistent/file.json", w); }) == ErrorKind::Parse);
}
