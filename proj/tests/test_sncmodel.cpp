#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "k3zeta/sncmodel.hpp"

using namespace k3zeta;

namespace {

std::string fixture_path(const std::string& name) {
    const char* dir = std::getenv("K3ZETA_FIXTURE_DIR");
    REQUIRE(dir != nullptr);
    return std::string(dir) + "/" + name;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Model load(const std::string& name) { return parse_model(slurp(fixture_path(name))); }

}  // namespace

TEST_CASE("parse the two-component example") {
    Model m = load("d2e.json");
    CHECK(m.components.size() == 2);
    CHECK(m.edges.size() == 1);
    CHECK(m.edges[0].curves.size() == 1);
    CHECK(m.edges[0].curves[0].genus == 0);
    REQUIRE(m.flowers.size() == 1);
    CHECK(m.flowers[0].type == "2B");
    CHECK(m.component("E").N == 2);
    CHECK(m.symbols.euler_of("Dcirc") == 22);
}

TEST_CASE("parse errors carry a path") {
    CHECK_THROWS_AS(parse_model("{ not json"), ParseError);
    // duplicate id
    CHECK_THROWS_AS(parse_model(R"({"components": [
        {"id": "X", "N": 1, "nu": 0, "geometry": {"kind": "p2"}},
        {"id": "X", "N": 1, "nu": 0, "geometry": {"kind": "p2"}}]})"),
                    ParseError);
    // zero multiplicity
    CHECK_THROWS_AS(parse_model(R"({"components": [
        {"id": "X", "N": 0, "nu": 0, "geometry": {"kind": "p2"}}]})"),
                    ParseError);
    // unknown keys rejected
    CHECK_THROWS_AS(parse_model(R"({"components": [
        {"id": "X", "N": 1, "nu": 0, "geometry": {"kind": "p2"}, "spurious": 1}]})"),
                    ParseError);
    CHECK_THROWS_AS(parse_model(R"({"components": [
        {"id": "X", "N": 1, "nu": 0, "geometry": {"kind": "p2"}}], "extra": []})"),
                    ParseError);
    // self-edges forbidden
    CHECK_THROWS_AS(parse_model(R"({"components": [
        {"id": "X", "N": 1, "nu": 0, "geometry": {"kind": "p2"}}],
        "edges": [{"a": "X", "b": "X", "curves": [{"genus": 0}]}]})"),
                    ParseError);
    // reserved class names
    CHECK_THROWS_AS(parse_model(R"({"components": [
        {"id": "X", "N": 1, "nu": 0, "geometry": {"kind": "p2"}, "class": "@bad"}]})"),
                    ParseError);
}

TEST_CASE("weights") {
    Model m = load("d2e.json");
    CHECK(weight(m, "E") == Rat(3, 2));
    CHECK(weight(m, "D") == Rat(1));
    Model f = load("fig31.json");
    CHECK(weight(f, "pot") == Rat(4, 3));
    CHECK_THROWS_AS(weight(m, "nope"), ModelError);
}

TEST_CASE("validation accepts the bundled models") {
    for (auto name : {"d2e.json", "flowerpot_2a.json", "chain_basic.json",
                      "countercand_621.json", "countercand_622.json",
                      "chain_conic_holds.json"}) {
        Model m = load(name);
        ValidationReport r = validate(m, true);
        INFO(name);
        for (auto& v : r.violations) INFO(v.code << ": " << v.message);
        CHECK(r.valid());
        CHECK(r.warnings.empty());
    }
}

TEST_CASE("fig31 is valid but not strict") {
    Model m = load("fig31.json");
    CHECK(validate(m, false).valid());
    CHECK(!validate(m, true).valid());  // its degree sum is not 24
}

TEST_CASE("type 4D is rejected") {
    Model m = load("invalid_4d.json");
    ValidationReport r = validate(m);
    CHECK(!r.valid());
    bool excluded = false;
    for (auto& v : r.violations)
        if (v.code == "flower-type-excluded") excluded = true;
    CHECK(excluded);
}

TEST_CASE("structural violations are detected") {
    SECTION("disconnected graph") {
        Model m = parse_model(R"({
          "components": [
            {"id": "A", "N": 1, "nu": 0, "geometry": {"kind": "p2"}},
            {"id": "B", "N": 1, "nu": 1, "geometry": {"kind": "p2"}}]})");
        bool found = false;
        for (auto& v : validate(m).violations)
            if (v.code == "disconnected") found = true;
        CHECK(found);
    }
    SECTION("flower multiplicities off the catalog row") {
        Model m = load("d2e.json");
        m.component("E").N = 3;  // a 2B top must have even multiplicity
        bool found = false;
        for (auto& v : validate(m).violations)
            if (v.code == "flower-table-mismatch") found = true;
        CHECK(found);
    }
    SECTION("attachment must have minimal weight") {
        Model m = parse_model(R"({
          "components": [
            {"id": "low", "N": 1, "nu": 0, "geometry": {"kind": "ktrivial", "euler": 24}},
            {"id": "mid", "N": 1, "nu": 1, "geometry": {"kind": "ktrivial", "euler": 2}},
            {"id": "top", "N": 2, "nu": 3, "geometry": {"kind": "p2"}}],
          "edges": [
            {"a": "low", "b": "mid", "curves": [{"genus": 0}]},
            {"a": "mid", "b": "top", "curves": [{"genus": 0}]}],
          "flowers": [{"type": "2B", "members": ["top"], "attachment": "mid"}]})");
        bool found = false;
        for (auto& v : validate(m).violations)
            if (v.code == "flower-structure" &&
                v.message.find("not of minimal weight") != std::string::npos)
                found = true;
        CHECK(found);
    }
    SECTION("one component cannot belong to two flowers") {
        Model m = load("d2e.json");
        m.flowers.push_back(m.flowers[0]);
        bool found = false;
        for (auto& v : validate(m).violations)
            if (v.message.find("belongs to two flowers") != std::string::npos) found = true;
        CHECK(found);
    }
}

TEST_CASE("nu recursion violations are detected") {
    Model m = load("d2e.json");
    m.component("E").nu = 3;  // 2B endpoint needs nu(D) = (3-1)/2 = 1, not 0
    ValidationReport r = validate(m);
    bool found = false;
    for (auto& v : r.violations)
        if (v.code == "flower-nu-recursion") found = true;
    CHECK(found);
}

TEST_CASE("classification") {
    CHECK(classify(load("d2e.json")) == DegenerationKind::Flowerpot);
    CHECK(classify(load("fig31.json")) == DegenerationKind::Flowerpot);
    CHECK(classify(load("chain_basic.json")) == DegenerationKind::Chain);
    CHECK(classify(load("countercand_622.json")) == DegenerationKind::Chain);

    // a triangle of equal weights is a cycle: rejected
    Model tri = parse_model(R"({
      "components": [
        {"id": "A", "N": 1, "nu": 0, "geometry": {"kind": "ruled", "base_genus": 1}},
        {"id": "B", "N": 1, "nu": 0, "geometry": {"kind": "ruled", "base_genus": 1}},
        {"id": "C", "N": 1, "nu": 0, "geometry": {"kind": "ruled", "base_genus": 1}}],
      "edges": [
        {"a": "A", "b": "B", "curves": [{"genus": 1}]},
        {"a": "B", "b": "C", "curves": [{"genus": 1}]},
        {"a": "C", "b": "A", "curves": [{"genus": 1}]}]})");
    CHECK_THROWS_AS(classify(tri), ModelError);
    ValidationReport r = validate(tri);
    bool cyc = false;
    for (auto& v : r.violations)
        if (v.code == "minimal-locus-cycle") cyc = true;
    CHECK(cyc);
}

TEST_CASE("open Euler characteristics") {
    Model m = load("d2e.json");
    CHECK(euler_open(m, "E") == 1);   // plane top with one rational double curve
    CHECK(euler_open(m, "D") == 22);  // chi 24 minus the conic

    Model c = load("countercand_621.json");
    CHECK(euler_open(c, "V0") == -2);
    CHECK(euler_open(c, "V1") == 5);
    CHECK(euler_open(c, "a1") == 1);

    // ruled top of a genus-g flower: 2 - 2g
    Model g = parse_model(R"({
      "components": [
        {"id": "pot", "N": 2, "nu": 1, "geometry": {"kind": "ktrivial", "euler": 9}},
        {"id": "top", "N": 1, "nu": 1, "geometry": {"kind": "ruled", "base_genus": 3}}],
      "edges": [{"a": "pot", "b": "top", "curves": [{"genus": 3}]}],
      "flowers": [{"type": "4alpha", "members": ["top"], "attachment": "pot"}]})");
    CHECK(validate(g).valid());
    CHECK(euler_open(g, "top") == 2 - 2 * 3);

    // middle flower components have chi 0
    Model f = parse_model(R"({
      "components": [
        {"id": "pot", "N": 3, "nu": 5, "geometry": {"kind": "ktrivial", "euler": 4}},
        {"id": "t", "N": 1, "nu": 3, "geometry": {"kind": "p2"}},
        {"id": "mid", "N": 2, "nu": 4, "geometry": {"kind": "ruled", "base_genus": 0}}],
      "edges": [
        {"a": "t", "b": "mid", "curves": [{"genus": 0}]},
        {"a": "mid", "b": "pot", "curves": [{"genus": 0}]}],
      "flowers": [{"type": "3A", "members": ["t", "mid"], "attachment": "pot"}]})");
    CHECK(validate(f).valid());
    CHECK(euler_open(f, "mid") == 0);

    // override wins
    Model m2 = load("d2e.json");
    m2.component("D").euler_open_override = 7;
    CHECK(euler_open(m2, "D") == 7);
}

TEST_CASE("cover class assignment") {
    SECTION("conic top gets the half-scale data") {
        Model m = assign_cover_classes(load("d2e.json"));
        const Component& e = m.component("E");
        REQUIRE(e.has_cover);
        CHECK(e.cover_class == GrotElem::symbol("@F0"));
        // Poincare data: (N0/2)(v^2+1)v^2 with N0 = 2
        VLaurent p1 = VLaurent::monomial(Rat(2), 1) + VLaurent(1);
        CHECK(m.symbols.poincare_of("@F0") == p1 * VLaurent::monomial(Rat(2), 1));
        CHECK(m.symbols.poincare_of("@C0") == p1);
        CHECK(m.symbols.euler_of("@C0") == 2);
        // the double curve carries the curve cover
        REQUIRE(m.edges[0].curves[0].has_cover);
        CHECK(m.edges[0].curves[0].cover_class == GrotElem::symbol("@C0"));
        // user-supplied class stays on the non-flower component
        CHECK(m.component("D").cover_class == GrotElem::symbol("Dcirc"));
    }

    SECTION("line-top flower") {
        Model f = parse_model(R"({
          "components": [
            {"id": "pot", "N": 3, "nu": 5, "geometry": {"kind": "ktrivial", "euler": 4}},
            {"id": "t", "N": 1, "nu": 3, "geometry": {"kind": "p2"}},
            {"id": "mid", "N": 2, "nu": 4, "geometry": {"kind": "ruled", "base_genus": 0}}],
          "edges": [
            {"a": "t", "b": "mid", "curves": [{"genus": 0}]},
            {"a": "mid", "b": "pot", "curves": [{"genus": 0}]}],
          "flowers": [{"type": "3A", "members": ["t", "mid"], "attachment": "pot"}]})");
        Model m = assign_cover_classes(f);
        GrotElem L = GrotElem::lefschetz(), one(1);
        GrotElem p = GrotElem::symbol("@P0");
        CHECK(m.component("t").cover_class == p * L * L);
        CHECK(m.component("mid").cover_class == p * (L + one) * (L - one));
        for (auto& e : m.edges)
            for (auto& cd : e.curves) CHECK(cd.cover_class == p * (L + one));
        CHECK(m.symbols.euler_of("@P0") == 1);  // N0 = 1 points
        CHECK(m.symbols.poincare_of("@P0") == VLaurent(1));
    }

    SECTION("untouched components without user class have no cover") {
        Model m = assign_cover_classes(load("fig31.json"));
        CHECK(!m.component("pot").has_cover);
    }
}

TEST_CASE("degree identity across strict fixtures") {
    for (auto name : {"d2e.json", "flowerpot_2a.json", "chain_basic.json",
                      "countercand_621.json", "countercand_622.json",
                      "chain_conic_holds.json"}) {
        Model m = load(name);
        long long total = 0;
        for (auto& c : m.components) total += c.N * euler_open(m, c.id);
        INFO(name);
        CHECK(total == 24);
    }
}

TEST_CASE("flower weights strictly decrease in valid fixtures") {
    for (auto name : {"d2e.json", "flowerpot_2a.json", "countercand_621.json",
                      "countercand_622.json", "chain_conic_holds.json"}) {
        Model m = load(name);
        for (auto& f : m.flowers) {
            std::vector<std::string> path = f.members;
            path.push_back(f.attachment);
            for (size_t j = 0; j + 1 < path.size(); ++j)
                CHECK(weight(m, path[j]) > weight(m, path[j + 1]));
        }
    }
}

TEST_CASE("a 4C flower validates and meets its order constraint") {
    Model m = parse_model(R"({
      "components": [
        {"id": "pot", "N": 2, "nu": 3, "geometry": {"kind": "ktrivial", "euler": 13}, "class": "Pc"},
        {"id": "top", "N": 2, "nu": 5, "geometry": {"kind": "p2"}},
        {"id": "mid", "N": 1, "nu": 2, "geometry": {"kind": "ruled", "base_genus": 0}}],
      "edges": [
        {"a": "top", "b": "mid", "curves": [{"genus": 0}]},
        {"a": "mid", "b": "pot", "curves": [{"genus": 0}]}],
      "flowers": [{"type": "4C", "members": ["top", "mid"], "attachment": "pot"}]})");
    ValidationReport r = validate(m, true);
    for (auto& v : r.violations) INFO(v.code << ": " << v.message);
    CHECK(r.valid());
    // order of the top's candidate: 2; the halved attachment multiplicity is
    // 1, which the order does not divide
    const Component& top = m.component("top");
    long long d = top.N / std::gcd(top.N, ((top.nu % top.N) + top.N) % top.N);
    CHECK(d == 2);
    CHECK(m.component("pot").N % 2 == 0);
    CHECK((m.component("pot").N / 2) % d != 0);
    // conic cover data uses the top multiplicity
    Model a = assign_cover_classes(m);
    CHECK(a.symbols.euler_of("@F0") == 2);
    CHECK(a.component("mid").cover_class ==
          GrotElem::symbol("@C0") * (GrotElem::lefschetz() - GrotElem(1)));
}

TEST_CASE("conic root-of-unity order constraints") {
    // For a type-2 or type-6 conic flower the order of the top's candidate
    // eigenvalue never divides the attachment multiplicity; for 4C the
    // attachment multiplicity is even and the order does not divide half it.
    for (auto name : {"d2e.json", "countercand_621.json", "countercand_622.json",
                      "chain_conic_holds.json"}) {
        Model m = load(name);
        for (auto& f : m.flowers) {
            if (!is_conic_type(f.type)) continue;
            const Component& top = m.component(f.members.front());
            const Component& att = m.component(f.attachment);
            long long nu_mod = ((top.nu % top.N) + top.N) % top.N;
            long long d = top.N / std::gcd(top.N, nu_mod == 0 ? top.N : nu_mod);
            INFO(name << " flower type " << f.type);
            if (f.type == "4C") {
                CHECK(att.N % 2 == 0);
                CHECK((att.N / 2) % d != 0);
            } else {
                CHECK(att.N % d != 0);
            }
        }
    }
}
