#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include "k3zeta/monodromy.hpp"
#include "support/model_gen.hpp"

using namespace k3zeta;

namespace {

Model load(const std::string& name) {
    const char* dir = std::getenv("K3ZETA_FIXTURE_DIR");
    REQUIRE(dir != nullptr);
    std::ifstream in(std::string(dir) + "/" + name);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return parse_model(os.str());
}

}  // namespace

TEST_CASE("monodromy zeta of the two-component example") {
    Model m = load("d2e.json");
    CycloProduct z = acampo(m);
    std::map<long long, long long> expect{{1, -22}, {2, -1}};
    CHECK(z.exponents() == expect);
    CHECK(degree_check(z) == 24);
    CHECK(z.str() == "(T - 1)^-22 * (T^2 - 1)^-1");
}

TEST_CASE("monodromy zeta of the first countercandidate") {
    // 1/((T^2-1)^11 (T-1)^2)
    Model m = load("countercand_621.json");
    CycloProduct z = acampo(m);
    std::map<long long, long long> expect{{1, -2}, {2, -11}};
    CHECK(z.exponents() == expect);
    CHECK(degree_check(z) == 24);
}

TEST_CASE("monodromy zeta of the second countercandidate") {
    // 1/((T^2+1)^5 (T-1)^14): exponent map {1: -14, 2: +5, 4: -5}
    Model m = load("countercand_622.json");
    CycloProduct z = acampo(m);
    std::map<long long, long long> expect{{1, -14}, {2, 5}, {4, -5}};
    CHECK(z.exponents() == expect);
    CHECK(degree_check(z) == 24);
    CHECK(cyclo_multiplicity(z, 2) == 0);   // -1 is neither zero nor pole
    CHECK(cyclo_multiplicity(z, 4) == -5);  // i is a pole
    CHECK(cyclo_multiplicity(z, 1) == -14);
}

TEST_CASE("cyclotomic multiplicity examples") {
    Model m = load("d2e.json");
    CycloProduct z = acampo(m);
    CHECK(cyclo_multiplicity(z, 2) == -1);
    CHECK(cyclo_multiplicity(z, 1) == -23);
    CHECK(cyclo_multiplicity(CycloProduct(), 7) == 0);
    CHECK(degree_check(CycloProduct()) == 0);
}

TEST_CASE("phi expansion round trip") {
    std::mt19937 rng(31);
    std::uniform_int_distribution<long long> Nv(1, 12), ev(-6, 6), n(1, 5);
    for (int i = 0; i < 100; ++i) {
        CycloProduct z;
        int k = n(rng);
        for (int j = 0; j < k; ++j) z.add(Nv(rng), ev(rng));
        CHECK(from_phi_multiplicities(phi_multiplicities(z)) == z);
    }
}

TEST_CASE("candidate eigenvalue orders") {
    CHECK(xi_order(2, 1) == 2);
    CHECK(xi_order(4, 5) == 4);
    CHECK(xi_order(2, 3) == 2);
    CHECK(xi_order(1, 0) == 1);
    CHECK(xi_order(6, 4) == 3);
    CHECK(xi_order(6, 0) == 1);  // nu divisible by N: order 1
}

TEST_CASE("eigenvalue membership") {
    Model m = load("d2e.json");
    CHECK(is_eigenvalue(m, eigenvalue_candidate(m, "E")));  // order 2

    Model c2 = load("countercand_622.json");
    CHECK(!is_eigenvalue(c2, eigenvalue_candidate(c2, "F0")));  // order 2, mult 0
    CHECK(eigenvalue_candidate(c2, "F0").order == 2);

    Model c1 = load("countercand_621.json");
    CHECK(eigenvalue_candidate(c1, "F0a").order == 4);
    CHECK(!is_eigenvalue(c1, eigenvalue_candidate(c1, "F0a")));

    // strict mode refuses non-24 inputs
    Model f = load("fig31.json");
    CHECK_THROWS_AS(is_eigenvalue(f, eigenvalue_candidate(f, "pot")), ModelError);
    CHECK_THROWS_AS(check_property(f), ModelError);
}

TEST_CASE("verdicts") {
    SECTION("flowerpot with a conic flower holds") {
        Verdict v = check_property(load("d2e.json"));
        CHECK(v.holds);
        REQUIRE(v.entries.size() == 2);
        CHECK(v.entries[0].status == CandidateStatus::MinimalWeight);
        CHECK(v.entries[1].status == CandidateStatus::Eigenvalue);
    }
    SECTION("flowerpot with plain flowers holds vacuously beyond the first pole") {
        Verdict v = check_property(load("flowerpot_2a.json"));
        CHECK(v.holds);
        REQUIRE(v.entries.size() == 1);
        CHECK(v.entries[0].status == CandidateStatus::MinimalWeight);
    }
    SECTION("plain chain holds") {
        Verdict v = check_property(load("chain_basic.json"));
        CHECK(v.holds);
    }
    SECTION("chain with benign conic flowers holds") {
        Verdict v = check_property(load("chain_conic_holds.json"));
        CHECK(v.holds);
        bool tested = false;
        for (auto& e : v.entries)
            if (e.status == CandidateStatus::Eigenvalue) tested = true;
        CHECK(tested);
    }
    SECTION("first countercandidate fails at its conic top") {
        Verdict v = check_property(load("countercand_621.json"));
        CHECK(!v.holds);
        bool failing_is_f0 = false;
        for (auto& e : v.entries)
            if (e.status == CandidateStatus::NotAnEigenvalue)
                for (auto& w : e.witnesses)
                    if (w == "F0a" || w == "F0b") failing_is_f0 = true;
        CHECK(failing_is_f0);
    }
    SECTION("second countercandidate fails at its conic top") {
        Verdict v = check_property(load("countercand_622.json"));
        CHECK(!v.holds);
        bool failing_is_f0 = false;
        for (auto& e : v.entries)
            if (e.status == CandidateStatus::NotAnEigenvalue)
                for (auto& w : e.witnesses)
                    if (w == "F0") failing_is_f0 = true;
        CHECK(failing_is_f0);
    }
}

TEST_CASE("the property holds on a flowerpot of every catalog type") {
    for (const Model& m : testgen::catalog_sweep_models()) {
        REQUIRE(validate(m, true).valid());
        Verdict v = check_property(m);
        INFO("flower type " << m.flowers.front().type);
        CHECK(v.holds);
        CHECK(classify(m) == DegenerationKind::Flowerpot);
    }
}

TEST_CASE("nonpositive cyclotomic multiplicities on valid surfaces") {
    for (auto name : {"d2e.json", "flowerpot_2a.json", "chain_basic.json",
                      "countercand_621.json", "countercand_622.json",
                      "chain_conic_holds.json"}) {
        Model m = load(name);
        CycloProduct z = acampo(m);
        INFO(name);
        CHECK(degree_check(z) == 24);
        for (auto& [d, mult] : phi_multiplicities(z)) CHECK(mult <= 0);
    }
}
