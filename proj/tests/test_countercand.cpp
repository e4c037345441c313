#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "k3zeta/countercand.hpp"

using namespace k3zeta;

TEST_CASE("per-case solution counts") {
    const long long expected[10] = {42, 1, 17, 2, 1, 0, 0, 0, 0, 0};
    for (int c = 1; c <= 10; ++c) {
        auto sols = enumerate_case(c);
        INFO("case " << c);
        CHECK(static_cast<long long>(sols.size()) == expected[c - 1]);
    }
    CHECK(enumerate_all().size() == 63);
    CHECK_THROWS_AS(enumerate_case(0), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_case(11), std::invalid_argument);
}

TEST_CASE("the unique solution of the elliptic-end case") {
    auto sols = enumerate_case(2);
    REQUIRE(sols.size() == 1);
    const auto& a = sols[0].assignment;
    CHECK(a.at("L0") == 4);
    CHECK(a.at("S") == 2);
    CHECK(a.at("phi") == 1);
    CHECK(a.at("gamma") == 0);
    CHECK(a.at("phip") == 1);
    CHECK(a.at("gammap") == 4);
    CHECK(a.at("g") == 7);
}

TEST_CASE("case 1 without the exclusion rule") {
    auto with = enumerate_case(1, true);
    auto without = enumerate_case(1, false);
    CHECK(with.size() == 42);
    CHECK(without.size() == 68);
    CHECK(without.size() - with.size() == 26);
    // survivors all have L0 + 2 gammap divisible by 4
    for (auto& s : with)
        CHECK((s.assignment.at("L0") + 2 * s.assignment.at("gammap")) % 4 == 0);
}

TEST_CASE("exclusion rule arithmetic") {
    Countercandidate sol;
    sol.case_id = 1;
    sol.assignment = {{"L0", 4}, {"gammap", 4}};
    CHECK(exclusion_passes(1, sol));  // 12 = 0 mod 4 survives
    sol.assignment = {{"L0", 6}, {"gammap", 6}};
    CHECK(!exclusion_passes(1, sol));  // 18 = 2 mod 4 is excluded
    sol.assignment = {{"L0", 10}, {"gammap", 5}};
    CHECK(exclusion_passes(1, sol));  // 20 = 0 mod 4 survives
    CHECK_THROWS_AS(exclusion_passes(2, sol), std::invalid_argument);
}

TEST_CASE("determinism") {
    auto a = enumerate_all();
    auto b = enumerate_all();
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].case_id == b[i].case_id);
        CHECK(a[i].assignment == b[i].assignment);
    }
    // sorted within each case
    for (int c = 1; c <= 5; ++c) {
        auto sols = enumerate_case(c);
        for (size_t i = 0; i + 1 < sols.size(); ++i) CHECK(sols[i].key() <= sols[i + 1].key());
    }
}

TEST_CASE("independent verifier confirms every emitted solution") {
    for (auto& sol : enumerate_all()) {
        INFO(render_countercandidate(sol));
        CHECK(verify_solution(sol));
    }
    // and the unfiltered case-1 list too
    for (auto& sol : enumerate_case(1, false)) CHECK(verify_solution(sol));
    // a perturbed solution fails
    auto sols = enumerate_case(2);
    REQUIRE(!sols.empty());
    Countercandidate bad = sols[0];
    bad.assignment["phi"] += 1;
    CHECK(!verify_solution(bad));
}

TEST_CASE("reports") {
    auto sols = enumerate_case(2);
    REQUIRE(sols.size() == 1);
    std::string text = render_countercandidate(sols[0]);
    CHECK(text.find("case 2") != std::string::npos);
    CHECK(text.find("4alpha") != std::string::npos);
    CHECK(text.find("genus 7") != std::string::npos);

    for (auto& sol : enumerate_case(1)) {
        std::string r = render_countercandidate(sol);
        CHECK(r.find("minimal multiplicity") != std::string::npos);
    }
    CHECK(enumerate_case(9).empty());
}

TEST_CASE("cleared systems enforce parity") {
    // gamma must be even whenever the doubled relation leaves 3*gamma odd
    for (int c : {1, 3, 4, 6}) {
        for (auto& sol : enumerate_case(c, false)) CHECK(sol.assignment.at("gamma") % 2 == 0);
    }
    // case 5 is pre-cleared with an odd constant: gamma is odd there
    for (auto& sol : enumerate_case(5, false)) CHECK(sol.assignment.at("gamma") % 2 == 1);
}
