#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "k3zeta/rational.hpp"

namespace k3zeta {

/**
 * The ten bounded integer systems whose solutions are the combinatorial
 * countercandidates. Variables, in fixed order:
 *   L0     blow-up count of the heavy end component (or the sum of both end
 *          counts in the two cases whose ends are interchangeable),
 *   S      total blow-up count over the inner components,
 *   phi    conic-flowers (2B/2C) on the inner components,
 *   gamma  plain 2A flowers on the inner components,
 *   phip   conic-flowers on the end component(s),
 *   gammap 2A flowers on the end component(s),
 *   g      (cases 2 and 10) genus of the one non-rational flower,
 *   N      (most cases) the minimal multiplicity, forced by index 1:
 *          1 when gamma = 0, 2 when gamma > 0.
 *
 * Each case couples them by three equalities (the complete cancellation of
 * the half-ratio factor in the monodromy zeta function, its reciprocal
 * degree being 24, and the chain blow-up identity) plus packing bounds on
 * how many disjoint flowercurves the surfaces can carry.
 */
struct CaseSystem {
    int case_id;
    std::string description;
    bool has_N = true;           // N eliminated in cases 2, 5, 7
    bool has_g = false;          // cases 2 and 10 carry a genus variable
    bool g_from_equality = false;  // case 2: g is determined, not searched
    bool ends_pooled = false;    // cases 9, 10: L0 stands for L0 + L_end
    bool has_exclusion = false;  // cases 1, 3, 5, 7 carry the mod-4 rule
    bool eq1_has_g = false;      // only case 10 subtracts 2g in equality 1
    long long eq1_rhs;           // phip + 2 gammap - phi - [2g] - L0 = eq1_rhs
    // second equality, cleared of fractions:
    //   c2 * S + 2*c2*phip + c2*gammap - 2*c2*phi - (3*c2/2)*gamma - [c2*2g]
    //     = c2 * (24/N stuff) ... encoded explicitly per case below
    std::function<bool(long long L0, long long S, long long phi, long long gamma,
                       long long phip, long long gammap, long long g, long long N)>
        eq2;
    long long eq3_rhs;           // L0 + 2 S = eq3_rhs
    long long phip_bound_extra;  // phip + gammap <= L0 + this
    bool inner_bound_loose;      // case 1: phi + gamma <= S + 1; else 2phi+2gamma <= S
};

struct Countercandidate {
    int case_id;
    std::map<std::string, long long> assignment;

    std::vector<long long> key() const {
        std::vector<long long> k;
        for (auto& [name, v] : assignment) k.push_back(v);
        return k;
    }
};

inline const std::vector<CaseSystem>& case_systems() {
    auto div24 = [](long long N) { return 24 / N; };
    static const std::vector<CaseSystem> cases = {
        {1, "heavy rational ruled end, light rational ruled end", true, false, false, false,
         true, false, 4,
         [div24](long long, long long S, long long phi, long long gamma, long long phip,
                 long long gammap, long long, long long N) {
             // S + 2 phip + gammap - 2 phi - 3 gamma / 2 = 24/N - 4, doubled
             return 2 * S + 4 * phip + 2 * gammap - 4 * phi - 3 * gamma ==
                    2 * (div24(N) - 4);
         },
         24, 1, true},
        {2, "heavy rational ruled end, elliptic ruled end", false, true, true, false, false,
         false, 4,
         [](long long, long long S, long long phi, long long gamma, long long phip,
            long long gammap, long long g, long long) {
             return 4 * phip + 2 * gammap - 4 * phi - 3 * gamma + 2 * g + 2 * S == 26;
         },
         8, 1, false},
        {3, "heavy rational ruled end, plane end of equal scale", true, false, false, false,
         true, false, 4,
         [div24](long long, long long S, long long phi, long long gamma, long long phip,
                 long long gammap, long long, long long N) {
             return 2 * S + 2 * gammap + 4 * phip - 4 * phi - 3 * gamma ==
                    2 * (div24(N) - 3);
         },
         26, 1, false},
        {4, "plane end of triple scale", true, false, false, false, false, false, 4,
         [div24](long long, long long S, long long phi, long long gamma, long long phip,
                 long long gammap, long long, long long N) {
             return 2 * S + 2 * gammap + 4 * phip - 4 * phi - 3 * gamma ==
                    2 * (div24(N) - 9);
         },
         14, 1, false},
        {5, "plane end of one-and-a-half scale", false, false, false, false, true, false, 4,
         [](long long, long long S, long long phi, long long gamma, long long phip,
            long long gammap, long long, long long) {
             return 2 * S + 2 * gammap + 4 * phip - 4 * phi - 3 * gamma == 15;
         },
         20, 1, false},
        {6, "quadric-cone-like end of quadruple scale", true, false, false, false, false, false,
         7,
         [div24](long long, long long S, long long phi, long long gamma, long long phip,
                 long long gammap, long long, long long N) {
             return 2 * S + 2 * gammap + 4 * phip - 4 * phi - 3 * gamma ==
                    2 * (div24(N) - 4);
         },
         12, 1, false},
        {7, "quadric-cone-like end of double scale, shifted plateau", false, false, false,
         false, true, false, 6,
         [](long long, long long S, long long phi, long long gamma, long long phip,
            long long gammap, long long, long long) {
             return 2 * S + 2 * gammap + 4 * phip - 4 * phi - 3 * gamma == 22;
         },
         16, 1, false},
        {8, "quadric-cone-like end of four-thirds scale", true, false, false, false, false,
         false, 4,
         [div24](long long, long long S, long long phi, long long gamma, long long phip,
                 long long gammap, long long, long long N) {
             return 6 * S + 6 * gammap + 12 * phip - 12 * phi - 9 * gamma ==
                    2 * (div24(N) - 10);
         },
         20, 1, false},
        {9, "two rational ruled double-scale ends", true, false, false, true, false, false, 8,
         [div24](long long, long long S, long long phi, long long gamma, long long phip,
                 long long gammap, long long, long long N) {
             return 2 * S + 4 * phip + 2 * gammap - 4 * phi - 3 * gamma == 2 * div24(N);
         },
         16, 2, false},
        {10, "rational ruled and elliptic ruled double-scale ends", true, true, false, true,
         false, true, 2,
         [div24](long long, long long S, long long phi, long long gamma, long long phip,
                 long long gammap, long long g, long long N) {
             return 2 * S + 4 * phip + 2 * gammap - 4 * g - 4 * phi - 3 * gamma ==
                    2 * (div24(N) - 2);
         },
         8, 1, false},
    };
    return cases;
}

inline const CaseSystem& case_system(int case_id) {
    for (auto& c : case_systems())
        if (c.case_id == case_id) return c;
    throw std::invalid_argument("case id must be between 1 and 10");
}

/// The survival side of the divisibility rule: a solution of a case carrying
/// the rule stays on the list iff L0 + 2 gammap is divisible by 4 (the square
/// of the covering degree must divide 8 - L0 - 2 gammap, so everything else
/// cannot exist as a cyclic cover and is excluded).
inline bool exclusion_passes(int case_id, const Countercandidate& sol) {
    const CaseSystem& cs = case_system(case_id);
    if (!cs.has_exclusion)
        throw std::invalid_argument("case " + std::to_string(case_id) +
                                    " has no exclusion rule");
    long long L0 = sol.assignment.at("L0");
    long long gammap = sol.assignment.at("gammap");
    return (L0 + 2 * gammap) % 4 == 0;
}

/**
 * Exhaustive search of one case. The third equality pins L0 to the chosen S
 * (bounding both); the packing inequalities bound the four flower counts;
 * N follows gamma; the genus is either determined by the second equality or
 * scanned inside its stated bound. Results are sorted lexicographically in
 * the variable order (L0, S, g?, gamma, gammap, phi, phip, N?).
 */
inline std::vector<Countercandidate> enumerate_case(int case_id, bool apply_exclusion = true) {
    const CaseSystem& cs = case_system(case_id);
    std::vector<Countercandidate> out;

    // L0 + 2S = eq3_rhs with L0 >= 1 bounds S by (eq3_rhs - 1) / 2
    for (long long S = 0; 2 * S <= cs.eq3_rhs - 1; ++S) {
        long long L0 = cs.eq3_rhs - 2 * S;
        // inner packing bound: phi + gamma <= S + 1, or 2(phi + gamma) <= S
        long long inner_cap = cs.inner_bound_loose ? S + 1 : S / 2;
        for (long long phi = 1; phi <= inner_cap; ++phi) {
            for (long long gamma = 0; phi + gamma <= inner_cap; ++gamma) {
                long long N = cs.has_N ? (gamma == 0 ? 1 : 2) : 1;
                // end packing bound: phip + gammap <= L0 + extra
                long long end_cap = L0 + cs.phip_bound_extra;
                for (long long phip = 0; phip <= end_cap; ++phip) {
                    for (long long gammap = 0; phip + gammap <= end_cap; ++gammap) {
                        auto try_g = [&](long long g) {
                            long long g2 = cs.eq1_has_g ? 2 * g : 0;
                            if (phip + 2 * gammap - phi - g2 - L0 != cs.eq1_rhs) return;
                            if (!cs.eq2(L0, S, phi, gamma, phip, gammap, g, N)) return;
                            Countercandidate sol;
                            sol.case_id = case_id;
                            sol.assignment = {{"L0", L0},       {"S", S},
                                              {"phi", phi},     {"gamma", gamma},
                                              {"phip", phip},   {"gammap", gammap}};
                            if (cs.has_g) sol.assignment["g"] = g;
                            if (cs.has_N) sol.assignment["N"] = N;
                            if (cs.has_exclusion && apply_exclusion &&
                                !exclusion_passes(case_id, sol))
                                return;
                            out.push_back(std::move(sol));
                        };
                        if (!cs.has_g) {
                            try_g(0);
                        } else if (cs.g_from_equality) {
                            // solve the second equality for g and check it back
                            // 4 phip + 2 gammap - 4 phi - 3 gamma + 2g + 2S = 26
                            long long rhs =
                                26 - 4 * phip - 2 * gammap + 4 * phi + 3 * gamma - 2 * S;
                            if (rhs % 2 == 0 && rhs / 2 >= 1) try_g(rhs / 2);
                        } else {
                            // stated bound: g <= (S - 2 phi - 2 gamma + gammap + 2)/2
                            long long cap = (S - 2 * phi - 2 * gamma + gammap + 2) / 2;
                            for (long long g = 1; g <= cap; ++g) try_g(g);
                        }
                    }
                }
            }
        }
    }

    std::sort(out.begin(), out.end(), [](const Countercandidate& a, const Countercandidate& b) {
        return a.key() < b.key();
    });
    return out;
}

/// Concatenation over the ten cases, exclusion rules applied.
inline std::vector<Countercandidate> enumerate_all() {
    std::vector<Countercandidate> out;
    for (auto& cs : case_systems()) {
        auto sols = enumerate_case(cs.case_id);
        out.insert(out.end(), sols.begin(), sols.end());
    }
    return out;
}

/**
 * Independent re-check of a solution against the original fractional
 * relations, evaluated in exact rational arithmetic; deliberately a
 * different code path from the cleared-integer search.
 */
inline bool verify_solution(const Countercandidate& sol) {
    const CaseSystem& cs = case_system(sol.case_id);
    auto get = [&](const char* k) { return Rat(sol.assignment.at(k)); };
    Rat L0 = get("L0"), S = get("S"), phi = get("phi"), gamma = get("gamma"),
        phip = get("phip"), gammap = get("gammap");
    Rat g = cs.has_g ? get("g") : Rat(0);
    Rat N = cs.has_N ? get("N") : Rat(1);

    if (cs.has_N) {
        if (sol.assignment.at("gamma") == 0 && N != Rat(1)) return false;
        if (sol.assignment.at("gamma") > 0 && N != Rat(2)) return false;
    }
    // first equality
    Rat two_g = cs.eq1_has_g ? Rat(2) * g : Rat(0);
    if (phip + Rat(2) * gammap - phi - two_g - L0 != Rat(cs.eq1_rhs)) return false;
    // second equality in its fractional form
    Rat lhs, rhs;
    switch (sol.case_id) {
        case 1: lhs = S + Rat(2) * phip + gammap - Rat(2) * phi - Rat(3, 2) * gamma;
                rhs = Rat(24) / N - Rat(4); break;
        case 2: lhs = Rat(4) * phip + Rat(2) * gammap - Rat(4) * phi - Rat(3) * gamma +
                      Rat(2) * g + Rat(2) * S;
                rhs = Rat(26); break;
        case 3: lhs = S + gammap + Rat(2) * phip - Rat(2) * phi - Rat(3, 2) * gamma;
                rhs = Rat(24) / N - Rat(3); break;
        case 4: lhs = S + gammap + Rat(2) * phip - Rat(2) * phi - Rat(3, 2) * gamma;
                rhs = Rat(24) / N - Rat(9); break;
        case 5: lhs = Rat(2) * S + Rat(2) * gammap + Rat(4) * phip - Rat(4) * phi -
                      Rat(3) * gamma;
                rhs = Rat(15); break;
        case 6: lhs = S + gammap + Rat(2) * phip - Rat(2) * phi - Rat(3, 2) * gamma;
                rhs = Rat(24) / N - Rat(4); break;
        case 7: lhs = Rat(2) * S + Rat(2) * gammap + Rat(4) * phip - Rat(4) * phi -
                      Rat(3) * gamma;
                rhs = Rat(22); break;
        case 8: lhs = Rat(3) * S + Rat(3) * gammap + Rat(6) * phip - Rat(6) * phi -
                      Rat(9, 2) * gamma;
                rhs = Rat(24) / N - Rat(10); break;
        case 9: lhs = S + Rat(2) * phip + gammap - Rat(2) * phi - Rat(3, 2) * gamma;
                rhs = Rat(24) / N; break;
        case 10: lhs = S + Rat(2) * phip + gammap - Rat(2) * g - Rat(2) * phi -
                       Rat(3, 2) * gamma;
                 rhs = Rat(24) / N - Rat(2); break;
        default: return false;
    }
    if (lhs != rhs) return false;
    // third equality
    if (L0 + Rat(2) * S != Rat(cs.eq3_rhs)) return false;
    // packing bounds
    if (!(phip + gammap <= L0 + Rat(cs.phip_bound_extra))) return false;
    if (cs.inner_bound_loose) {
        if (!(phi + gamma <= S + Rat(1))) return false;
    } else {
        if (!(Rat(2) * phi + Rat(2) * gamma <= S)) return false;
    }
    if (!(phi >= Rat(1) && L0 >= Rat(1))) return false;
    if (cs.has_g && !(g >= Rat(1))) return false;
    if (sol.case_id == 10) {
        if (!(g <= (S - Rat(2) * phi - Rat(2) * gamma + gammap + Rat(2)) / Rat(2)))
            return false;
    }
    return true;
}

/// Human-readable summary: case, variables, and the chain shape they encode.
inline std::string render_countercandidate(const Countercandidate& sol) {
    const CaseSystem& cs = case_system(sol.case_id);
    std::ostringstream os;
    os << "case " << sol.case_id << " (" << cs.description << "):";
    for (auto& [k, v] : sol.assignment) os << " " << k << "=" << v;
    os << "\n  chain: " << (cs.ends_pooled ? "end blow-ups total " : "heavy-end blow-ups ")
       << sol.assignment.at("L0") << ", inner blow-ups " << sol.assignment.at("S");
    if (cs.has_N) {
        long long N = sol.assignment.at("N");
        os << ", minimal multiplicity " << N;
    }
    os << "\n  flowers: " << sol.assignment.at("phi") << " conic (2B/2C) + "
       << sol.assignment.at("gamma") << " plain (2A) on the inner components, "
       << sol.assignment.at("phip") << " conic + " << sol.assignment.at("gammap")
       << " plain on the end" << (cs.ends_pooled ? "s" : "");
    if (cs.has_g)
        os << "\n  one ruled flower of type 4alpha and genus " << sol.assignment.at("g");
    return os.str();
}

}  // namespace k3zeta
