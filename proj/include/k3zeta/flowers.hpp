#pragma once

#include <array>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "k3zeta/ratzeta.hpp"

namespace k3zeta {

enum class TopKind { P2Line, P2Conic, MinimalRuled };

/// One row of the Crauder-Morrison flower catalog. Multiplicity coefficients
/// are in units of the row's scale N; variable-length rows list the leading
/// coefficients, a repeated middle coefficient, and the trailing ones.
struct FlowerTypeInfo {
    std::string code;
    TopKind top;
    int type_M;  // 2, 3, 4, 6, 8, 12
    bool variable_length;
    // fixed rows: full coefficient list; variable rows: first / middle / last
    std::vector<long long> fixed_comp;
    long long var_first = 0, var_middle = 0, var_last = 0;
    long long attach_coeff;
};

inline const std::vector<FlowerTypeInfo>& flower_catalog() {
    static const std::vector<FlowerTypeInfo> table = {
        // P^2 top meeting the next component in a line
        {"2A", TopKind::P2Line, 2, false, {1}, 0, 0, 0, 2},
        {"3A", TopKind::P2Line, 3, false, {1, 2}, 0, 0, 0, 3},
        {"3B", TopKind::P2Line, 3, false, {1}, 0, 0, 0, 3},
        {"4A", TopKind::P2Line, 4, false, {1, 2, 3}, 0, 0, 0, 4},
        {"4B", TopKind::P2Line, 4, false, {1}, 0, 0, 0, 4},
        {"6A", TopKind::P2Line, 6, false, {1, 2, 3, 4, 5}, 0, 0, 0, 6},
        {"6B", TopKind::P2Line, 6, false, {1}, 0, 0, 0, 6},
        // P^2 top meeting the next component in a conic
        {"2B", TopKind::P2Conic, 2, false, {2}, 0, 0, 0, 1},
        {"2C", TopKind::P2Conic, 2, true, {}, 2, 1, 1, 1},
        {"4C", TopKind::P2Conic, 4, true, {}, 2, 1, 1, 2},
        {"4D", TopKind::P2Conic, 4, true, {}, 1, 1, 1, 1},
        {"6C", TopKind::P2Conic, 6, true, {}, 2, 1, 2, 3},
        {"6D", TopKind::P2Conic, 6, true, {}, 2, 1, 1, 3},
        {"6E", TopKind::P2Conic, 6, false, {2}, 0, 0, 0, 3},
        // minimal ruled top
        {"4alpha", TopKind::MinimalRuled, 4, false, {1}, 0, 0, 0, 2},
        {"6alpha", TopKind::MinimalRuled, 6, false, {1, 2}, 0, 0, 0, 3},
        {"6beta", TopKind::MinimalRuled, 6, false, {1}, 0, 0, 0, 3},
        {"8alpha", TopKind::MinimalRuled, 8, false, {1, 2, 3}, 0, 0, 0, 4},
        {"8beta", TopKind::MinimalRuled, 8, false, {1}, 0, 0, 0, 4},
        {"12alpha", TopKind::MinimalRuled, 12, false, {1, 2, 3, 4, 5}, 0, 0, 0, 6},
        {"12beta", TopKind::MinimalRuled, 12, false, {1}, 0, 0, 0, 6},
    };
    return table;
}

inline const FlowerTypeInfo* find_flower_type(const std::string& code) {
    for (auto& row : flower_catalog())
        if (row.code == code) return &row;
    return nullptr;
}

inline const FlowerTypeInfo& flower_type(const std::string& code) {
    const FlowerTypeInfo* t = find_flower_type(code);
    if (!t) throw std::invalid_argument("unknown flower type '" + code + "'");
    return *t;
}

inline bool is_conic_type(const std::string& code) {
    return flower_type(code).top == TopKind::P2Conic;
}

struct FlowerComposition {
    std::vector<long long> multiplicities;  // N_0 .. N_ell
    long long attach;                       // N_{ell+1}
};

/// Multiplicity sequence and attachment multiplicity for a catalog row at
/// scale N. Variable-length rows need ell >= 1; fixed rows reject an ell.
inline FlowerComposition flower_compose(const std::string& code, long long N,
                                        std::optional<long long> ell = std::nullopt) {
    const FlowerTypeInfo& t = flower_type(code);
    if (N < 1) throw std::invalid_argument("flower_compose: N must be >= 1");
    FlowerComposition c;
    if (t.variable_length) {
        if (!ell) throw std::invalid_argument("flower type " + code + " needs a length");
        if (*ell < 1) throw std::invalid_argument("flower type " + code + " needs length >= 1");
        c.multiplicities.push_back(t.var_first * N);
        for (long long j = 1; j < *ell; ++j) c.multiplicities.push_back(t.var_middle * N);
        c.multiplicities.push_back(t.var_last * N);
    } else {
        if (ell) throw std::invalid_argument("flower type " + code + " has fixed length");
        for (long long k : t.fixed_comp) c.multiplicities.push_back(k * N);
    }
    c.attach = t.attach_coeff * N;
    return c;
}

/// A concrete flower: type, scale, length (variable types only), top nu and
/// genus (0 for all P^2 tops).
struct FlowerSpec {
    std::string type;
    long long N = 1;
    std::optional<long long> ell;
    long long nu0 = 0;
    long long genus = 0;

    /// Conic types parametrized by the data of the component after the top,
    /// which avoids fractions: nu0 = 2*nu1 + 1.
    static FlowerSpec conic_from_nu1(const std::string& type, long long N, long long nu1,
                                     std::optional<long long> ell = std::nullopt) {
        if (!is_conic_type(type))
            throw std::invalid_argument("conic_from_nu1: " + type + " is not a conic type");
        return FlowerSpec{type, N, ell, 2 * nu1 + 1, 0};
    }

    long long length() const {
        const FlowerTypeInfo& t = flower_type(type);
        if (t.variable_length) return ell.value();
        return static_cast<long long>(t.fixed_comp.size()) - 1;
    }
};

/**
 * The nu-sequence nu_0 .. nu_{ell+1} of a flower, derived from nu_0 by the
 * consecutive-component relations: the first step subtracts 2 (line top),
 * 1/2 (conic top) or 1 (ruled top) from (N_1/N_0)nu_0, and interior steps use
 * nu_{j+1} = ((N_{j-1}+N_{j+1})/N_j) nu_j - nu_{j-1}. Throws when a
 * fractional nu would result (conic types need odd nu_0; type 4D always
 * fails, which is why it never occurs on the surfaces this toolkit targets).
 */
inline std::vector<long long> flower_nus(const FlowerSpec& spec) {
    const FlowerTypeInfo& t = flower_type(spec.type);
    FlowerComposition comp = flower_compose(spec.type, spec.N, spec.ell);
    std::vector<long long> Ns = comp.multiplicities;
    Ns.push_back(comp.attach);
    const long long ell = static_cast<long long>(comp.multiplicities.size()) - 1;

    std::vector<Rat> nus;
    nus.emplace_back(spec.nu0);
    Rat first_offset = t.top == TopKind::P2Line    ? Rat(2)
                       : t.top == TopKind::P2Conic ? Rat(1, 2)
                                                   : Rat(1);
    nus.push_back(Rat(Ns[1], Ns[0]) * Rat(spec.nu0) - first_offset);
    for (long long j = 1; j <= ell; ++j) {
        Rat next = Rat(Ns[j - 1] + Ns[j + 1], Ns[j]) * nus[j] - nus[j - 1];
        nus.push_back(next);
    }
    std::vector<long long> out;
    out.reserve(nus.size());
    for (const Rat& v : nus) {
        if (!v.is_integer())
            throw std::invalid_argument("flower type " + spec.type + " with nu0 = " +
                                        std::to_string(spec.nu0) +
                                        " yields fractional numerical data");
        out.push_back(v.num());
    }
    return out;
}

/// Cover classes used when a flower is handled on its own: one fresh symbol
/// per top kind, combined exactly as the cover computation dictates.
struct FlowerClasses {
    GrotElem top;     // class of the open top
    GrotElem middle;  // class of each open middle component
    GrotElem curve;   // class of every double-curve cover in the flower
};

inline FlowerClasses default_flower_classes(const FlowerSpec& spec) {
    const GrotElem L = GrotElem::lefschetz();
    switch (flower_type(spec.type).top) {
        case TopKind::P2Line: {
            GrotElem p = GrotElem::symbol("P");
            return {p * L * L, p * (L + GrotElem(1)) * (L - GrotElem(1)),
                    p * (L + GrotElem(1))};
        }
        case TopKind::MinimalRuled: {
            GrotElem c = GrotElem::symbol("C1");
            return {c * L, c * (L - GrotElem(1)), c};
        }
        case TopKind::P2Conic:
        default: {
            GrotElem f0 = GrotElem::symbol("F0");
            GrotElem c = GrotElem::symbol("C1");
            return {f0, c * (L - GrotElem(1)), c};
        }
    }
}

/**
 * Contribution of a flower to the motivic zeta function, expanded literally:
 *   sum_{j=0}^{ell} ( [open F_j] t_j + (L-1)[curve C_{j+1}] t_j t_{j+1} )
 * with t_j = L^{-nu_j}T^{N_j}/(1 - L^{-nu_j}T^{N_j}) and t_{ell+1} built
 * from the attachment data.
 */
inline ZetaRat contribution(const FlowerSpec& spec, const FlowerClasses& classes) {
    FlowerComposition comp = flower_compose(spec.type, spec.N, spec.ell);
    std::vector<long long> Ns = comp.multiplicities;
    Ns.push_back(comp.attach);
    std::vector<long long> nus = flower_nus(spec);
    const long long ell = static_cast<long long>(comp.multiplicities.size()) - 1;
    const GrotElem L = GrotElem::lefschetz();

    auto t = [&](long long j) { return zeta_term(GrotElem(1), -nus[j], Ns[j]); };

    ZetaRat total = ZetaRat::zero();
    for (long long j = 0; j <= ell; ++j) {
        const GrotElem& cls = (j == 0) ? classes.top : classes.middle;
        total = zeta_add(total, zeta_mul(ZetaRat::constant(cls), t(j)));
        ZetaRat cross = zeta_mul(ZetaRat::constant((L - GrotElem(1)) * classes.curve),
                                 zeta_mul(t(j), t(j + 1)));
        total = zeta_add(total, cross);
    }
    return total;
}

inline ZetaRat contribution(const FlowerSpec& spec) {
    return contribution(spec, default_flower_classes(spec));
}

namespace detail {

/// cls * L^{le} T^{td} as a one-term polynomial.
inline TPoly mono(const GrotElem& cls, long long le, long long td) {
    TPoly p;
    tpoly_add_term(p, td, cls * GrotElem::lefschetz(le));
    return p;
}

/// (L^k - 1).
inline GrotElem lpow_minus_one(long long k) {
    return GrotElem::lefschetz(k) - GrotElem(1);
}

}  // namespace detail

/**
 * The closed-form contribution of a flower, as a single explicit rational
 * function per catalog row. Fixed-top rows have the lone denominator factor
 * 1 - L^{-nu_{ell+1}}T^{N_{ell+1}}; conic rows also keep the top factor.
 * Type 4D has no closed form. The 2C numerator's T^{2N_1} term carries
 * L^{-2nu_1+ell}; spelling it without the -2nu_1 does not match the expanded
 * definition (see the verification suite, which proves every row on a grid
 * exceeding the degree bounds).
 */
inline ZetaRat closed_form(const FlowerSpec& spec, const FlowerClasses& classes) {
    if (spec.type == "4D")
        throw std::invalid_argument("type 4D has no contribution on these surfaces");
    const FlowerTypeInfo& t = flower_type(spec.type);
    FlowerComposition comp = flower_compose(spec.type, spec.N, spec.ell);
    std::vector<long long> nus = flower_nus(spec);
    const long long N0 = comp.multiplicities.front();
    const long long nu0 = spec.nu0;
    const long long nuA = nus.back();
    const long long NA = comp.attach;
    const GrotElem L = GrotElem::lefschetz();
    const GrotElem one(1);

    using detail::lpow_minus_one;
    using detail::mono;

    if (t.top == TopKind::P2Line || t.top == TopKind::MinimalRuled) {
        // prefix [cls] L^{-nu0+s} T^{N0}, s = 2 for a line top, 1 for ruled
        const long long s = t.top == TopKind::P2Line ? 2 : 1;
        // The bracket polynomial per row, in powers of L^{-k nu0 + c} T^{k N0}.
        TPoly bracket;
        auto add = [&](long long k, long long c) {
            tpoly_add_term(bracket, k * N0, GrotElem::lefschetz(-k * nu0 + c));
        };
        const std::string& code = spec.type;
        if (code == "2A" || code == "4alpha") {
            add(0, 0);
            add(1, 0);
        } else if (code == "3A") {
            add(0, 0);
            add(1, 2);
            add(2, 2);
        } else if (code == "6alpha") {
            add(0, 0);
            add(1, 1);
            add(2, 1);
        } else if (code == "3B" || code == "6beta") {
            add(0, 0);
            add(1, 0);
            add(2, 0);
        } else if (code == "4A") {
            add(0, 0);
            add(1, 2);
            add(2, 4);
            add(3, 4);
        } else if (code == "8alpha") {
            add(0, 0);
            add(1, 1);
            add(2, 2);
            add(3, 2);
        } else if (code == "4B" || code == "8beta") {
            // (x+1)(x^2+1), x = L^{-nu0}T^{N0}
            add(0, 0);
            add(1, 0);
            add(2, 0);
            add(3, 0);
        } else if (code == "6A") {
            add(0, 0);
            add(1, 2);
            add(2, 4);
            add(3, 6);
            add(4, 8);
            add(5, 8);
        } else if (code == "12alpha") {
            add(0, 0);
            add(1, 1);
            add(2, 2);
            add(3, 3);
            add(4, 4);
            add(5, 4);
        } else if (code == "6B" || code == "12beta") {
            // (x+1)(x^2-x+1)(x^2+x+1) = 1+x+x^2+x^3+x^4+x^5
            for (long long k = 0; k <= 5; ++k) add(k, 0);
        } else {
            throw std::logic_error("closed_form: unhandled fixed row " + code);
        }
        auto base = grot_div_exact(
            classes.top, t.top == TopKind::P2Line ? GrotElem::lefschetz(2) : L);
        if (!base)
            throw std::invalid_argument("closed_form: top class has unexpected shape");
        GrotElem prefix_cls = *base;
        TPoly num = tpoly_mul(mono(prefix_cls * GrotElem::lefschetz(s), -nu0, N0), bracket);
        return ZetaRat(num, {{DenFactor{-nuA, NA}, 1}});
    }

    // Conic rows. 2B and 6E are two-term expressions; the length-parametrized
    // rows are a top term plus an explicit numerator over both end factors.
    GrotElem curve_cls = classes.curve;
    if (spec.type == "2B" || spec.type == "6E") {
        ZetaRat top = zeta_mul(ZetaRat::constant(classes.top), zeta_term(one, -nu0, N0));
        ZetaRat cross = zeta_mul(ZetaRat::constant((L - one) * curve_cls),
                                 zeta_mul(zeta_term(one, -nu0, N0), zeta_term(one, -nuA, NA)));
        return zeta_add(top, cross);
    }

    const long long ell = spec.ell.value();
    const long long N1 = spec.N;
    const long long nu1 = (nu0 - 1) / 2;
    TPoly theta;
    auto add = [&](const GrotElem& front, long long lexp, long long k) {
        tpoly_add_term(theta, k * N1, front * GrotElem::lefschetz(lexp));
    };
    if (spec.type == "2C") {
        add(L - one, -2 * nu1 + ell, 2);
        add(lpow_minus_one(ell), -nu1 + 1, 1);
        add(lpow_minus_one(ell) * L, 0, 0);
    } else if (spec.type == "4C") {
        add(L - one, -3 * nu1 + 2 * ell - 1, 3);
        add(lpow_minus_one(ell), -2 * nu1 + ell, 2);
        add(lpow_minus_one(2 * ell - 1), -nu1 + 1, 1);
        add(lpow_minus_one(ell) * L, 0, 0);
    } else if (spec.type == "6C") {
        add(L - one, -4 * nu1 + 3 * ell - 4, 4);
        add(lpow_minus_one(ell - 1), -3 * nu1 + 2 * ell - 2, 3);
        add(lpow_minus_one(2 * ell - 2), -2 * nu1 + ell - 1, 2);
        add(lpow_minus_one(2 * ell - 2), -nu1 + 1, 1);
        add(lpow_minus_one(ell - 1) * L, 0, 0);
    } else if (spec.type == "6D") {
        add(L - one, -4 * nu1 + 3 * ell - 2, 4);
        add(lpow_minus_one(ell), -3 * nu1 + 2 * ell - 1, 3);
        add(lpow_minus_one(2 * ell - 1), -2 * nu1 + ell, 2);
        add(lpow_minus_one(2 * ell - 1), -nu1 + 1, 1);
        add(lpow_minus_one(ell) * L, 0, 0);
    } else {
        throw std::logic_error("closed_form: unhandled conic row " + spec.type);
    }
    ZetaRat top = zeta_mul(ZetaRat::constant(classes.top), zeta_term(one, -nu0, N0));
    TPoly num = tpoly_mul(mono(curve_cls, -nu1 - 1, N1), theta);
    ZetaRat rest(num, {{DenFactor{-nu0, N0}, 1}, {DenFactor{-nuA, NA}, 1}});
    return zeta_add(top, rest);
}

inline ZetaRat closed_form(const FlowerSpec& spec) {
    return closed_form(spec, default_flower_classes(spec));
}

// ---- grid verification ----

struct VerifyEntry {
    FlowerSpec spec;
    bool equal;
};

struct VerifyReport {
    std::string type;
    std::vector<VerifyEntry> entries;
    bool all_equal() const {
        for (auto& e : entries)
            if (!e.equal) return false;
        return !entries.empty();
    }
    long long checked() const { return static_cast<long long>(entries.size()); }
};

struct VerifyGrid {
    long long max_N = 3;
    long long nu_values = 6;  // consecutive admissible seeds per (N, ell)
    long long max_len = 5;
};

/// All specs of one type covering the grid. Line/ruled rows iterate nu0 over
/// consecutive integers; conic rows iterate the post-top seed nu1 (so nu0
/// runs over consecutive odd values, the admissible ones).
inline std::vector<FlowerSpec> grid_specs(const std::string& code, const VerifyGrid& grid) {
    const FlowerTypeInfo& t = flower_type(code);
    std::vector<FlowerSpec> out;
    std::vector<std::optional<long long>> lengths;
    if (t.variable_length) {
        long long lo = code == "6C" ? 2 : 1;  // length 1 of 6C has no integral data
        for (long long l = lo; l <= grid.max_len; ++l) lengths.push_back(l);
    } else {
        lengths.push_back(std::nullopt);
    }
    for (long long N = 1; N <= grid.max_N; ++N)
        for (auto& l : lengths)
            for (long long seed = 1; seed <= grid.nu_values; ++seed) {
                if (t.top == TopKind::P2Conic)
                    out.push_back(FlowerSpec::conic_from_nu1(code, N, seed + 1, l));
                else
                    out.push_back(FlowerSpec{code, N, l, seed + 1, 0});
            }
    return out;
}

/**
 * Checks contribution == closed_form over a grid of concrete parameters.
 * Both sides are rational functions whose cross-multiplied difference has
 * monomial exponents affine in (nu, N) for each fixed (type, length); a grid
 * that exceeds the affine degree bound in each parameter therefore proves
 * the identity for the whole family, not just the sampled points.
 */
inline VerifyReport verify_table(const std::string& code, const VerifyGrid& grid = {}) {
    if (code == "4D")
        throw std::invalid_argument("type 4D has no closed form to verify");
    VerifyReport report;
    report.type = code;
    for (const FlowerSpec& spec : grid_specs(code, grid)) {
        bool eq = zeta_equals(contribution(spec), closed_form(spec));
        report.entries.push_back({spec, eq});
    }
    return report;
}

/// Every verifiable catalog row (all but 4D).
inline std::vector<std::string> verifiable_types() {
    std::vector<std::string> out;
    for (auto& row : flower_catalog())
        if (row.code != "4D") out.push_back(row.code);
    return out;
}

}  // namespace k3zeta
