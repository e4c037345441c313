#pragma once

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "k3zeta/ratzeta.hpp"
#include "k3zeta/sncmodel.hpp"

namespace k3zeta {

/**
 * The full zeta function of a model with assigned cover classes: one term
 * per component, and for every curve of every intersection a cross term
 * (L-1)[curve cover] t_i t_j. Triple points are absent, so no deeper strata
 * occur. Throws when a needed class is missing.
 */
inline ZetaRat assemble(const Model& m) {
    ZetaRat total = ZetaRat::zero();
    for (const Component& c : m.components) {
        if (!c.has_cover)
            throw ModelError("component '" + c.id + "' has no cover class assigned");
        total = zeta_add(total, zeta_mul(ZetaRat::constant(c.cover_class),
                                         zeta_term(GrotElem(1), -c.nu, c.N)));
    }
    const GrotElem lminus1 = GrotElem::lefschetz() - GrotElem(1);
    for (const Edge& e : m.edges) {
        const Component& a = m.component(e.a);
        const Component& b = m.component(e.b);
        for (const CurveData& cd : e.curves) {
            if (!cd.has_cover)
                throw ModelError("curve on '" + e.a + "'-'" + e.b +
                                 "' has no cover class assigned");
            ZetaRat cross = zeta_mul(
                ZetaRat::constant(lminus1 * cd.cover_class),
                zeta_mul(zeta_term(GrotElem(1), -a.nu, a.N), zeta_term(GrotElem(1), -b.nu, b.N)));
            total = zeta_add(total, cross);
        }
    }
    return total;
}

/// The part of the zeta function carried by the minimal-weight components
/// and the intersections among them.
inline ZetaRat assemble_minimal(const Model& m) {
    std::vector<std::string> locus = minimal_locus(m);
    std::set<std::string> in_locus(locus.begin(), locus.end());
    ZetaRat total = ZetaRat::zero();
    for (auto& id : locus) {
        const Component& c = m.component(id);
        if (!c.has_cover)
            throw ModelError("component '" + c.id + "' has no cover class assigned");
        total = zeta_add(total, zeta_mul(ZetaRat::constant(c.cover_class),
                                         zeta_term(GrotElem(1), -c.nu, c.N)));
    }
    const GrotElem lminus1 = GrotElem::lefschetz() - GrotElem(1);
    for (const Edge& e : m.edges) {
        if (!in_locus.count(e.a) || !in_locus.count(e.b)) continue;
        const Component& a = m.component(e.a);
        const Component& b = m.component(e.b);
        for (const CurveData& cd : e.curves) {
            if (!cd.has_cover)
                throw ModelError("curve on '" + e.a + "'-'" + e.b +
                                 "' has no cover class assigned");
            total = zeta_add(total, zeta_mul(ZetaRat::constant(lminus1 * cd.cover_class),
                                             zeta_mul(zeta_term(GrotElem(1), -a.nu, a.N),
                                                      zeta_term(GrotElem(1), -b.nu, b.N))));
        }
    }
    return total;
}

/// The contribution of one annotated flower, using the model's assigned
/// classes (so the decomposition against assemble() is exact on the nose).
inline ZetaRat flower_contribution(const Model& m, size_t flower_index) {
    const FlowerRef& f = m.flowers.at(flower_index);
    const Component& top = m.component(f.members.front());
    if (!top.has_cover) throw ModelError("flower classes not assigned; assign covers first");
    GrotElem curve_cls;
    const Edge* e0 = m.edge_between(f.members.front(),
                                    f.members.size() > 1 ? f.members[1] : f.attachment);
    if (!e0 || !e0->curves.front().has_cover)
        throw ModelError("flower curve classes not assigned");
    curve_cls = e0->curves.front().cover_class;
    GrotElem middle_cls = curve_cls * (GrotElem::lefschetz() - GrotElem(1));

    const FlowerTypeInfo& info = flower_type(f.type);
    long long ell = static_cast<long long>(f.members.size()) - 1;
    long long scale = top.N / (info.variable_length ? info.var_first : info.fixed_comp.front());
    FlowerSpec spec{f.type, scale,
                    info.variable_length ? std::optional<long long>(ell) : std::nullopt, top.nu,
                    0};
    return contribution(spec, FlowerClasses{top.cover_class, middle_cls, curve_cls});
}

/// All candidate pairs (-nu_i, N_i), deduplicated.
inline std::set<DenFactor> candidate_poles(const Model& m) {
    std::set<DenFactor> out;
    for (const Component& c : m.components) out.insert(DenFactor{-c.nu, c.N});
    return out;
}

enum class PoleSource { MinimalWeight, ConicTop };

struct Pole {
    Rat ratio;
    int order;  // 1 or 2
    PoleSource source;
    std::vector<std::string> witnesses;  // component ids realizing the ratio
};

struct PoleReport {
    std::set<DenFactor> candidates;
    std::vector<Pole> poles;  // sorted by descending ratio
    Rat lct;
    long long delta = 0;
};

/// Ids of conic-flower tops.
inline std::vector<std::string> conic_tops(const Model& m) {
    std::vector<std::string> out;
    for (auto& f : m.flowers)
        if (is_conic_type(f.type)) out.push_back(f.members.front());
    return out;
}

/**
 * The exact pole set by the structural classification: -nu/N is a pole iff
 * the component has minimal weight or is the top of a conic-flower. The
 * minimal-weight pole has order 1 for a flowerpot and 2 for a chain (that is
 * delta + 1, where delta counts intersecting minimal components); conic-top
 * poles have order 1. The largest pole is -lct with lct = min nu_i/N_i.
 */
inline PoleReport exact_poles(const Model& m) {
    PoleReport r;
    r.candidates = candidate_poles(m);

    std::vector<std::string> locus = minimal_locus(m);
    std::set<std::string> in_locus(locus.begin(), locus.end());
    const Component& f0 = m.component(locus.front());
    r.lct = Rat(f0.nu, f0.N);

    // delta: largest number of pairwise-intersecting minimal components
    // minus one; with no triple points this is 1 iff two of them intersect.
    r.delta = 0;
    for (const Edge& e : m.edges)
        if (in_locus.count(e.a) && in_locus.count(e.b)) r.delta = 1;

    Pole minimal{-r.lct, static_cast<int>(r.delta + 1), PoleSource::MinimalWeight, locus};
    r.poles.push_back(minimal);

    std::map<Rat, std::vector<std::string>> conic_by_ratio;
    for (auto& id : conic_tops(m)) {
        const Component& c = m.component(id);
        conic_by_ratio[Rat(-c.nu, c.N)].push_back(id);
    }
    for (auto& [ratio, ids] : conic_by_ratio)
        r.poles.push_back(Pole{ratio, 1, PoleSource::ConicTop, ids});

    std::sort(r.poles.begin(), r.poles.end(),
              [](const Pole& x, const Pole& y) { return y.ratio < x.ratio; });
    return r;
}

/// Polynomial in T with Laurent coefficients in v.
using VTPoly = std::map<long long, VLaurent>;

inline VTPoly poincare_tpoly(const TPoly& p, const SymbolTable& symbols) {
    VTPoly out;
    for (auto& [d, c] : p) {
        VLaurent v = poincare_specialize(c, symbols);
        if (!v.is_zero()) out[d] = v;
    }
    return out;
}

/// Substitute T = v^{q} (q rational) into a T-polynomial over v-Laurents.
inline VLaurent vtpoly_substitute(const VTPoly& p, const Rat& q) {
    VLaurent total;
    for (auto& [d, c] : p) {
        VLaurent shifted = c.shifted(q * Rat(d));
        total = total + shifted;
    }
    return total;
}

/**
 * Specialization pole certificate: write z = F / prod(1 - L^a' T^b'), apply
 * the Poincare morphism to F and substitute T = v^{-2a/b}. A nonzero result
 * certifies that a/b is a pole of z. Requires the candidate factor to be
 * present in z's (canonical) denominator, and Poincare data for every class
 * in the numerator.
 */
inline bool poincare_pole_test(const ZetaRat& z, long long a, long long b,
                               const SymbolTable& symbols) {
    if (!z.den().count(DenFactor{a, b})) return false;  // nothing to certify
    VTPoly pf = poincare_tpoly(z.num(), symbols);
    VLaurent value = vtpoly_substitute(pf, Rat(-2 * a, b));
    return !value.is_zero();
}

enum class OracleStatus { PoleCertified, NoCertificate, Untestable };

struct OracleEntry {
    DenFactor candidate;
    OracleStatus status;
    std::string missing;  // symbol blocking the test, when untestable
};

/// Runs the specialization test on every candidate of the model, reporting
/// per-candidate certification; candidates whose evaluation needs absent
/// class data are reported untestable rather than guessed.
inline std::vector<OracleEntry> oracle_report(const Model& m) {
    ZetaRat z = assemble(m);
    std::vector<OracleEntry> out;
    for (const DenFactor& cand : candidate_poles(m)) {
        OracleEntry entry{cand, OracleStatus::NoCertificate, ""};
        try {
            entry.status = poincare_pole_test(z, cand.a, cand.b, m.symbols)
                               ? OracleStatus::PoleCertified
                               : OracleStatus::NoCertificate;
        } catch (const MissingDataError& e) {
            entry.status = OracleStatus::Untestable;
            entry.missing = e.symbol();
        }
        out.push_back(entry);
    }
    return out;
}

/**
 * The specialized numerator Theta attached to the conic tops at ratio q:
 * for each top (N_i, nu_i) at the ratio,
 *   Theta_i(T) = [top] L^{-nu_i}T^{N_i}(1 - L^{-(nu_i-1)/2}T^{N_i/2})
 *                + (L-1)[curve] L^{(-3nu_i+1)/2}T^{3N_i/2},
 * summed over the common denominator with the geometric correction factors,
 * then Poincare-specialized at T = v^{-2 nu/N}. Nonvanishing of the result
 * is the certified contract; its exact closed form is not relied upon.
 */
inline VLaurent theta_specialize(const Model& m, const Rat& q) {
    std::vector<std::string> tops;
    for (auto& id : conic_tops(m)) {
        const Component& c = m.component(id);
        if (Rat(-c.nu, c.N) == q) tops.push_back(id);
    }
    if (tops.empty())
        throw ModelError("no conic-flower top at ratio " + q.str());

    long long N = 1, nu = 1;
    for (auto& id : tops) {
        const Component& c = m.component(id);
        N = std::lcm(N, c.N);
        nu = std::lcm(nu, c.nu);
    }

    const GrotElem L = GrotElem::lefschetz();
    TPoly theta;
    for (auto& id : tops) {
        const Component& c = m.component(id);
        if (!c.has_cover) throw ModelError("conic top '" + id + "' has no cover class");
        // curve class of its flower
        GrotElem curve_cls;
        for (auto& f : m.flowers) {
            if (f.members.front() != id) continue;
            const Edge* e = m.edge_between(id, f.members.size() > 1 ? f.members[1]
                                                                    : f.attachment);
            if (!e || !e->curves.front().has_cover)
                throw ModelError("flower curve class missing for top '" + id + "'");
            curve_cls = e->curves.front().cover_class;
        }
        TPoly ti;
        tpoly_add_term(ti, c.N, c.cover_class * GrotElem::lefschetz(-c.nu));
        tpoly_add_term(ti, c.N + c.N / 2,
                       -c.cover_class * GrotElem::lefschetz(-c.nu - (c.nu - 1) / 2));
        tpoly_add_term(ti, 3 * c.N / 2,
                       (L - GrotElem(1)) * curve_cls *
                           GrotElem::lefschetz((-3 * c.nu + 1) / 2));
        // geometric factor aligning 1 - L^{-nu_i}T^{N_i} with 1 - L^{-nu}T^{N}
        TPoly geo;
        for (long long k = 0; k < N / c.N; ++k)
            tpoly_add_term(geo, k * c.N, GrotElem::lefschetz(-k * c.nu));
        ti = tpoly_mul(ti, geo);
        // the other tops' half-step factors
        for (auto& jd : tops) {
            if (jd == id) continue;
            const Component& cj = m.component(jd);
            TPoly fac;
            tpoly_add_term(fac, 0, GrotElem(1));
            tpoly_add_term(fac, cj.N / 2, -GrotElem::lefschetz(-(cj.nu - 1) / 2));
            ti = tpoly_mul(ti, fac);
        }
        theta = tpoly_add(theta, ti);
    }

    VTPoly pf = poincare_tpoly(theta, m.symbols);
    return vtpoly_substitute(pf, Rat(-2 * nu, N));
}

/// Multiplicity of (1 - v) in a nonzero Laurent polynomial.
inline long long one_minus_v_multiplicity(VLaurent p) {
    if (p.is_zero()) throw std::invalid_argument("zero has no finite multiplicity");
    VLaurent factor = VLaurent(1) - VLaurent::monomial(Rat(1), 1);
    long long mult = 0;
    while (true) {
        auto q = p.div_exact(factor);
        if (!q) return mult;
        p = *q;
        ++mult;
    }
}

}  // namespace k3zeta
