#pragma once

#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <vector>

#include "k3zeta/motivic.hpp"
#include "k3zeta/sncmodel.hpp"

namespace k3zeta {

/// prod_N (T^N - 1)^{e_N} as a finite exponent map; zero exponents removed.
class CycloProduct {
public:
    CycloProduct() = default;

    void add(long long N, long long e) {
        if (N < 1) throw std::invalid_argument("CycloProduct: N must be >= 1");
        if (e == 0) return;
        auto it = exps_.find(N);
        if (it == exps_.end()) {
            exps_[N] = e;
        } else if ((it->second += e) == 0) {
            exps_.erase(it);
        }
    }

    const std::map<long long, long long>& exponents() const { return exps_; }
    bool empty() const { return exps_.empty(); }

    /// Total degree sum N * e_N.
    long long total_degree() const {
        long long d = 0;
        for (auto& [N, e] : exps_) d += N * e;
        return d;
    }

    bool operator==(const CycloProduct& o) const { return exps_ == o.exps_; }

    std::string str() const {
        if (exps_.empty()) return "1";
        std::ostringstream os;
        bool first = true;
        for (auto& [N, e] : exps_) {
            if (!first) os << " * ";
            first = false;
            os << "(T";
            if (N != 1) os << "^" << N;
            os << " - 1)";
            if (e != 1) os << "^" << e;
        }
        return os.str();
    }

private:
    std::map<long long, long long> exps_;
};

/// The monodromy zeta function of a model: exponent -chi(open part) on the
/// factor T^{N_i} - 1 for every component.
inline CycloProduct acampo(const Model& m) {
    CycloProduct z;
    for (const Component& c : m.components) z.add(c.N, -euler_open(m, c.id));
    return z;
}

/// Multiplicity of the d-th cyclotomic polynomial in the product: the sum of
/// e_N over the N divisible by d (negative means a pole at the primitive
/// d-th roots of unity).
inline long long cyclo_multiplicity(const CycloProduct& z, long long d) {
    if (d < 1) throw std::invalid_argument("cyclo_multiplicity: d must be >= 1");
    long long total = 0;
    for (auto& [N, e] : z.exponents())
        if (N % d == 0) total += e;
    return total;
}

/// Degree of the reciprocal polynomial: -sum N e_N. 24 for the surfaces this
/// toolkit targets.
inline long long degree_check(const CycloProduct& z) { return -z.total_degree(); }

/// All cyclotomic multiplicities, indexed by the divisors of the occurring N.
inline std::map<long long, long long> phi_multiplicities(const CycloProduct& z) {
    std::set<long long> divisors;
    for (auto& [N, e] : z.exponents())
        for (long long d = 1; d <= N; ++d)
            if (N % d == 0) divisors.insert(d);
    std::map<long long, long long> out;
    for (long long d : divisors) out[d] = cyclo_multiplicity(z, d);
    return out;
}

/// Rebuilds the exponent map from cyclotomic multiplicities (inverse of
/// phi_multiplicities by Moebius inversion over the divisor lattice).
inline CycloProduct from_phi_multiplicities(const std::map<long long, long long>& mult) {
    // e_N = sum_{N | d} mu(d/N) m_d
    auto moebius = [](long long n) {
        long long mu = 1;
        for (long long p = 2; p * p <= n; ++p) {
            if (n % p == 0) {
                n /= p;
                if (n % p == 0) return 0LL;
                mu = -mu;
            }
        }
        if (n > 1) mu = -mu;
        return mu;
    };
    CycloProduct z;
    for (auto& [N, unused] : mult) {
        long long e = 0;
        for (auto& [d, md] : mult)
            if (d % N == 0) e += moebius(d / N) * md;
        z.add(N, e);
    }
    return z;
}

/// A candidate eigenvalue: the multiplicative order of exp(-2 pi i nu/N).
struct EigenvalueCandidate {
    std::string component_id;
    long long order;
};

inline long long xi_order(long long N, long long nu) {
    long long r = ((nu % N) + N) % N;
    long long g = r == 0 ? N : std::gcd(N, r);
    return N / g;
}

inline EigenvalueCandidate eigenvalue_candidate(const Model& m, const std::string& id) {
    const Component& c = m.component(id);
    return {id, xi_order(c.N, c.nu)};
}

/**
 * Whether the candidate's root of unity is a monodromy eigenvalue. On these
 * surfaces the eigenvalues are exactly the poles of the monodromy zeta
 * function (odd cohomology vanishes, so no cancellation can occur), so the
 * test is a negative cyclotomic multiplicity at the candidate's order. In
 * strict mode inputs whose reciprocal degree is not 24 are refused rather
 * than silently mis-answered.
 */
inline bool is_eigenvalue(const Model& m, const EigenvalueCandidate& cand,
                          bool strict = true) {
    CycloProduct z = acampo(m);
    if (strict && degree_check(z) != 24)
        throw ModelError("monodromy zeta function has degree " +
                         std::to_string(degree_check(z)) + ", expected 24");
    return cyclo_multiplicity(z, cand.order) < 0;
}

enum class CandidateStatus { MinimalWeight, Eigenvalue, NotAnEigenvalue };

struct VerdictEntry {
    Rat ratio;
    long long order;
    long long multiplicity;  // cyclotomic multiplicity at that order
    CandidateStatus status;
    std::vector<std::string> witnesses;
};

struct Verdict {
    bool holds = false;
    std::vector<VerdictEntry> entries;
};

/**
 * The monodromy-property verdict: every pole of the zeta function must yield
 * an eigenvalue. Minimal-weight poles always do; conic-top poles are tested
 * through the cyclotomic multiplicity of their candidate order.
 */
inline Verdict check_property(const Model& m) {
    CycloProduct z = acampo(m);
    if (degree_check(z) != 24)
        throw ModelError("monodromy zeta function has degree " +
                         std::to_string(degree_check(z)) +
                         ", expected 24; the eigenvalue criterion only applies there");
    PoleReport poles = exact_poles(m);
    Verdict v;
    v.holds = true;
    for (const Pole& p : poles.poles) {
        VerdictEntry entry;
        entry.ratio = p.ratio;
        entry.witnesses = p.witnesses;
        const Component& c = m.component(p.witnesses.front());
        entry.order = xi_order(c.N, c.nu);
        entry.multiplicity = cyclo_multiplicity(z, entry.order);
        if (p.source == PoleSource::MinimalWeight) {
            entry.status = CandidateStatus::MinimalWeight;
        } else if (entry.multiplicity < 0) {
            entry.status = CandidateStatus::Eigenvalue;
        } else {
            entry.status = CandidateStatus::NotAnEigenvalue;
            v.holds = false;
        }
        v.entries.push_back(entry);
    }
    return v;
}

}  // namespace k3zeta
