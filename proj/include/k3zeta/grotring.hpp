#pragma once

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "k3zeta/rational.hpp"

namespace k3zeta {

class MissingDataError : public std::runtime_error {
public:
    MissingDataError(const std::string& what, const std::string& symbol)
        : std::runtime_error(what), symbol_(symbol) {}
    const std::string& symbol() const { return symbol_; }

private:
    std::string symbol_;
};

/// Laurent polynomial in the symbol v with integer coefficients and rational
/// exponents (exponents arise with bounded denominator from substituting
/// T = v^{-2a/b}; inputs from class data are plain integers).
class VLaurent {
public:
    VLaurent() = default;
    explicit VLaurent(long long c) {
        if (c != 0) coeffs_[Rat(0)] = c;
    }

    static VLaurent monomial(const Rat& exp, long long c) {
        VLaurent r;
        if (c != 0) r.coeffs_[exp] = c;
        return r;
    }

    const std::map<Rat, long long>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    void add_term(const Rat& exp, long long c) {
        if (c == 0) return;
        auto it = coeffs_.find(exp);
        if (it == coeffs_.end()) {
            coeffs_[exp] = c;
        } else if ((it->second += c) == 0) {
            coeffs_.erase(it);
        }
    }

    VLaurent operator+(const VLaurent& o) const {
        VLaurent r = *this;
        for (auto& [e, c] : o.coeffs_) r.add_term(e, c);
        return r;
    }
    VLaurent operator-() const {
        VLaurent r;
        for (auto& [e, c] : coeffs_) r.coeffs_[e] = -c;
        return r;
    }
    VLaurent operator-(const VLaurent& o) const { return *this + (-o); }
    VLaurent operator*(const VLaurent& o) const {
        VLaurent r;
        for (auto& [e1, c1] : coeffs_)
            for (auto& [e2, c2] : o.coeffs_) r.add_term(e1 + e2, c1 * c2);
        return r;
    }
    bool operator==(const VLaurent& o) const { return coeffs_ == o.coeffs_; }
    bool operator!=(const VLaurent& o) const { return !(*this == o); }

    VLaurent pow(long long k) const {
        if (k < 0) throw std::domain_error("VLaurent::pow: negative exponent");
        VLaurent r(1);
        for (long long i = 0; i < k; ++i) r = r * *this;
        return r;
    }

    /// Evaluate at v = 1 (sum of coefficients).
    long long at_one() const {
        long long s = 0;
        for (auto& [e, c] : coeffs_) s += c;
        return s;
    }

    /// Multiply by v^k.
    VLaurent shifted(const Rat& k) const {
        VLaurent r;
        for (auto& [e, c] : coeffs_) r.coeffs_[e + k] = c;
        return r;
    }

    /// Exact division by another Laurent polynomial; nullopt when not exact.
    /// Both operands are shifted to nonnegative exponent support first, so
    /// the division loop terminates (leading exponent strictly decreases
    /// within a discrete set bounded below).
    std::optional<VLaurent> div_exact(const VLaurent& d) const {
        if (d.is_zero()) throw std::domain_error("VLaurent: division by zero");
        if (is_zero()) return VLaurent();
        Rat sx = coeffs_.begin()->first;
        Rat sd = d.coeffs_.begin()->first;
        VLaurent r = shifted(-sx);
        VLaurent dd = d.shifted(-sd);
        VLaurent q;
        const auto dl = std::prev(dd.coeffs_.end());
        while (!r.is_zero()) {
            const auto rl = std::prev(r.coeffs_.end());
            if (rl->second % dl->second != 0) return std::nullopt;
            Rat e = rl->first - dl->first;
            if (e < Rat(0)) return std::nullopt;
            long long c = rl->second / dl->second;
            q.add_term(e, c);
            r = r - VLaurent::monomial(e, c) * dd;
        }
        return q.shifted(sx - sd);
    }

    std::string str() const {
        if (coeffs_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
            long long c = it->second;
            if (!first) os << (c >= 0 ? " + " : " - ");
            else if (c < 0) os << "-";
            first = false;
            long long a = c < 0 ? -c : c;
            const Rat& e = it->first;
            if (e.is_zero()) {
                os << a;
            } else {
                if (a != 1) os << a << "*";
                os << "v";
                if (!(e == Rat(1))) os << "^" << e.str();
            }
        }
        return os.str();
    }

private:
    std::map<Rat, long long> coeffs_;  // exponent -> nonzero coefficient
};

/// An opaque Grothendieck-ring class with optional specialization data.
/// When both are present, poincare evaluated at v = 1 must equal euler.
struct ClassSymbol {
    std::string name;
    std::optional<long long> euler;
    std::optional<VLaurent> poincare;
};

/// Registry of class symbols for one computation context. Names are unique;
/// redefining a name with different data is an error.
class SymbolTable {
public:
    const ClassSymbol& define(const ClassSymbol& sym) {
        if (sym.euler && sym.poincare && sym.poincare->at_one() != *sym.euler)
            throw std::invalid_argument("class '" + sym.name +
                                        "': poincare at v=1 disagrees with euler");
        auto [it, inserted] = table_.emplace(sym.name, sym);
        if (!inserted) {
            const ClassSymbol& old = it->second;
            bool same = old.euler == sym.euler &&
                        ((!old.poincare && !sym.poincare) ||
                         (old.poincare && sym.poincare && *old.poincare == *sym.poincare));
            if (!same)
                throw std::invalid_argument("class '" + sym.name +
                                            "' redefined with different data");
        }
        return it->second;
    }

    bool contains(const std::string& name) const { return table_.count(name) != 0; }

    const ClassSymbol* find(const std::string& name) const {
        auto it = table_.find(name);
        return it == table_.end() ? nullptr : &it->second;
    }

    long long euler_of(const std::string& name) const {
        const ClassSymbol* s = find(name);
        if (!s || !s->euler)
            throw MissingDataError("no Euler data for class '" + name + "'", name);
        return *s->euler;
    }

    const VLaurent& poincare_of(const std::string& name) const {
        const ClassSymbol* s = find(name);
        if (!s || !s->poincare)
            throw MissingDataError("no Poincare data for class '" + name + "'", name);
        return *s->poincare;
    }

private:
    std::map<std::string, ClassSymbol> table_;
};

/// Monomial L^k * prod_c c^{e_c}: Laurent exponent on L, positive integer
/// exponents on class symbols. Ordered by exponent-lexicographic comparison
/// over class names with the L-exponent last; this is a genuine monomial
/// order (compatible with multiplication), which exact division relies on.
struct GrotMonomial {
    long long l_exp = 0;
    std::map<std::string, long long> classes;

    bool operator==(const GrotMonomial& o) const {
        return l_exp == o.l_exp && classes == o.classes;
    }

    bool operator<(const GrotMonomial& o) const {
        auto a = classes.begin(), b = o.classes.begin();
        while (a != classes.end() || b != o.classes.end()) {
            if (a == classes.end()) return true;   // exponent 0 here, >0 there
            if (b == o.classes.end()) return false;
            if (a->first != b->first) {
                // The earlier name has exponent 0 on the other side.
                return a->first > b->first ? true : false;
            }
            if (a->second != b->second) return a->second < b->second;
            ++a;
            ++b;
        }
        return l_exp < o.l_exp;
    }

    GrotMonomial operator*(const GrotMonomial& o) const {
        GrotMonomial r = *this;
        r.l_exp += o.l_exp;
        for (auto& [n, e] : o.classes) r.classes[n] += e;
        return r;
    }

    /// Componentwise quotient; nullopt if any class exponent would go negative.
    std::optional<GrotMonomial> div(const GrotMonomial& o) const {
        GrotMonomial r;
        r.l_exp = l_exp - o.l_exp;
        r.classes = classes;
        for (auto& [n, e] : o.classes) {
            auto it = r.classes.find(n);
            if (it == r.classes.end() || it->second < e) return std::nullopt;
            if ((it->second -= e) == 0) r.classes.erase(it);
        }
        return r;
    }
};

/// Element of the coefficient ring: integer polynomial in the Lefschetz
/// symbol L (Laurent) and opaque class symbols. A free polynomial ring over
/// the integers, hence an integral domain: exact division either succeeds
/// uniquely or fails.
class GrotElem {
public:
    GrotElem() = default;
    GrotElem(long long c) {
        if (c != 0) terms_[GrotMonomial{}] = c;
    }

    /// L^k.
    static GrotElem lefschetz(long long k = 1) {
        GrotElem r;
        r.terms_[GrotMonomial{k, {}}] = 1;
        return r;
    }

    static GrotElem symbol(const std::string& name) {
        GrotElem r;
        GrotMonomial m;
        m.classes[name] = 1;
        r.terms_[m] = 1;
        return r;
    }

    static GrotElem monomial(const GrotMonomial& m, long long c) {
        GrotElem r;
        if (c != 0) r.terms_[m] = c;
        return r;
    }

    const std::map<GrotMonomial, long long>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool operator==(const GrotElem& o) const { return terms_ == o.terms_; }
    bool operator!=(const GrotElem& o) const { return !(*this == o); }

    GrotElem operator-() const {
        GrotElem r;
        for (auto& [m, c] : terms_) r.terms_[m] = -c;
        return r;
    }
    GrotElem operator+(const GrotElem& o) const {
        GrotElem r = *this;
        for (auto& [m, c] : o.terms_) r.add_term(m, c);
        return r;
    }
    GrotElem operator-(const GrotElem& o) const { return *this + (-o); }
    GrotElem operator*(const GrotElem& o) const {
        GrotElem r;
        for (auto& [m1, c1] : terms_)
            for (auto& [m2, c2] : o.terms_) r.add_term(m1 * m2, c1 * c2);
        return r;
    }
    GrotElem& operator+=(const GrotElem& o) { return *this = *this + o; }
    GrotElem& operator-=(const GrotElem& o) { return *this = *this - o; }
    GrotElem& operator*=(const GrotElem& o) { return *this = *this * o; }

    void add_term(const GrotMonomial& m, long long c) {
        if (c == 0) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_[m] = c;
        } else if ((it->second += c) == 0) {
            terms_.erase(it);
        }
    }

    GrotElem pow(long long k) const {
        if (k < 0) throw std::domain_error("GrotElem::pow: negative exponent");
        GrotElem r(1);
        for (long long i = 0; i < k; ++i) r = r * *this;
        return r;
    }

    std::set<std::string> class_names() const {
        std::set<std::string> names;
        for (auto& [m, c] : terms_)
            for (auto& [n, e] : m.classes) names.insert(n);
        return names;
    }

    long long min_l_exp() const {
        long long m = 0;
        bool first = true;
        for (auto& [mono, c] : terms_) {
            if (first || mono.l_exp < m) m = mono.l_exp;
            first = false;
        }
        return m;
    }

    /// Multiply by L^k.
    GrotElem shifted(long long k) const {
        GrotElem r;
        for (auto& [m, c] : terms_) {
            GrotMonomial mm = m;
            mm.l_exp += k;
            r.terms_[mm] = c;
        }
        return r;
    }

    std::string str() const;

private:
    std::map<GrotMonomial, long long> terms_;
};

inline GrotElem operator*(long long c, const GrotElem& x) { return GrotElem(c) * x; }

/**
 * Exact division in the free ring: returns q with q*y = x, or nullopt when y
 * does not divide x. Throws on y = 0.
 *
 * Laurent L-exponents are first shifted to be nonnegative on both operands;
 * the quotient absorbs the difference of shifts. Division then runs against
 * the leading term under the monomial order, which is exact for an integral
 * domain over the integers: every intermediate leading coefficient of an
 * exact quotient is divisible, so any failed step certifies non-divisibility.
 */
inline std::optional<GrotElem> grot_div_exact(const GrotElem& x, const GrotElem& y) {
    if (y.is_zero()) throw std::domain_error("grot_div_exact: division by zero");
    if (x.is_zero()) return GrotElem();
    long long sx = -x.min_l_exp(), sy = -y.min_l_exp();
    GrotElem r = x.shifted(sx);
    GrotElem d = y.shifted(sy);
    GrotElem q;
    const auto& dterms = d.terms();
    auto dl = std::prev(dterms.end());
    while (!r.is_zero()) {
        auto rl = std::prev(r.terms().end());
        if (rl->second % dl->second != 0) return std::nullopt;
        auto m = rl->first.div(dl->first);
        if (!m || m->l_exp < 0) return std::nullopt;
        GrotElem t = GrotElem::monomial(*m, rl->second / dl->second);
        q += t;
        r -= t * d;
    }
    return q.shifted(sy - sx);
}

/// Ring morphism with L -> 1 and each class symbol -> its Euler number.
inline long long euler_specialize(const GrotElem& x, const SymbolTable& symbols) {
    long long total = 0;
    for (auto& [m, c] : x.terms()) {
        long long v = c;  // chi(L) = 1, so the L-exponent contributes nothing
        for (auto& [name, e] : m.classes) {
            long long base = symbols.euler_of(name);
            for (long long i = 0; i < e; ++i) v *= base;
        }
        total += v;
    }
    return total;
}

/// Ring morphism with L -> v^2 and each class symbol -> its Poincare polynomial.
inline VLaurent poincare_specialize(const GrotElem& x, const SymbolTable& symbols) {
    VLaurent total;
    for (auto& [m, c] : x.terms()) {
        VLaurent v = VLaurent::monomial(Rat(2 * m.l_exp), c);
        for (auto& [name, e] : m.classes) v = v * symbols.poincare_of(name).pow(e);
        total = total + v;
    }
    return total;
}

inline std::string GrotElem::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        long long c = it->second;
        if (!first) os << (c >= 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        first = false;
        long long a = c < 0 ? -c : c;
        const GrotMonomial& m = it->first;
        bool unit_mono = m.l_exp == 0 && m.classes.empty();
        bool printed = false;
        if (a != 1 || unit_mono) {
            os << a;
            printed = true;
        }
        for (auto& [n, e] : m.classes) {
            if (printed) os << "*";
            os << "[" << n << "]";
            if (e != 1) os << "^" << e;
            printed = true;
        }
        if (m.l_exp != 0) {
            if (printed) os << "*";
            os << "L";
            if (m.l_exp != 1) os << "^" << m.l_exp;
        }
    }
    return os.str();
}

}  // namespace k3zeta
