#pragma once

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "k3zeta/grotring.hpp"

namespace k3zeta {

/// One denominator factor 1 - L^a T^b (sign-normalized), b >= 1.
struct DenFactor {
    long long a = 0;
    long long b = 1;
    bool operator==(const DenFactor& o) const { return a == o.a && b == o.b; }
    bool operator<(const DenFactor& o) const { return a != o.a ? a < o.a : b < o.b; }
    Rat ratio() const { return Rat(a, b); }
};

/// Multiset of denominator factors, factor -> multiplicity >= 1.
using DenMultiset = std::map<DenFactor, long long>;

/// Polynomial in T with coefficients in the Grothendieck coefficient ring.
using TPoly = std::map<long long, GrotElem>;

inline void tpoly_add_term(TPoly& p, long long deg, const GrotElem& c) {
    if (c.is_zero()) return;
    auto it = p.find(deg);
    if (it == p.end()) {
        p[deg] = c;
    } else {
        it->second += c;
        if (it->second.is_zero()) p.erase(it);
    }
}

inline TPoly tpoly_add(const TPoly& x, const TPoly& y) {
    TPoly r = x;
    for (auto& [d, c] : y) tpoly_add_term(r, d, c);
    return r;
}

inline TPoly tpoly_neg(const TPoly& x) {
    TPoly r;
    for (auto& [d, c] : x) r[d] = -c;
    return r;
}

inline TPoly tpoly_mul(const TPoly& x, const TPoly& y) {
    TPoly r;
    for (auto& [d1, c1] : x)
        for (auto& [d2, c2] : y) tpoly_add_term(r, d1 + d2, c1 * c2);
    return r;
}

/// 1 - L^a T^b as a TPoly.
inline TPoly den_factor_poly(const DenFactor& f) {
    TPoly p;
    p[0] = GrotElem(1);
    p[f.b] = -GrotElem::lefschetz(f.a);
    return p;
}

inline TPoly den_product_poly(const DenMultiset& den) {
    TPoly p;
    p[0] = GrotElem(1);
    for (auto& [f, m] : den) {
        TPoly fp = den_factor_poly(f);
        for (long long i = 0; i < m; ++i) p = tpoly_mul(p, fp);
    }
    return p;
}

/**
 * Exact division of a T-polynomial by 1 - L^a T^b. The divisor's top
 * T-coefficient -L^a is invertible in the Laurent coefficient ring, so plain
 * descending division applies; divisibility holds iff the remainder is zero.
 */
inline std::optional<TPoly> tpoly_div_factor(const TPoly& num, const DenFactor& f) {
    TPoly r = num;
    TPoly q;
    const GrotElem inv_top = -GrotElem::lefschetz(-f.a);  // 1/(-L^a)
    while (!r.empty()) {
        auto top = std::prev(r.end());
        if (top->first < f.b) return std::nullopt;
        long long qd = top->first - f.b;
        GrotElem qc = top->second * inv_top;
        tpoly_add_term(q, qd, qc);
        // subtract (qc T^qd) * (1 - L^a T^b)
        tpoly_add_term(r, qd, -qc);
        tpoly_add_term(r, qd + f.b, qc * GrotElem::lefschetz(f.a));
    }
    return q;
}

/**
 * Rational function in T over the coefficient ring with denominator a
 * multiset of factors 1 - L^a T^b. The factor set contains no zero divisors,
 * so equality is representation-independent cross-multiplication, and
 * canonicalization (cancelling factors that exactly divide the numerator)
 * never changes the equality class.
 */
class ZetaRat {
public:
    ZetaRat() = default;

    ZetaRat(TPoly num, DenMultiset den) : num_(std::move(num)), den_(std::move(den)) {
        for (auto& [f, m] : den_) {
            if (f.b < 1) throw std::invalid_argument("ZetaRat: factor needs b >= 1");
            if (m < 1) throw std::invalid_argument("ZetaRat: nonpositive multiplicity");
        }
        canonicalize();
    }

    static ZetaRat zero() { return ZetaRat(); }

    static ZetaRat constant(const GrotElem& c) {
        TPoly p;
        tpoly_add_term(p, 0, c);
        return ZetaRat(std::move(p), {});
    }

    /// Entry point for factors written as L^a T^b - 1: the sign moves to the
    /// numerator, the stored factor is 1 - L^a T^b.
    static ZetaRat over_factor_reversed(const TPoly& num, long long a, long long b) {
        return ZetaRat(tpoly_neg(num), {{DenFactor{a, b}, 1}});
    }

    const TPoly& num() const { return num_; }
    const DenMultiset& den() const { return den_; }
    bool is_zero() const { return num_.empty(); }

private:
    TPoly num_;
    DenMultiset den_;

    void canonicalize() {
        if (num_.empty()) {
            den_.clear();
            return;
        }
        bool progress = true;
        while (progress) {
            progress = false;
            for (auto it = den_.begin(); it != den_.end();) {
                auto q = tpoly_div_factor(num_, it->first);
                if (q) {
                    num_ = std::move(*q);
                    progress = true;
                    if (--it->second == 0)
                        it = den_.erase(it);
                    else
                        ++it;
                } else {
                    ++it;
                }
            }
        }
    }
};

/// cls * L^a T^b / (1 - L^a T^b).
inline ZetaRat zeta_term(const GrotElem& cls, long long a, long long b) {
    if (b < 1) throw std::invalid_argument("zeta_term: b must be >= 1");
    if (cls.is_zero()) return ZetaRat::zero();
    TPoly num;
    tpoly_add_term(num, b, cls * GrotElem::lefschetz(a));
    return ZetaRat(std::move(num), {{DenFactor{a, b}, 1}});
}

namespace detail {
/// Factors of target not covered by base (multiset difference).
inline DenMultiset den_diff(const DenMultiset& target, const DenMultiset& base) {
    DenMultiset r;
    for (auto& [f, m] : target) {
        auto it = base.find(f);
        long long have = it == base.end() ? 0 : it->second;
        if (m > have) r[f] = m - have;
    }
    return r;
}

inline DenMultiset den_union_max(const DenMultiset& x, const DenMultiset& y) {
    DenMultiset r = x;
    for (auto& [f, m] : y) {
        auto it = r.find(f);
        if (it == r.end() || it->second < m) r[f] = m;
    }
    return r;
}

inline DenMultiset den_sum(const DenMultiset& x, const DenMultiset& y) {
    DenMultiset r = x;
    for (auto& [f, m] : y) r[f] += m;
    return r;
}
}  // namespace detail

inline ZetaRat zeta_add(const ZetaRat& x, const ZetaRat& y) {
    DenMultiset common = detail::den_union_max(x.den(), y.den());
    TPoly nx = tpoly_mul(x.num(), den_product_poly(detail::den_diff(common, x.den())));
    TPoly ny = tpoly_mul(y.num(), den_product_poly(detail::den_diff(common, y.den())));
    return ZetaRat(tpoly_add(nx, ny), common);
}

inline ZetaRat zeta_neg(const ZetaRat& x) { return ZetaRat(tpoly_neg(x.num()), x.den()); }

inline ZetaRat zeta_sub(const ZetaRat& x, const ZetaRat& y) {
    return zeta_add(x, zeta_neg(y));
}

inline ZetaRat zeta_mul(const ZetaRat& x, const ZetaRat& y) {
    return ZetaRat(tpoly_mul(x.num(), y.num()), detail::den_sum(x.den(), y.den()));
}

/// Representation-independent equality: cross-multiplied numerators agree.
inline bool zeta_equals(const ZetaRat& x, const ZetaRat& y) {
    TPoly lhs = tpoly_mul(x.num(), den_product_poly(y.den()));
    TPoly rhs = tpoly_mul(y.num(), den_product_poly(x.den()));
    return lhs == rhs;
}

/// Upper bound on the pole order of z at the rational number q: the total
/// multiplicity of denominator factors with a/b = q after maximal
/// cancellation. The exact order needs structural input; this is what the
/// representation alone can say.
inline long long pole_order_bound(const ZetaRat& z, const Rat& q) {
    long long total = 0;
    for (auto& [f, m] : z.den())
        if (f.ratio() == q) total += m;
    return total;
}

/// The polynomial F with z = F / prod(dens). Every factor of z's denominator
/// must occur in dens with at least its multiplicity.
inline TPoly numerator_over(const ZetaRat& z, const DenMultiset& dens) {
    for (auto& [f, m] : z.den()) {
        auto it = dens.find(f);
        if (it == dens.end() || it->second < m)
            throw std::invalid_argument("numerator_over: denominator factor (" +
                                        std::to_string(f.a) + "," + std::to_string(f.b) +
                                        ")^" + std::to_string(m) + " not covered");
    }
    return tpoly_mul(z.num(), den_product_poly(detail::den_diff(dens, z.den())));
}

// ---- rendering ----

inline std::string tpoly_str(const TPoly& p) {
    if (p.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [d, c] : p) {
        if (!first) os << " + ";
        first = false;
        bool multi = c.terms().size() > 1;
        if (multi) os << "(";
        os << c.str();
        if (multi) os << ")";
        if (d != 0) {
            os << "*T";
            if (d != 1) os << "^" << d;
        }
    }
    return os.str();
}

/// Deterministic plain-text rendering: numerator in ascending T-degree,
/// denominator factors in (a,b) order.
inline std::string to_plain(const ZetaRat& z) {
    if (z.is_zero()) return "0";
    std::ostringstream os;
    os << "(" << tpoly_str(z.num()) << ")";
    if (!z.den().empty()) {
        os << " / (";
        bool first = true;
        for (auto& [f, m] : z.den()) {
            if (!first) os << " * ";
            first = false;
            os << "(1 - ";
            if (f.a != 0) os << "L^" << f.a << "*";
            os << "T";
            if (f.b != 1) os << "^" << f.b;
            os << ")";
            if (m != 1) os << "^" << m;
        }
        os << ")";
    }
    return os.str();
}

inline std::string grot_latex(const GrotElem& x) {
    if (x.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = x.terms().rbegin(); it != x.terms().rend(); ++it) {
        long long c = it->second;
        if (!first) os << (c >= 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        first = false;
        long long a = c < 0 ? -c : c;
        const GrotMonomial& m = it->first;
        bool unit = m.l_exp == 0 && m.classes.empty();
        if (a != 1 || unit) os << a;
        for (auto& [n, e] : m.classes) {
            os << "[" << n << "]";
            if (e != 1) os << "^{" << e << "}";
        }
        if (m.l_exp != 0) {
            os << "\\mathbb{L}";
            if (m.l_exp != 1) os << "^{" << m.l_exp << "}";
        }
    }
    return os.str();
}

inline std::string to_latex(const ZetaRat& z) {
    if (z.is_zero()) return "0";
    std::ostringstream num;
    bool first = true;
    for (auto& [d, c] : z.num()) {
        if (!first) num << " + ";
        first = false;
        bool multi = c.terms().size() > 1;
        if (multi) num << "\\left(";
        num << grot_latex(c);
        if (multi) num << "\\right)";
        if (d != 0) {
            num << "T";
            if (d != 1) num << "^{" << d << "}";
        }
    }
    if (z.den().empty()) return num.str();
    std::ostringstream den;
    for (auto& [f, m] : z.den()) {
        den << "\\left(1 - ";
        if (f.a != 0) den << "\\mathbb{L}^{" << f.a << "}";
        den << "T";
        if (f.b != 1) den << "^{" << f.b << "}";
        den << "\\right)";
        if (m != 1) den << "^{" << m << "}";
    }
    return "\\frac{" + num.str() + "}{" + den.str() + "}";
}

}  // namespace k3zeta
