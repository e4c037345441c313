#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "k3zeta/flowers.hpp"
#include "k3zeta/grotring.hpp"
#include "k3zeta/rational.hpp"

namespace k3zeta {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& path, const std::string& what)
        : std::runtime_error(path + ": " + what), path_(path) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

class ModelError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Geometry {
    enum class Kind { P2, Ruled, KTrivial };
    Kind kind = Kind::P2;
    long long base_genus = 0;  // Ruled only
    long long blowups = 0;     // Ruled only: L, the blow-up count; 0 = minimal
    long long euler = 0;       // KTrivial only: chi of the full surface
};

/// chi of the closed surface: 3 for the plane, 2*(2-2g)+L for a ruled
/// surface over a genus-g base with L blow-ups, the declared value otherwise.
inline long long geometry_euler(const Geometry& g) {
    switch (g.kind) {
        case Geometry::Kind::P2: return 3;
        case Geometry::Kind::Ruled: return 2 * (2 - 2 * g.base_genus) + g.blowups;
        case Geometry::Kind::KTrivial: return g.euler;
    }
    return 0;
}

struct CurveData {
    long long genus = 0;
    std::optional<std::string> class_name;  // user-supplied cover class
    GrotElem cover_class;                   // set by assign_cover_classes
    bool has_cover = false;
};

struct Edge {
    std::string a, b;
    std::vector<CurveData> curves;
};

/// Derived during analysis, not parsed.
enum class Role { Unassigned, Flowerpot, ChainMember, FlowerMember };

struct Component {
    std::string id;
    long long N = 1;
    long long nu = 0;
    Geometry geometry;
    std::optional<long long> euler_open_override;
    std::optional<std::string> class_name;  // user-supplied cover class
    GrotElem cover_class;                   // set by assign_cover_classes
    bool has_cover = false;
    Role role = Role::Unassigned;
    int flower_index = -1;  // role == FlowerMember only
};

struct FlowerRef {
    std::string type;
    std::vector<std::string> members;  // top to last
    std::string attachment;
};

struct Violation {
    std::string code;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    std::vector<Violation> warnings;
    bool valid() const { return violations.empty(); }
};

struct Model {
    std::vector<Component> components;
    std::vector<Edge> edges;
    std::vector<FlowerRef> flowers;
    SymbolTable symbols;

    const Component& component(const std::string& id) const {
        for (auto& c : components)
            if (c.id == id) return c;
        throw ModelError("unknown component id '" + id + "'");
    }
    Component& component(const std::string& id) {
        for (auto& c : components)
            if (c.id == id) return c;
        throw ModelError("unknown component id '" + id + "'");
    }
    bool has_component(const std::string& id) const {
        for (auto& c : components)
            if (c.id == id) return true;
        return false;
    }
    std::vector<const Edge*> edges_at(const std::string& id) const {
        std::vector<const Edge*> out;
        for (auto& e : edges)
            if (e.a == id || e.b == id) out.push_back(&e);
        return out;
    }
    const Edge* edge_between(const std::string& x, const std::string& y) const {
        for (auto& e : edges)
            if ((e.a == x && e.b == y) || (e.a == y && e.b == x)) return &e;
        return nullptr;
    }
    Edge* edge_between(const std::string& x, const std::string& y) {
        for (auto& e : edges)
            if ((e.a == x && e.b == y) || (e.a == y && e.b == x)) return &e;
        return nullptr;
    }
};

// ---- parsing ----

namespace detail {

using nlohmann::json;

inline void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                                const std::string& path) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            throw ParseError(path, "unknown key '" + it.key() + "'");
}

inline long long require_int(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.contains(key)) throw ParseError(path, "missing key '" + key + "'");
    const json& v = obj.at(key);
    if (!v.is_number_integer()) throw ParseError(path + "." + key, "expected an integer");
    return v.get<long long>();
}

inline std::string require_string(const json& obj, const std::string& key,
                                  const std::string& path) {
    if (!obj.contains(key)) throw ParseError(path, "missing key '" + key + "'");
    const json& v = obj.at(key);
    if (!v.is_string()) throw ParseError(path + "." + key, "expected a string");
    return v.get<std::string>();
}

/// class entries: either a bare name or {name, euler?, poincare?} where
/// poincare is a list of [v-exponent, coefficient] pairs.
inline std::string parse_class(const json& v, SymbolTable& symbols, const std::string& path) {
    if (v.is_string()) {
        std::string name = v.get<std::string>();
        if (name.empty() || name[0] == '@')
            throw ParseError(path, "class names must be nonempty and must not start with '@'");
        if (!symbols.contains(name)) symbols.define({name, std::nullopt, std::nullopt});
        return name;
    }
    if (!v.is_object()) throw ParseError(path, "class must be a string or an object");
    reject_unknown_keys(v, {"name", "euler", "poincare"}, path);
    ClassSymbol sym;
    sym.name = require_string(v, "name", path);
    if (sym.name.empty() || sym.name[0] == '@')
        throw ParseError(path, "class names must be nonempty and must not start with '@'");
    if (v.contains("euler")) sym.euler = require_int(v, "euler", path);
    if (v.contains("poincare")) {
        const json& p = v.at("poincare");
        if (!p.is_array()) throw ParseError(path + ".poincare", "expected an array of pairs");
        VLaurent poly;
        for (auto& term : p) {
            if (!term.is_array() || term.size() != 2 || !term[0].is_number_integer() ||
                !term[1].is_number_integer())
                throw ParseError(path + ".poincare", "terms are [v-exponent, coefficient]");
            poly.add_term(Rat(term[0].get<long long>()), term[1].get<long long>());
        }
        sym.poincare = poly;
    }
    try {
        symbols.define(sym);
    } catch (const std::invalid_argument& e) {
        throw ParseError(path, e.what());
    }
    return sym.name;
}

inline Geometry parse_geometry(const json& v, const std::string& path) {
    if (!v.is_object()) throw ParseError(path, "geometry must be an object");
    std::string kind = require_string(v, "kind", path);
    Geometry g;
    if (kind == "p2") {
        reject_unknown_keys(v, {"kind"}, path);
        g.kind = Geometry::Kind::P2;
    } else if (kind == "ruled") {
        reject_unknown_keys(v, {"kind", "base_genus", "L"}, path);
        g.kind = Geometry::Kind::Ruled;
        g.base_genus = require_int(v, "base_genus", path);
        if (g.base_genus < 0) throw ParseError(path, "base_genus must be >= 0");
        g.blowups = v.contains("L") ? require_int(v, "L", path) : 0;
        if (g.blowups < 0) throw ParseError(path, "L must be >= 0");
    } else if (kind == "ktrivial") {
        reject_unknown_keys(v, {"kind", "euler"}, path);
        g.kind = Geometry::Kind::KTrivial;
        g.euler = require_int(v, "euler", path);
    } else {
        throw ParseError(path, "geometry kind must be p2, ruled or ktrivial");
    }
    return g;
}

}  // namespace detail

/// Parses the structured model document. Unknown fields are rejected at
/// every level; ids must be unique, multiplicities positive.
inline Model parse_model(const std::string& text) {
    using detail::json;
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("$", e.what());
    }
    if (!doc.is_object()) throw ParseError("$", "top level must be an object");
    detail::reject_unknown_keys(doc, {"components", "edges", "flowers"}, "$");
    if (!doc.contains("components") || !doc["components"].is_array())
        throw ParseError("$", "missing 'components' array");

    Model m;
    std::set<std::string> ids;
    int ci = 0;
    for (auto& cj : doc["components"]) {
        std::string path = "components[" + std::to_string(ci++) + "]";
        if (!cj.is_object()) throw ParseError(path, "expected an object");
        detail::reject_unknown_keys(
            cj, {"id", "N", "nu", "geometry", "euler_open_override", "class"}, path);
        Component c;
        c.id = detail::require_string(cj, "id", path);
        if (!ids.insert(c.id).second) throw ParseError(path, "duplicate component id '" + c.id + "'");
        c.N = detail::require_int(cj, "N", path);
        if (c.N < 1) throw ParseError(path, "multiplicity N must be >= 1");
        c.nu = detail::require_int(cj, "nu", path);
        if (!cj.contains("geometry")) throw ParseError(path, "missing 'geometry'");
        c.geometry = detail::parse_geometry(cj["geometry"], path + ".geometry");
        if (cj.contains("euler_open_override"))
            c.euler_open_override = detail::require_int(cj, "euler_open_override", path);
        if (cj.contains("class"))
            c.class_name = detail::parse_class(cj["class"], m.symbols, path + ".class");
        m.components.push_back(std::move(c));
    }
    if (m.components.empty()) throw ParseError("$", "model has no components");

    if (doc.contains("edges")) {
        if (!doc["edges"].is_array()) throw ParseError("$.edges", "expected an array");
        int ei = 0;
        for (auto& ej : doc["edges"]) {
            std::string path = "edges[" + std::to_string(ei++) + "]";
            if (!ej.is_object()) throw ParseError(path, "expected an object");
            detail::reject_unknown_keys(ej, {"a", "b", "curves"}, path);
            Edge e;
            e.a = detail::require_string(ej, "a", path);
            e.b = detail::require_string(ej, "b", path);
            if (!ids.count(e.a)) throw ParseError(path, "unknown component '" + e.a + "'");
            if (!ids.count(e.b)) throw ParseError(path, "unknown component '" + e.b + "'");
            if (e.a == e.b) throw ParseError(path, "self-intersections are not allowed");
            if (!ej.contains("curves") || !ej["curves"].is_array() || ej["curves"].empty())
                throw ParseError(path, "edge needs a nonempty 'curves' array");
            int ki = 0;
            for (auto& kj : ej["curves"]) {
                std::string cpath = path + ".curves[" + std::to_string(ki++) + "]";
                if (!kj.is_object()) throw ParseError(cpath, "expected an object");
                detail::reject_unknown_keys(kj, {"genus", "class"}, cpath);
                CurveData cd;
                cd.genus = detail::require_int(kj, "genus", cpath);
                if (cd.genus < 0) throw ParseError(cpath, "genus must be >= 0");
                if (kj.contains("class"))
                    cd.class_name = detail::parse_class(kj["class"], m.symbols, cpath + ".class");
                e.curves.push_back(std::move(cd));
            }
            m.edges.push_back(std::move(e));
        }
    }

    if (doc.contains("flowers")) {
        if (!doc["flowers"].is_array()) throw ParseError("$.flowers", "expected an array");
        int fi = 0;
        for (auto& fj : doc["flowers"]) {
            std::string path = "flowers[" + std::to_string(fi++) + "]";
            if (!fj.is_object()) throw ParseError(path, "expected an object");
            detail::reject_unknown_keys(fj, {"type", "members", "attachment"}, path);
            FlowerRef f;
            f.type = detail::require_string(fj, "type", path);
            if (!find_flower_type(f.type))
                throw ParseError(path, "unknown flower type '" + f.type + "'");
            if (!fj.contains("members") || !fj["members"].is_array() || fj["members"].empty())
                throw ParseError(path, "flower needs a nonempty 'members' array");
            for (auto& mj : fj["members"]) {
                if (!mj.is_string()) throw ParseError(path + ".members", "expected strings");
                f.members.push_back(mj.get<std::string>());
            }
            f.attachment = detail::require_string(fj, "attachment", path);
            for (auto& id : f.members)
                if (!ids.count(id)) throw ParseError(path, "unknown component '" + id + "'");
            if (!ids.count(f.attachment))
                throw ParseError(path, "unknown component '" + f.attachment + "'");
            m.flowers.push_back(std::move(f));
        }
    }
    return m;
}

// ---- derived quantities ----

/// The weight nu/N + 1 as an exact rational.
inline Rat weight(const Model& m, const std::string& id) {
    const Component& c = m.component(id);
    return Rat(c.nu, c.N) + Rat(1);
}

inline Rat min_weight(const Model& m) {
    Rat mw = weight(m, m.components.front().id);
    for (auto& c : m.components) {
        Rat w = weight(m, c.id);
        if (w < mw) mw = w;
    }
    return mw;
}

/// Ids of the components of minimal weight, in component order.
inline std::vector<std::string> minimal_locus(const Model& m) {
    Rat mw = min_weight(m);
    std::vector<std::string> out;
    for (auto& c : m.components)
        if (weight(m, c.id) == mw) out.push_back(c.id);
    return out;
}

enum class DegenerationKind { Flowerpot, Chain };

namespace detail {

enum class LocusShape { Vertex, Path, Cycle, Other };

inline LocusShape minimal_locus_shape(const Model& m) {
    std::vector<std::string> locus = minimal_locus(m);
    if (locus.size() == 1) return LocusShape::Vertex;
    std::set<std::string> in_locus(locus.begin(), locus.end());
    long long edge_count = 0;
    std::map<std::string, int> degree;
    for (auto& e : m.edges) {
        if (in_locus.count(e.a) && in_locus.count(e.b)) {
            ++edge_count;
            ++degree[e.a];
            ++degree[e.b];
        }
    }
    // connectivity of the induced subgraph
    std::set<std::string> seen;
    std::vector<std::string> stack{locus.front()};
    while (!stack.empty()) {
        std::string v = stack.back();
        stack.pop_back();
        if (!seen.insert(v).second) continue;
        for (auto& e : m.edges) {
            if (e.a == v && in_locus.count(e.b)) stack.push_back(e.b);
            if (e.b == v && in_locus.count(e.a)) stack.push_back(e.a);
        }
    }
    if (seen.size() != locus.size()) return LocusShape::Other;
    bool all_deg_le2 = true;
    int deg1 = 0;
    for (auto& id : locus) {
        int d = degree.count(id) ? degree[id] : 0;
        if (d > 2) all_deg_le2 = false;
        if (d == 1) ++deg1;
    }
    long long n = static_cast<long long>(locus.size());
    if (all_deg_le2 && edge_count == n - 1 && deg1 == 2) return LocusShape::Path;
    if (all_deg_le2 && edge_count == n && deg1 == 0) return LocusShape::Cycle;
    return LocusShape::Other;
}

}  // namespace detail

/// chi of the open part of a component: chi of the surface minus the chi of
/// every double curve on it, one per curve of every incident edge. An
/// explicit override wins.
inline long long euler_open(const Model& m, const std::string& id) {
    const Component& c = m.component(id);
    if (c.euler_open_override) return *c.euler_open_override;
    long long chi = geometry_euler(c.geometry);
    for (const Edge* e : m.edges_at(id))
        for (const CurveData& cd : e->curves) chi -= 2 - 2 * cd.genus;
    return chi;
}

/// Checks a flower annotation against the catalog: membership path, the
/// multiplicity pattern at an inferred scale, the nu recursions, strictly
/// decreasing weights, and curve genera. Appends violations.
namespace detail {

inline void validate_flower(const Model& m, const FlowerRef& f, size_t index,
                            std::vector<Violation>& out) {
    auto fail = [&](const std::string& code, const std::string& msg) {
        out.push_back({code, "flower #" + std::to_string(index) + " (" + f.type + "): " + msg});
    };
    const FlowerTypeInfo* info = find_flower_type(f.type);
    if (!info) {
        fail("flower-unknown-type", "not a catalog type");
        return;
    }
    if (f.type == "4D") fail("flower-type-excluded", "flower type excluded on these surfaces");

    // distinct members, attachment outside the flower
    std::set<std::string> seen;
    for (auto& id : f.members)
        if (!seen.insert(id).second) {
            fail("flower-structure", "member '" + id + "' repeated");
            return;
        }
    if (seen.count(f.attachment)) {
        fail("flower-structure", "attachment lies inside the flower");
        return;
    }

    // the members followed by the attachment must form a path in the graph
    std::vector<std::string> path = f.members;
    path.push_back(f.attachment);
    for (size_t j = 0; j + 1 < path.size(); ++j)
        if (!m.edge_between(path[j], path[j + 1])) {
            fail("flower-structure", "no intersection between '" + path[j] + "' and '" +
                                        path[j + 1] + "'");
            return;
        }
    // no stray intersections: the top meets only its successor, middles meet
    // exactly their neighbours
    for (size_t j = 0; j < f.members.size(); ++j) {
        auto inc = m.edges_at(f.members[j]);
        size_t expected = j == 0 ? 1 : 2;
        if (inc.size() != expected)
            fail("flower-structure", "member '" + f.members[j] + "' has " +
                                        std::to_string(inc.size()) +
                                        " intersections, expected " + std::to_string(expected));
    }

    // multiplicity pattern at the inferred scale
    const long long ell = static_cast<long long>(f.members.size()) - 1;
    long long first_mult = m.component(f.members.front()).N;
    long long scale_coeff = info->variable_length ? info->var_first : info->fixed_comp.front();
    if (first_mult % scale_coeff != 0) {
        fail("flower-table-mismatch", "top multiplicity " + std::to_string(first_mult) +
                                         " is not a multiple of " + std::to_string(scale_coeff));
        return;
    }
    long long N = first_mult / scale_coeff;
    FlowerComposition comp;
    try {
        comp = flower_compose(f.type, N,
                              info->variable_length ? std::optional<long long>(ell)
                                                    : std::nullopt);
    } catch (const std::invalid_argument& e) {
        fail("flower-table-mismatch", e.what());
        return;
    }
    if (comp.multiplicities.size() != f.members.size()) {
        fail("flower-table-mismatch", "length does not match the catalog row");
        return;
    }
    for (size_t j = 0; j < f.members.size(); ++j)
        if (m.component(f.members[j]).N != comp.multiplicities[j])
            fail("flower-table-mismatch",
                 "member '" + f.members[j] + "' has multiplicity " +
                     std::to_string(m.component(f.members[j]).N) + ", catalog row needs " +
                     std::to_string(comp.multiplicities[j]));
    if (m.component(f.attachment).N != comp.attach)
        fail("flower-table-mismatch", "attachment multiplicity " +
                                         std::to_string(m.component(f.attachment).N) +
                                         ", catalog row needs " + std::to_string(comp.attach));

    // nu recursions from the top, endpoint included
    FlowerSpec spec{f.type, N,
                    info->variable_length ? std::optional<long long>(ell) : std::nullopt,
                    m.component(f.members.front()).nu, 0};
    try {
        std::vector<long long> nus = flower_nus(spec);
        for (size_t j = 0; j < f.members.size(); ++j)
            if (m.component(f.members[j]).nu != nus[j])
                fail("flower-nu-recursion", "member '" + f.members[j] + "' has nu " +
                                               std::to_string(m.component(f.members[j]).nu) +
                                               ", recursion needs " + std::to_string(nus[j]));
        if (m.component(f.attachment).nu != nus.back())
            fail("flower-nu-recursion",
                 "attachment has nu " + std::to_string(m.component(f.attachment).nu) +
                     ", endpoint relation needs " + std::to_string(nus.back()));
    } catch (const std::invalid_argument& e) {
        fail("flower-nu-recursion", e.what());
    }

    // weights strictly decrease from the top to the attachment
    for (size_t j = 0; j + 1 < path.size(); ++j) {
        if (!(weight(m, path[j]) > weight(m, path[j + 1])))
            fail("flower-weights", "weights do not strictly decrease at '" + path[j + 1] + "'");
    }

    // curve genera: all flower curves share the flower's genus; any P^2 top
    // forces genus 0
    std::optional<long long> genus;
    bool genus_consistent = true;
    for (size_t j = 0; j + 1 < path.size(); ++j) {
        const Edge* e = m.edge_between(path[j], path[j + 1]);
        if (!e) continue;
        for (auto& cd : e->curves) {
            if (!genus) genus = cd.genus;
            else if (*genus != cd.genus) genus_consistent = false;
        }
        if (e->curves.size() != 1)
            fail("flower-structure", "flower intersections must be irreducible");
    }
    if (!genus_consistent) fail("flower-genus", "double curves have inconsistent genus");
    if (info->top != TopKind::MinimalRuled && genus && *genus != 0)
        fail("flower-genus", "a plane top forces genus 0");
}

}  // namespace detail

/**
 * Structural validation: connectivity, flower annotations against the
 * catalog (multiplicities, nu recursions, weights, genera, no type 4D),
 * the shape of the minimal-weight locus, and the degree-24 identity
 * sum_i N_i chi(E_i deg) = 24 (a warning by default so non-K3 test inputs can
 * be exercised; a violation in strict mode).
 */
inline ValidationReport validate(const Model& m, bool strict = false) {
    ValidationReport r;

    // connectivity of the dual graph
    std::set<std::string> seen;
    std::vector<std::string> stack{m.components.front().id};
    while (!stack.empty()) {
        std::string v = stack.back();
        stack.pop_back();
        if (!seen.insert(v).second) continue;
        for (auto& e : m.edges) {
            if (e.a == v) stack.push_back(e.b);
            if (e.b == v) stack.push_back(e.a);
        }
    }
    if (seen.size() != m.components.size())
        r.violations.push_back({"disconnected", "dual graph is not connected"});

    // flowers
    std::set<std::string> flower_ids;
    for (size_t i = 0; i < m.flowers.size(); ++i) {
        detail::validate_flower(m, m.flowers[i], i, r.violations);
        for (auto& id : m.flowers[i].members)
            if (!flower_ids.insert(id).second)
                r.violations.push_back(
                    {"flower-structure", "component '" + id + "' belongs to two flowers"});
    }
    // flower members cannot be of minimal weight; attachments must be
    std::vector<std::string> locus = minimal_locus(m);
    std::set<std::string> in_locus(locus.begin(), locus.end());
    for (auto& f : m.flowers) {
        for (auto& id : f.members)
            if (in_locus.count(id))
                r.violations.push_back(
                    {"flower-structure", "flower member '" + id + "' has minimal weight"});
        if (!in_locus.count(f.attachment))
            r.violations.push_back({"flower-structure", "flower attachment '" + f.attachment +
                                                            "' is not of minimal weight"});
    }

    // minimal locus shape
    switch (detail::minimal_locus_shape(m)) {
        case detail::LocusShape::Vertex:
        case detail::LocusShape::Path: break;
        case detail::LocusShape::Cycle:
            r.violations.push_back(
                {"minimal-locus-cycle",
                 "minimal-weight locus is a cycle, excluded on these surfaces"});
            break;
        case detail::LocusShape::Other:
            r.violations.push_back(
                {"minimal-locus-shape", "minimal-weight locus is neither a vertex nor a path"});
            break;
    }

    // degree-24 identity
    bool computable = true;
    long long total = 0;
    for (auto& c : m.components) {
        try {
            total += c.N * euler_open(m, c.id);
        } catch (...) {
            computable = false;
        }
    }
    if (computable && total != 24) {
        Violation v{"degree-24", "sum of N * chi(open part) is " + std::to_string(total) +
                                     ", expected 24"};
        if (strict) r.violations.push_back(v);
        else r.warnings.push_back(v);
    }
    return r;
}

/// Flowerpot when the minimal-weight locus is a single vertex, Chain when it
/// is a path; a cycle is rejected.
inline DegenerationKind classify(const Model& m) {
    switch (detail::minimal_locus_shape(m)) {
        case detail::LocusShape::Vertex: return DegenerationKind::Flowerpot;
        case detail::LocusShape::Path: return DegenerationKind::Chain;
        case detail::LocusShape::Cycle:
            throw ModelError("minimal-weight locus is a cycle, excluded on these surfaces");
        default:
            throw ModelError("minimal-weight locus is neither a vertex, a path nor a cycle");
    }
}

/**
 * Assigns the cover classes dictated by the flower structure: a fresh point
 * class [@Pk] for a plane top met in a line (top [@Pk]L^2, curves
 * [@Pk](L+1)), a fresh curve class for a ruled top (top [@Ck]L), and fresh
 * top/curve classes with the known Poincare data (N0/2)(v^2+1)v^2 and
 * (N0/2)(v^2+1) for a conic top. Middle components carry [curve](L-1).
 * Components and curves outside flowers keep their user-supplied symbols.
 */
inline Model assign_cover_classes(const Model& input) {
    Model m = input;
    const GrotElem L = GrotElem::lefschetz();
    const GrotElem one(1);

    // roles
    std::vector<std::string> locus = minimal_locus(m);
    std::set<std::string> in_locus(locus.begin(), locus.end());
    for (auto& c : m.components) {
        if (in_locus.count(c.id))
            c.role = locus.size() == 1 ? Role::Flowerpot : Role::ChainMember;
    }

    for (size_t k = 0; k < m.flowers.size(); ++k) {
        const FlowerRef& f = m.flowers[k];
        const FlowerTypeInfo& info = flower_type(f.type);
        const std::string tag = std::to_string(k);
        Component& top = m.component(f.members.front());
        long long N0 = top.N;

        GrotElem top_class, middle_class, curve_class;
        switch (info.top) {
            case TopKind::P2Line: {
                GrotElem p = GrotElem::symbol("@P" + tag);
                // a disjoint union of N0 points
                m.symbols.define({"@P" + tag, N0, VLaurent(N0)});
                top_class = p * L * L;
                curve_class = p * (L + one);
                middle_class = curve_class * (L - one);
                break;
            }
            case TopKind::MinimalRuled: {
                long long genus = 0;
                if (const Edge* e = m.edge_between(f.members.front(),
                                                   f.members.size() > 1 ? f.members[1]
                                                                        : f.attachment))
                    genus = e->curves.front().genus;
                GrotElem c = GrotElem::symbol("@C" + tag);
                // degree-N0 unramified cover of a genus-g curve; component
                // count is unknown beyond genus 0, so Poincare data only then
                if (genus == 0) {
                    VLaurent p1 = VLaurent::monomial(Rat(2), 1) + VLaurent(1);
                    m.symbols.define({"@C" + tag, 2 * N0, p1 * VLaurent(N0)});
                } else {
                    m.symbols.define({"@C" + tag, N0 * (2 - 2 * genus), std::nullopt});
                }
                top_class = c * L;
                curve_class = c;
                middle_class = c * (L - one);
                break;
            }
            case TopKind::P2Conic: {
                VLaurent p1 = VLaurent::monomial(Rat(2), 1) + VLaurent(1);  // v^2+1
                VLaurent v2 = VLaurent::monomial(Rat(2), 1);
                long long half = N0 / 2;
                m.symbols.define({"@F" + tag, half * 2, p1 * v2 * VLaurent(half)});
                m.symbols.define({"@C" + tag, half * 2, p1 * VLaurent(half)});
                top_class = GrotElem::symbol("@F" + tag);
                curve_class = GrotElem::symbol("@C" + tag);
                middle_class = curve_class * (L - one);
                break;
            }
        }

        for (size_t j = 0; j < f.members.size(); ++j) {
            Component& c = m.component(f.members[j]);
            c.cover_class = j == 0 ? top_class : middle_class;
            c.has_cover = true;
            c.role = Role::FlowerMember;
            c.flower_index = static_cast<int>(k);
        }
        std::vector<std::string> path = f.members;
        path.push_back(f.attachment);
        for (size_t j = 0; j + 1 < path.size(); ++j) {
            if (Edge* e = m.edge_between(path[j], path[j + 1])) {
                for (auto& cd : e->curves) {
                    cd.cover_class = curve_class;
                    cd.has_cover = true;
                }
            }
        }
    }

    // user-supplied symbols everywhere else
    for (auto& c : m.components) {
        if (!c.has_cover && c.class_name) {
            c.cover_class = GrotElem::symbol(*c.class_name);
            c.has_cover = true;
        }
    }
    for (auto& e : m.edges)
        for (auto& cd : e.curves)
            if (!cd.has_cover && cd.class_name) {
                cd.cover_class = GrotElem::symbol(*cd.class_name);
                cd.has_cover = true;
            }
    return m;
}

}  // namespace k3zeta
