// Command-line front end: validates model files, prints zeta functions and
// pole reports, checks the monodromy property, verifies the flower
// contribution tables, and enumerates the combinatorial countercandidates.
//
// Exit codes: 0 success (and the property holds for `check`), 1 validation
// violations or an invalid model, 2 the property fails, 3 parse failure.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "k3zeta/countercand.hpp"
#include "k3zeta/monodromy.hpp"
#include "k3zeta/motivic.hpp"

using namespace k3zeta;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitFails = 2;
constexpr int kExitParse = 3;

/// Reads a model file: the path as given, else relative to
/// K3ZETA_FIXTURE_DIR when that is set.
std::string read_model_text(const std::string& path) {
    namespace fs = std::filesystem;
    fs::path p = path;
    if (!fs::exists(p)) {
        if (const char* dir = std::getenv("K3ZETA_FIXTURE_DIR")) {
            fs::path alt = fs::path(dir) / path;
            if (fs::exists(alt)) p = alt;
        }
    }
    std::ifstream in(p);
    if (!in.good()) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct LoadedModel {
    Model model;
    ValidationReport report;
};

int load_and_validate(const std::string& path, bool strict, LoadedModel& out,
                      bool print_problems = true) {
    std::string text;
    try {
        text = read_model_text(path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }
    try {
        out.model = parse_model(text);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    }
    out.report = validate(out.model, strict);
    if (print_problems) {
        for (auto& v : out.report.violations)
            std::cout << "violation [" << v.code << "] " << v.message << "\n";
        for (auto& w : out.report.warnings)
            std::cout << "warning [" << w.code << "] " << w.message << "\n";
    }
    return out.report.valid() ? kExitOk : kExitInvalid;
}

json zeta_to_json(const ZetaRat& z) {
    json num = json::array();
    for (auto& [d, c] : z.num()) {
        json terms = json::array();
        for (auto& [m, coef] : c.terms()) {
            json cls = json::object();
            for (auto& [name, e] : m.classes) cls[name] = e;
            terms.push_back({{"l", m.l_exp}, {"classes", cls}, {"coeff", coef}});
        }
        num.push_back({{"t", d}, {"value", terms}});
    }
    json den = json::array();
    for (auto& [f, mult] : z.den())
        den.push_back({{"a", f.a}, {"b", f.b}, {"multiplicity", mult}});
    return {{"numerator", num}, {"denominator", den}};
}

int cmd_validate(const std::string& path, bool strict) {
    LoadedModel lm;
    int rc = load_and_validate(path, strict, lm);
    if (rc == kExitOk) std::cout << "valid\n";
    return rc;
}

int cmd_zeta(const std::string& path, const std::string& format, bool strict) {
    LoadedModel lm;
    int rc = load_and_validate(path, strict, lm);
    if (rc != kExitOk) return rc;
    try {
        Model m = assign_cover_classes(lm.model);
        ZetaRat z = assemble(m);
        if (format == "latex") std::cout << to_latex(z) << "\n";
        else if (format == "json") std::cout << zeta_to_json(z).dump(2) << "\n";
        else std::cout << to_plain(z) << "\n";
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    return kExitOk;
}

int cmd_poles(const std::string& path, const std::string& format, bool strict, bool oracle) {
    LoadedModel lm;
    int rc = load_and_validate(path, strict, lm);
    if (rc != kExitOk) return rc;
    Model m = assign_cover_classes(lm.model);
    PoleReport r = exact_poles(m);

    std::vector<OracleEntry> oracle_entries;
    if (oracle) {
        try {
            oracle_entries = oracle_report(m);
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kExitInvalid;
        }
    }
    auto oracle_cell = [&](const Rat& ratio) -> std::string {
        for (auto& e : oracle_entries) {
            if (e.candidate.ratio() != ratio) continue;
            switch (e.status) {
                case OracleStatus::PoleCertified: return "certified";
                case OracleStatus::NoCertificate: return "no-certificate";
                case OracleStatus::Untestable: return "untestable(" + e.missing + ")";
            }
        }
        return "-";
    };

    if (format == "json") {
        json out;
        out["lct"] = r.lct.str();
        out["delta"] = r.delta;
        out["candidates"] = json::array();
        for (auto& c : r.candidates)
            out["candidates"].push_back({{"a", c.a}, {"b", c.b}, {"ratio", c.ratio().str()}});
        out["poles"] = json::array();
        for (auto& p : r.poles) {
            json pj = {{"ratio", p.ratio.str()},
                       {"order", p.order},
                       {"source", p.source == PoleSource::MinimalWeight ? "minimal-weight"
                                                                        : "conic-top"},
                       {"witnesses", p.witnesses}};
            if (oracle) pj["oracle"] = oracle_cell(p.ratio);
            out["poles"].push_back(pj);
        }
        if (oracle) {
            out["oracle"] = json::array();
            for (auto& e : oracle_entries)
                out["oracle"].push_back({{"a", e.candidate.a},
                                         {"b", e.candidate.b},
                                         {"status", oracle_cell(e.candidate.ratio())}});
        }
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "lct = " << r.lct.str() << ", delta = " << r.delta << "\n";
        std::cout << "candidates:";
        for (auto& c : r.candidates) std::cout << " " << c.ratio().str();
        std::cout << "\npoles:\n";
        for (auto& p : r.poles) {
            std::cout << "  " << p.ratio.str() << " (order " << p.order << ", "
                      << (p.source == PoleSource::MinimalWeight ? "minimal weight"
                                                                : "conic-flower top")
                      << ")";
            if (oracle) std::cout << " [oracle: " << oracle_cell(p.ratio) << "]";
            std::cout << "\n";
        }
        if (oracle) {
            std::cout << "oracle per candidate:\n";
            for (auto& e : oracle_entries)
                std::cout << "  " << e.candidate.ratio().str() << " -> "
                          << oracle_cell(e.candidate.ratio()) << "\n";
        }
    }
    return kExitOk;
}

int cmd_mzeta(const std::string& path, const std::string& format, bool strict) {
    LoadedModel lm;
    int rc = load_and_validate(path, strict, lm);
    if (rc != kExitOk) return rc;
    try {
        CycloProduct z = acampo(lm.model);
        if (format == "json") {
            json exps = json::array();
            for (auto& [N, e] : z.exponents()) exps.push_back({{"N", N}, {"exponent", e}});
            json out = {{"factors", exps}, {"reciprocal_degree", degree_check(z)}};
            std::cout << out.dump(2) << "\n";
        } else {
            std::cout << z.str() << "\n";
            std::cout << "reciprocal degree: " << degree_check(z) << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    return kExitOk;
}

int cmd_check(const std::string& path, bool strict) {
    LoadedModel lm;
    int rc = load_and_validate(path, strict, lm);
    if (rc != kExitOk) return rc;
    Verdict v;
    try {
        v = check_property(lm.model);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    for (auto& e : v.entries) {
        std::cout << "pole " << e.ratio.str() << ": eigenvalue order " << e.order
                  << ", cyclotomic multiplicity " << e.multiplicity << " -> ";
        switch (e.status) {
            case CandidateStatus::MinimalWeight:
                std::cout << "eigenvalue (minimal weight)\n";
                break;
            case CandidateStatus::Eigenvalue: std::cout << "eigenvalue\n"; break;
            case CandidateStatus::NotAnEigenvalue:
                std::cout << "NOT an eigenvalue (witnesses:";
                for (auto& w : e.witnesses) std::cout << " " << w;
                std::cout << ")\n";
                break;
        }
    }
    std::cout << (v.holds ? "monodromy property: holds\n"
                          : "monodromy property: FAILS\n");
    return v.holds ? kExitOk : kExitFails;
}

int cmd_flowers_verify(const std::string& type, long long max_N, long long nu_values,
                       long long max_len) {
    VerifyGrid grid{max_N, nu_values, max_len};
    std::vector<std::string> types =
        type.empty() ? verifiable_types() : std::vector<std::string>{type};
    bool all_ok = true;
    long long rows = 0, checks = 0;
    for (auto& code : types) {
        VerifyReport r = verify_table(code, grid);
        ++rows;
        checks += r.checked();
        std::cout << "row " << code << ": " << (r.all_equal() ? "pass" : "FAIL") << " ("
                  << r.checked() << " grid points)\n";
        if (!r.all_equal()) {
            all_ok = false;
            for (auto& e : r.entries)
                if (!e.equal)
                    std::cout << "  mismatch at N=" << e.spec.N << " nu0=" << e.spec.nu0
                              << (e.spec.ell ? " len=" + std::to_string(*e.spec.ell) : "")
                              << "\n";
        }
    }
    std::cout << (all_ok ? "all rows pass" : "some rows FAIL") << " (" << rows << " rows, "
              << checks << " grid points)\n";
    return all_ok ? kExitOk : kExitInvalid;
}

int cmd_countercand(int case_id, bool no_exclusion, const std::string& format) {
    std::vector<Countercandidate> sols;
    if (case_id == 0) {
        if (no_exclusion) {
            for (auto& cs : case_systems()) {
                auto part = enumerate_case(cs.case_id, false);
                sols.insert(sols.end(), part.begin(), part.end());
            }
        } else {
            sols = enumerate_all();
        }
    } else {
        sols = enumerate_case(case_id, !no_exclusion);
    }
    if (format == "json") {
        json out = json::array();
        for (auto& s : sols) {
            json vars = json::object();
            for (auto& [k, v] : s.assignment) vars[k] = v;
            out.push_back({{"case", s.case_id}, {"variables", vars}});
        }
        std::cout << json{{"count", sols.size()}, {"solutions", out}}.dump(2) << "\n";
    } else {
        for (auto& s : sols) std::cout << render_countercandidate(s) << "\n";
        std::cout << "total: " << sols.size() << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact zeta-function toolkit for triple-point-free degenerations"};
    app.require_subcommand(1);

    std::string path, format = "plain", type;
    bool strict = false, oracle = false, no_exclusion = false;
    long long max_N = 3, nu_values = 6, max_len = 5;
    int case_id = 0;

    auto add_model_arg = [&](CLI::App* cmd) {
        cmd->add_option("model", path, "model file (JSON)")->required();
        cmd->add_flag("--strict", strict, "promote the degree-24 warning to an error");
    };

    CLI::App* validate_cmd = app.add_subcommand("validate", "check a model file");
    add_model_arg(validate_cmd);

    CLI::App* zeta_cmd = app.add_subcommand("zeta", "print the motivic zeta function");
    add_model_arg(zeta_cmd);
    zeta_cmd->add_option("--format", format, "plain | latex | json")
        ->check(CLI::IsMember({"plain", "latex", "json"}));

    CLI::App* poles_cmd = app.add_subcommand("poles", "print the pole report");
    add_model_arg(poles_cmd);
    poles_cmd->add_option("--format", format, "plain | json")
        ->check(CLI::IsMember({"plain", "json"}));
    poles_cmd->add_flag("--oracle", oracle, "add the specialization-test column");

    CLI::App* mzeta_cmd = app.add_subcommand("mzeta", "print the monodromy zeta function");
    add_model_arg(mzeta_cmd);
    mzeta_cmd->add_option("--format", format, "plain | json")
        ->check(CLI::IsMember({"plain", "json"}));

    CLI::App* check_cmd = app.add_subcommand("check", "verdict on the monodromy property");
    add_model_arg(check_cmd);

    CLI::App* flowers_cmd = app.add_subcommand("flowers", "flower table operations");
    flowers_cmd->require_subcommand(1);
    CLI::App* fverify_cmd =
        flowers_cmd->add_subcommand("verify", "check contributions against closed forms");
    fverify_cmd->add_option("--type", type, "verify a single catalog row");
    fverify_cmd->add_option("--max-n", max_N, "largest scale (default 3)");
    fverify_cmd->add_option("--nu-count", nu_values, "admissible nu values per row (default 6)");
    fverify_cmd->add_option("--max-len", max_len, "largest length (default 5)");

    CLI::App* cc_cmd = app.add_subcommand("countercand", "enumerate countercandidates");
    cc_cmd->add_option("--case", case_id, "one case (1..10); all when omitted")
        ->check(CLI::Range(1, 10));
    cc_cmd->add_flag("--no-exclusion", no_exclusion, "skip the divisibility filter");
    cc_cmd->add_option("--format", format, "table | json")
        ->check(CLI::IsMember({"table", "json"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate_cmd->parsed()) return cmd_validate(path, strict);
        if (zeta_cmd->parsed()) return cmd_zeta(path, format, strict);
        if (poles_cmd->parsed()) return cmd_poles(path, format, strict, oracle);
        if (mzeta_cmd->parsed()) return cmd_mzeta(path, format, strict);
        if (check_cmd->parsed()) return cmd_check(path, strict);
        if (flowers_cmd->parsed()) {
            if (!type.empty() && !find_flower_type(type)) {
                std::cerr << "error: unknown flower type '" << type << "'\n";
                return kExitInvalid;
            }
            if (!type.empty() && type == "4D") {
                std::cerr << "error: type 4D has no closed form\n";
                return kExitInvalid;
            }
            return cmd_flowers_verify(type, max_N, nu_values, max_len);
        }
        if (cc_cmd->parsed()) return cmd_countercand(case_id, no_exclusion, format);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    return kExitOk;
}
