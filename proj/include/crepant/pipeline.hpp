#pragma once

#include <complex>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "crepant/bundle.hpp"
#include "crepant/fixtures.hpp"
#include "crepant/isomorphism.hpp"

namespace crepant {

enum class CheckStatus { pass, fail, info, error };

inline const char* to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        case CheckStatus::info: return "info";
        default: return "error";
    }
}

inline CheckStatus check_status_from_string(const std::string& s) {
    if (s == "pass") return CheckStatus::pass;
    if (s == "fail") return CheckStatus::fail;
    if (s == "info") return CheckStatus::info;
    if (s == "error") return CheckStatus::error;
    throw ParseError("unknown check status '" + s + "'");
}

struct CheckEntry {
    std::string section;
    std::string name;
    CheckStatus status;
    std::string detail;

    friend bool operator==(const CheckEntry&, const CheckEntry&) = default;
};

/// Flat, deterministically ordered result tree of one command run.
struct Report {
    std::string title;
    std::vector<CheckEntry> entries;

    void add(std::string section, std::string name, CheckStatus status, std::string detail = "") {
        entries.push_back({std::move(section), std::move(name), status, std::move(detail)});
    }
    void check(std::string section, std::string name, bool ok, std::string detail = "") {
        add(std::move(section), std::move(name), ok ? CheckStatus::pass : CheckStatus::fail,
            std::move(detail));
    }

    size_t counted_checks() const {
        size_t n = 0;
        for (const auto& e : entries)
            if (e.status != CheckStatus::info) ++n;
        return n;
    }
    size_t failed_checks() const {
        size_t n = 0;
        for (const auto& e : entries)
            if (e.status == CheckStatus::fail || e.status == CheckStatus::error) ++n;
        return n;
    }
    bool passed() const { return failed_checks() == 0; }

    friend bool operator==(const Report&, const Report&) = default;
};

enum class ReportFormat { text, json };

inline std::string emit_report(const Report& r, ReportFormat format) {
    if (format == ReportFormat::text) {
        std::string out = "== " + r.title + " ==\n";
        for (const auto& e : r.entries) {
            out += "[" + std::string(to_string(e.status)) + "] " + e.section + "/" + e.name;
            if (!e.detail.empty()) out += ": " + e.detail;
            out += "\n";
        }
        if (r.passed())
            out += "all checks passed (" + std::to_string(r.counted_checks()) + " checks)\n";
        else
            out += "FAILED (" + std::to_string(r.failed_checks()) + " of " +
                   std::to_string(r.counted_checks()) + " checks)\n";
        return out;
    }
    Json doc;
    doc["title"] = r.title;
    doc["checks"] = Json::array();
    for (const auto& e : r.entries) {
        Json c;
        c["section"] = e.section;
        c["name"] = e.name;
        c["status"] = to_string(e.status);
        c["detail"] = e.detail;
        doc["checks"].push_back(std::move(c));
    }
    doc["summary"] = Json{{"total_checks", r.counted_checks()},
                          {"failed", r.failed_checks()},
                          {"passed", r.passed()}};
    return doc.dump(2) + "\n";
}

inline Report report_from_json(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("report: ") + e.what());
    }
    Report r;
    r.title = doc.at("title").get<std::string>();
    for (const Json& c : doc.at("checks"))
        r.entries.push_back({c.at("section").get<std::string>(), c.at("name").get<std::string>(),
                             check_status_from_string(c.at("status").get<std::string>()),
                             c.at("detail").get<std::string>()});
    return r;
}

// ---------------------------------------------------------------------------
// shared rendering helpers
// ---------------------------------------------------------------------------

namespace render {

inline std::string triple(const std::vector<std::string>& names,
                          const std::array<size_t, 3>& key) {
    return "(" + names[key[0]] + ", " + names[key[1]] + ", " + names[key[2]] + ")";
}

inline std::string witness(const std::vector<std::string>& from,
                           const std::vector<std::string>& to,
                           const std::vector<GaussRational>& scalars) {
    std::string out;
    for (size_t i = 0; i < scalars.size(); ++i) {
        if (i) out += ", ";
        out += from[i] + " -> (" + to_string(scalars[i]) + ") " + to[i];
    }
    return out;
}

inline std::string complex_witness(const std::vector<std::string>& from,
                                   const std::vector<std::complex<double>>& scalars,
                                   double residual) {
    std::string out;
    char buf[64];
    for (size_t i = 0; i < scalars.size(); ++i) {
        if (i) out += ", ";
        std::snprintf(buf, sizeof(buf), "%.6g%+.6gi", scalars[i].real(), scalars[i].imag());
        out += from[i] + " -> " + buf;
    }
    std::snprintf(buf, sizeof(buf), " (residual %.3g, non-certifying)", residual);
    return out + buf;
}

inline std::string verdict_detail(const IsoReport& rep, const std::vector<std::string>& from,
                                  const std::vector<std::string>& to) {
    std::string detail = to_string(rep.verdict);
    if (rep.witness) detail += "; witness: " + witness(from, to, *rep.witness);
    if (rep.obstruction)
        detail += "; obstruction (" + rep.obstruction->where[0] + ", " + rep.obstruction->where[1] +
                  ", " + rep.obstruction->where[2] + "): " + to_string(rep.obstruction->lhs) +
                  " != " + to_string(rep.obstruction->rhs);
    if (rep.numeric) detail += "; " + complex_witness(from, rep.numeric->scalars, rep.numeric->residual);
    return detail;
}

} // namespace render

// ---------------------------------------------------------------------------
// pipeline operations
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<size_t> combined_pins(const Bundle& source, const Bundle& target) {
    std::set<size_t> pins(source.fixed_classes.begin(), source.fixed_classes.end());
    pins.insert(target.fixed_classes.begin(), target.fixed_classes.end());
    return {pins.begin(), pins.end()};
}

inline void require_aligned(const Bundle& a, const Bundle& b) {
    if (a.dim() != b.dim())
        throw ShapeMismatch("bundles '" + a.name + "' and '" + b.name +
                            "' have different dimensions");
    for (size_t i = 0; i < a.dim(); ++i)
        if (a.basis[i].degree != b.basis[i].degree)
            throw ShapeMismatch("bundles '" + a.name + "' and '" + b.name +
                                "' disagree in degree at position " + std::to_string(i));
}

} // namespace detail

/// Full comparison pipeline: classical tensors, quantum correction of the
/// resolution side, corrected triples, then the diagonal solver mapping the
/// orbifold basis onto the corrected resolution basis.
inline IsoReport compare_corrected_to_orbifold(const Bundle& resolution, const Bundle& orbifold) {
    detail::require_aligned(orbifold, resolution);
    TripleTensor corrected = resolution.effective_tensor();
    TripleTensor orb = orbifold.effective_tensor();
    auto pins = detail::combined_pins(orbifold, resolution);
    if (orbifold.mode == BundleMode::pairing && resolution.mode == BundleMode::pairing)
        return solve_diagonal(orbifold.algebra(orb), resolution.algebra(corrected), pins);
    return solve_diagonal(orbifold.as_form(orb), resolution.as_form(corrected), pins);
}

/// Candidate-map verification from `source` (which carries the map) to
/// `target`, on the effective (corrected where applicable) tensors.
inline std::optional<IsoReport> verify_candidate(const Bundle& source, const Bundle& target) {
    if (!source.candidate_map) return std::nullopt;
    detail::require_aligned(source, target);
    std::vector<GaussRational> scalars(source.dim(), GaussRational(1));
    for (const auto& [name, value] : *source.candidate_map) scalars[source.index_of(name)] = value;
    DiagonalMap m(scalars);
    TripleTensor src = source.effective_tensor();
    TripleTensor tgt = target.effective_tensor();
    if (source.mode == BundleMode::pairing && target.mode == BundleMode::pairing)
        return verify_map(source.algebra(src), target.algebra(tgt), m);
    return verify_map(source.as_form(src), target.as_form(tgt), m);
}

/// `check` command: structural validation of one bundle.
inline Report run_check(const Bundle& b) {
    Report r;
    r.title = "check " + b.name;
    for (const auto& p : b.parameter_order)
        r.add("parameters", p, CheckStatus::info, to_string(b.parameters.at(p)));

    r.check("tensor", "symmetry", b.triples.is_symmetric());
    try {
        validate_tensor_grading(b.basis, b.triples);
        r.add("tensor", "grading", CheckStatus::pass,
              b.top_degree ? "top degree " + to_string(*b.top_degree) : "no top degree declared");
    } catch (const GradingViolation& e) {
        r.add("tensor", "grading", CheckStatus::fail, e.what());
    }

    if (b.group) {
        auto classes = conjugacy_classes(*b.group);
        r.add("group", "table", CheckStatus::pass,
              "group law valid (order " + std::to_string(b.group->order) + ", " +
                  std::to_string(classes.size()) + " conjugacy classes)");
        b.sector_classes(classes); // throws on unknown sector labels
    }

    auto run_ring_checks = [&](const GradedAlgebra& alg, const std::string& note) {
        if (!note.empty()) r.add("ring", "model", CheckStatus::info, note);
        StructureReport st = check_structure(alg);
        if (st.ok())
            r.add("ring", "structure", CheckStatus::pass,
                  "degree additivity, commutativity and unit law hold");
        for (const auto& v : st.violations) {
            std::string where;
            for (const auto& w : v.where) where += (where.empty() ? "" : ", ") + w;
            r.add("ring", std::string("structure:") + to_string(v.kind) + "(" + where + ")",
                  CheckStatus::fail, v.detail);
        }
        StructureReport as = check_associativity(alg);
        if (as.ok())
            r.add("ring", "associativity", CheckStatus::pass, "all basis triples associate");
        for (const auto& v : as.violations) {
            std::string where;
            for (const auto& w : v.where) where += (where.empty() ? "" : ", ") + w;
            r.add("ring", "associativity(" + where + ")", CheckStatus::fail, v.detail);
        }
    };

    try {
        switch (b.mode) {
            case BundleMode::pairing:
                run_ring_checks(b.algebra(b.triples), "");
                break;
            case BundleMode::cubic:
                run_ring_checks(frobenius_algebra(cubic_form(b.basis, b.triples, b.names())),
                                "cubic form promoted to its graded Frobenius algebra");
                break;
            case BundleMode::tensor:
                r.add("ring", "model", CheckStatus::info,
                      "no pairing or cubic-form flag; product checks skipped");
                break;
        }
    } catch (const Error& e) {
        r.add("ring", "build", CheckStatus::error, e.what());
    }
    return r;
}

/// `correct` command: emit classical, correction and corrected values.
inline Report run_correct(const Bundle& b) {
    Report r;
    r.title = "correct " + b.name;
    for (const auto& p : b.parameter_order)
        r.add("parameters", p, CheckStatus::info, to_string(b.parameters.at(p)));
    if (!b.rays)
        throw SchemaViolation("bundle '" + b.name + "' has no extremal rays to correct with");

    TripleTensor qc = b.qc_tensor();
    TripleTensor corrected = corrected_triples(b.triples, qc);
    auto names = b.names();
    std::set<std::array<size_t, 3>> support = b.triples.support();
    for (const auto& key : qc.support()) support.insert(key);
    for (const auto& key : support) {
        GaussRational cl = b.triples.value(key[0], key[1], key[2]);
        GaussRational q = qc.value(key[0], key[1], key[2]);
        GaussRational co = corrected.value(key[0], key[1], key[2]);
        r.add("corrected", render::triple(names, key), CheckStatus::info,
              "classical " + to_string(cl) + ", qc " + to_string(q) + ", corrected " +
                  to_string(co));
    }
    try {
        validate_tensor_grading(b.basis, corrected);
        r.add("corrected", "grading", CheckStatus::pass);
    } catch (const GradingViolation& e) {
        r.add("corrected", "grading", CheckStatus::fail, e.what());
    }
    return r;
}

/// `iso` command: diagonal isomorphism search A -> B on the effective
/// tensors (corrected wherever rays are present).
inline Report run_iso(const Bundle& a, const Bundle& b) {
    Report r;
    r.title = "iso " + a.name + " -> " + b.name;
    detail::require_aligned(a, b);
    auto from = a.names(), to = b.names();

    TripleTensor ta = a.effective_tensor();
    TripleTensor tb = b.effective_tensor();
    if (a.has_correction())
        r.add("iso", "source", CheckStatus::info, "quantum corrected tensor of " + a.name);
    if (b.has_correction())
        r.add("iso", "target", CheckStatus::info, "quantum corrected tensor of " + b.name);

    IsoReport rep;
    auto pins = detail::combined_pins(a, b);
    if (a.mode == BundleMode::pairing && b.mode == BundleMode::pairing)
        rep = solve_diagonal(a.algebra(ta), b.algebra(tb), pins);
    else
        rep = solve_diagonal(a.as_form(ta), b.as_form(tb), pins);
    r.check("iso", "solve_diagonal", rep.verdict == IsoVerdict::solved,
            render::verdict_detail(rep, from, to));

    if (auto cand = verify_candidate(a, b))
        r.add("iso", "candidate_map", CheckStatus::info,
              render::verdict_detail(*cand, from, to));
    return r;
}

// ---------------------------------------------------------------------------
// bundled fixtures
// ---------------------------------------------------------------------------

namespace detail {

/// Parse a fixture's bundles, routing each override to the bundles that
/// declare the parameter; unknown override names are rejected.
inline std::vector<Bundle> load_fixture_bundles(const std::string& fixture,
                                                const std::map<std::string, std::string>& overrides) {
    auto files = fixtures::files(fixture);
    std::set<std::string> consumed;
    std::vector<Bundle> out;
    for (const auto& f : files) {
        Json doc = Json::parse(f.content);
        std::map<std::string, std::string> mine;
        if (doc.contains("parameters"))
            for (const auto& [key, value] : overrides)
                if (doc.at("parameters").contains(key)) {
                    mine[key] = value;
                    consumed.insert(key);
                }
        out.push_back(parse_bundle_text(f.content, f.filename, mine));
    }
    for (const auto& [key, value] : overrides)
        if (!consumed.count(key))
            throw UnresolvedSymbol("override '" + key + "' matches no parameter of fixture '" +
                                   fixture + "'");
    return out;
}

inline void add_solve_entry(Report& r, const Bundle& source, const Bundle& target,
                            const IsoReport& rep) {
    r.check("iso", "solve_diagonal(" + source.name + " -> " + target.name + ")",
            rep.verdict == IsoVerdict::solved,
            render::verdict_detail(rep, source.names(), target.names()));
}

inline void add_candidate_entry(Report& r, const Bundle& source, const Bundle& target) {
    if (auto cand = verify_candidate(source, target))
        r.add("iso", "candidate_map", CheckStatus::info,
              render::verdict_detail(*cand, source.names(), target.names()) +
                  " (literal proposed scalars; the documented sign discrepancy makes a "
                  "refutation over Q expected)");
}

inline void add_ring_check_entries(Report& r, const GradedAlgebra& alg, const std::string& label) {
    StructureReport st = check_structure(alg);
    r.check("ring", label + ":structure", st.ok(),
            st.ok() ? "degree additivity, commutativity and unit law hold"
                    : st.violations.front().detail);
    StructureReport as = check_associativity(alg);
    r.check("ring", label + ":associativity", as.ok(),
            as.ok() ? "all basis triples associate" : as.violations.front().detail);
}

inline Report fixture_local_cy(const std::map<std::string, std::string>& overrides) {
    auto bundles = load_fixture_bundles("local_cy_genus_g", overrides);
    const Bundle& orb = bundles[0];
    const Bundle& res = bundles[1];
    Report r;
    r.title = "fixture local_cy_genus_g (g = " + to_string(res.parameters.at("g")) + ")";

    TripleTensor qc = res.qc_tensor();
    TripleTensor corrected = corrected_triples(res.triples, qc);
    auto names = res.names();
    for (size_t i = 0; i < res.dim(); ++i)
        for (size_t j = i; j < res.dim(); ++j)
            for (size_t k = j; k < res.dim(); ++k)
                r.add("correction", render::triple(names, {i, j, k}), CheckStatus::info,
                      "classical " + to_string(res.triples.value(i, j, k)) + ", qc " +
                          to_string(qc.value(i, j, k)) + ", corrected " +
                          to_string(corrected.value(i, j, k)));

    size_t bp = res.index_of("beta'");
    r.check("correction", "corrected(beta',beta',beta') = 0",
            corrected.value(bp, bp, bp) == GaussRational(0),
            "classical 8(1-g) cancels against the q = -1 tail value");

    IsoReport solved = compare_corrected_to_orbifold(res, orb);
    add_solve_entry(r, orb, res, solved);
    add_candidate_entry(r, orb, res);

    add_ring_check_entries(r, frobenius_algebra(res.as_form(corrected)), "corrected");
    return r;
}

inline Report fixture_hilb2(const std::map<std::string, std::string>& overrides) {
    auto bundles = load_fixture_bundles("hilb2_surface", overrides);
    const Bundle& orb = bundles[0];
    const Bundle& res = bundles[1];
    Report r;
    r.title = "fixture hilb2_surface (<C1,h> = " + to_string(res.parameters.at("<C1,h>")) + ")";

    TripleTensor qc = res.qc_tensor();
    TripleTensor corrected = corrected_triples(res.triples, qc);
    size_t e1 = res.index_of("e1"), eh = res.index_of("eh");
    GaussRational four_c1h = GaussRational(4) * res.parameters.at("<C1,h>");

    r.add("correction", "classical(e1,e1,eh)", CheckStatus::info,
          to_string(res.triples.value(e1, e1, eh)));
    r.check("correction", "qc(e1,e1,eh) = 4<C1,h>", qc.value(e1, e1, eh) == four_c1h,
            "tail coefficient 8<K,h> at q = -1 gives " + to_string(qc.value(e1, e1, eh)));
    r.check("correction", "corrected(e1,e1,eh) = 0",
            corrected.value(e1, e1, eh) == GaussRational(0),
            "the correction cancels the classical value exactly");

    IsoReport solved = compare_corrected_to_orbifold(res, orb);
    add_solve_entry(r, orb, res, solved);
    add_candidate_entry(r, orb, res);
    return r;
}

inline Report fixture_c2_pairing(const std::map<std::string, std::string>& overrides) {
    auto bundles = load_fixture_bundles("c2_zgamma_pairing", overrides);
    const Bundle& b = bundles[0];
    Report r;
    r.title = "fixture c2_zgamma_pairing (c = " + to_string(b.parameters.at("c")) + ")";

    auto classes = conjugacy_classes(*b.group);
    r.add("group", "classes", CheckStatus::info,
          std::to_string(classes.size()) + " conjugacy classes of Z" +
              std::to_string(b.group->order));
    for (const auto& [cls, iota] : b.iota_by_class)
        r.add("group", "iota(" + cls + ")", CheckStatus::info, to_string(iota));

    Signature sig = pairing_signature(*b.pairing);
    r.check("pairing", "raw signature (1,1,0)", sig == Signature{1, 1, 0},
            "(positive, negative, zero) = (" + std::to_string(sig.positive) + ", " +
                std::to_string(sig.negative) + ", " + std::to_string(sig.zero) +
                ") -- indefinite");

    HermitianMatrix gram = hermitian_gram(*b.pairing, *b.involution, b.basis, *b.group, classes);
    for (size_t i = 0; i < gram.size(); ++i)
        for (size_t j = 0; j < gram.size(); ++j)
            if (!gram.mat()(i, j).is_zero())
                r.add("pairing", "gram(" + b.basis[i].name + ", " + b.basis[j].name + ")",
                      CheckStatus::info, to_string(gram.mat()(i, j)));
    r.check("pairing", "hermitian gram positive definite", is_positive_definite(gram),
            "all leading principal minors are positive");
    return r;
}

inline Report fixture_atiyah(const std::map<std::string, std::string>& overrides) {
    auto bundles = load_fixture_bundles("atiyah_flop", overrides);
    const Bundle& x = bundles[0];
    const Bundle& xp = bundles[1];
    Report r;
    r.title = "fixture atiyah_flop";

    TripleTensor cx = x.corrected_tensor();
    TripleTensor cxp = xp.corrected_tensor();
    auto names = x.names();
    std::set<std::array<size_t, 3>> support = cx.support();
    for (const auto& key : cxp.support()) support.insert(key);
    bool agree = true;
    for (const auto& key : support) {
        GaussRational vx = cx.value(key[0], key[1], key[2]);
        GaussRational vxp = cxp.value(key[0], key[1], key[2]);
        if (vx != vxp) agree = false;
        r.add("correction", render::triple(names, key), CheckStatus::info,
              "X corrected " + to_string(vx) + ", X' corrected " + to_string(vxp));
    }
    r.check("correction", "corrected cubic forms agree", agree,
            "the q -> 1/q variable change at q = -1 exchanges the two sides");

    IsoReport solved = solve_diagonal(x.as_form(cx), xp.as_form(cxp));
    add_solve_entry(r, x, xp, solved);
    return r;
}

inline Report fixture_mukai(const std::map<std::string, std::string>& overrides) {
    auto bundles = load_fixture_bundles("mukai_trivial", overrides);
    const Bundle& x = bundles[0];
    const Bundle& xp = bundles[1];
    Report r;
    r.title = "fixture mukai_trivial";

    TripleTensor qc = x.qc_tensor();
    r.check("correction", "qc tensor identically zero", qc.support().empty(),
            "no exceptional GW series");
    TripleTensor corrected = x.corrected_tensor();
    r.check("correction", "corrected ring equals classical ring",
            corrected.support() == x.triples.support() &&
                [&] {
                    for (const auto& key : x.triples.support())
                        if (corrected.value(key[0], key[1], key[2]) !=
                            x.triples.value(key[0], key[1], key[2]))
                            return false;
                    return true;
                }());

    GradedAlgebra ax = corrected_product(corrected, *x.pairing, x.basis);
    GradedAlgebra axp = corrected_product(xp.effective_tensor(), *xp.pairing, xp.basis);
    add_ring_check_entries(r, ax, "X");
    add_ring_check_entries(r, axp, "X'");

    IsoReport solved = solve_diagonal(ax, axp);
    add_solve_entry(r, x, xp, solved);
    bool identity = solved.witness &&
                    *solved.witness == std::vector<GaussRational>(x.dim(), GaussRational(1));
    r.check("iso", "identity witness", identity,
            "the diagonal witness is the identity map");
    return r;
}

} // namespace detail

/// `fixture` command: run one bundled verification end to end.
inline Report run_fixture(const std::string& name,
                          const std::map<std::string, std::string>& overrides = {}) {
    if (name == "local_cy_genus_g") return detail::fixture_local_cy(overrides);
    if (name == "hilb2_surface") return detail::fixture_hilb2(overrides);
    if (name == "c2_zgamma_pairing") return detail::fixture_c2_pairing(overrides);
    if (name == "atiyah_flop") return detail::fixture_atiyah(overrides);
    if (name == "mukai_trivial") return detail::fixture_mukai(overrides);
    throw UnknownFixture("'" + name + "' (known: local_cy_genus_g, hilb2_surface, "
                         "c2_zgamma_pairing, atiyah_flop, mukai_trivial)");
}

} // namespace crepant
