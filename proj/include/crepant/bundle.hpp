#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "crepant/graded_algebra.hpp"
#include "crepant/quantum_correction.hpp"
#include "crepant/sector_model.hpp"

namespace crepant {

using Json = nlohmann::ordered_json;

enum class BundleMode { pairing, cubic, tensor };

/// One self-describing input file: basis, exact scalar data, and the
/// optional ray/series, group and map sections. All scalar strings are
/// exact expressions over the bundle's parameter table.
struct Bundle {
    std::string name;
    std::string description;
    std::string notes;

    std::vector<std::string> parameter_order;
    std::map<std::string, GaussRational> parameters;

    std::vector<BasisElement> basis;
    BundleMode mode = BundleMode::tensor;
    std::optional<PairingMatrix> pairing;
    std::optional<Rational> top_degree;
    TripleTensor triples{0};

    std::optional<ExtremalRaySet> rays;
    std::vector<GWSeries> series;

    std::optional<GroupSpec> group;
    std::map<std::string, Rational> iota_by_class;
    std::optional<std::vector<size_t>> involution;

    std::optional<std::vector<std::pair<std::string, GaussRational>>> candidate_map;
    std::vector<size_t> fixed_classes;

    size_t dim() const { return basis.size(); }

    size_t index_of(const std::string& element) const {
        for (size_t i = 0; i < basis.size(); ++i)
            if (basis[i].name == element) return i;
        throw UnresolvedSymbol("basis element '" + element + "' in bundle '" + name + "'");
    }

    std::vector<std::string> names() const {
        std::vector<std::string> out;
        for (const auto& b : basis) out.push_back(b.name);
        return out;
    }

    bool has_correction() const { return rays.has_value(); }

    TripleTensor qc_tensor() const {
        if (!rays)
            throw SchemaViolation("bundle '" + name + "' carries no extremal rays");
        return qc_triple_tensor(series, *rays, dim(), top_degree);
    }

    TripleTensor corrected_tensor() const { return corrected_triples(triples, qc_tensor()); }

    /// Corrected tensor when rays are present, classical otherwise.
    TripleTensor effective_tensor() const { return has_correction() ? corrected_tensor() : triples; }

    /// The triple data as a symmetric form on the full basis (used for
    /// tensor-level comparisons; degree-2 restriction is cubic_form()).
    CubicForm as_form(const TripleTensor& tensor) const {
        CubicForm form;
        form.names = names();
        for (const auto& [key, v] : tensor.entries())
            form.set(key[0], key[1], key[2], v);
        return form;
    }

    GradedAlgebra algebra(const TripleTensor& tensor) const {
        if (!pairing)
            throw SchemaViolation("bundle '" + name + "' carries no pairing");
        return build_algebra(basis, *pairing, tensor);
    }

    /// Conjugacy-class index for each basis element; null where unlabeled.
    std::vector<std::optional<size_t>> sector_classes(const std::vector<ConjClass>& classes) const {
        std::vector<std::optional<size_t>> out(dim());
        for (size_t i = 0; i < dim(); ++i) {
            if (!basis[i].sector) continue;
            bool found = false;
            for (size_t c = 0; c < classes.size(); ++c)
                if (classes[c].name == *basis[i].sector) {
                    out[i] = c;
                    found = true;
                    break;
                }
            if (!found)
                throw UnresolvedSymbol("sector label '" + *basis[i].sector + "' on '" +
                                       basis[i].name + "' is not a conjugacy class name");
        }
        return out;
    }
};

namespace detail {

inline void require_keys(const Json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
    for (const auto& [key, value] : obj.items())
        if (!allowed.count(key))
            throw SchemaViolation("unknown key '" + key + "' in " + where);
}

inline const Json& require(const Json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key))
        throw SchemaViolation("missing key '" + key + "' in " + where);
    return obj.at(key);
}

inline std::string require_string(const Json& obj, const std::string& key,
                                  const std::string& where) {
    const Json& v = require(obj, key, where);
    if (!v.is_string())
        throw SchemaViolation("key '" + key + "' in " + where + " must be a string");
    return v.get<std::string>();
}

inline Rational json_rational(const Json& v, const std::string& where) {
    if (v.is_number_integer()) return Rational(v.get<long long>());
    if (v.is_string()) return parse_rational(v.get<std::string>());
    throw SchemaViolation(where + " must be an integer or an exact rational string");
}

inline GaussRational resolve_value(const Json& v, const std::map<std::string, GaussRational>& params,
                                   const std::string& where) {
    if (v.is_number_integer()) return GaussRational(Rational(v.get<long long>()));
    if (v.is_string()) return resolve_scalar(v.get<std::string>(), params);
    throw SchemaViolation(where + " must be an integer or an exact scalar string");
}

} // namespace detail

/// Parse a bundle from JSON text. `overrides` replaces raw parameter
/// strings before the table is evaluated (in declaration order), so
/// derived parameters stay consistent.
namespace detail {
Bundle parse_bundle_doc(const Json& doc, const std::string& source,
                        const std::map<std::string, std::string>& overrides);
} // namespace detail

inline Bundle parse_bundle_text(const std::string& text, const std::string& source,
                                const std::map<std::string, std::string>& overrides = {}) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string(e.what()) + " in " + source);
    }
    try {
        return detail::parse_bundle_doc(doc, source, overrides);
    } catch (const nlohmann::json::exception& e) {
        // wrong JSON value types surface as schema violations
        throw SchemaViolation(std::string(e.what()) + " in " + source);
    }
}

namespace detail {

inline Bundle parse_bundle_doc(const Json& doc, const std::string& source,
                               const std::map<std::string, std::string>& overrides) {
    if (!doc.is_object())
        throw SchemaViolation("bundle " + source + " must be a JSON object");
    detail::require_keys(doc,
                         {"metadata", "parameters", "basis", "pairing", "cubic_form", "top_degree",
                          "triples", "rays", "series", "group", "involution", "candidate_map",
                          "fixed_classes"},
                         source);

    Bundle b;

    const Json& meta = detail::require(doc, "metadata", source);
    detail::require_keys(meta, {"name", "description", "notes"}, source + " metadata");
    b.name = detail::require_string(meta, "name", source + " metadata");
    if (meta.contains("description")) b.description = meta.at("description").get<std::string>();
    if (meta.contains("notes")) b.notes = meta.at("notes").get<std::string>();

    // parameters, evaluated in declaration order so later entries may
    // reference earlier ones
    if (doc.contains("parameters")) {
        const Json& params = doc.at("parameters");
        if (!params.is_object())
            throw SchemaViolation("'parameters' must be an object in " + source);
        std::set<std::string> overridden;
        for (const auto& [key, value] : params.items()) {
            std::string raw;
            if (auto it = overrides.find(key); it != overrides.end()) {
                raw = it->second;
                overridden.insert(key);
            } else if (value.is_string()) {
                raw = value.get<std::string>();
            } else if (value.is_number_integer()) {
                raw = std::to_string(value.get<long long>());
            } else {
                throw SchemaViolation("parameter '" + key + "' must be an exact scalar string");
            }
            b.parameters[key] = resolve_scalar(raw, b.parameters);
            b.parameter_order.push_back(key);
        }
        for (const auto& [key, value] : overrides)
            if (!overridden.count(key))
                throw UnresolvedSymbol("override '" + key + "' is not a parameter of bundle '" +
                                       b.name + "'");
    } else if (!overrides.empty()) {
        throw UnresolvedSymbol("bundle '" + b.name + "' has no parameters to override");
    }

    // basis
    const Json& basis = detail::require(doc, "basis", source);
    if (!basis.is_array() || basis.empty())
        throw SchemaViolation("'basis' must be a non-empty array in " + source);
    for (const Json& e : basis) {
        detail::require_keys(e, {"name", "degree", "sector"}, "basis element");
        BasisElement el;
        el.name = detail::require_string(e, "name", "basis element");
        el.degree = detail::json_rational(detail::require(e, "degree", "basis element"),
                                          "degree of '" + el.name + "'");
        if (e.contains("sector")) el.sector = e.at("sector").get<std::string>();
        b.basis.push_back(std::move(el));
    }
    detail::validate_basis(b.basis);

    if (doc.contains("top_degree"))
        b.top_degree = detail::json_rational(doc.at("top_degree"), "top_degree");

    // pairing | cubic_form | neither (tensor mode)
    if (doc.contains("pairing") && doc.contains("cubic_form"))
        throw SchemaViolation("bundle " + source + " declares both 'pairing' and 'cubic_form'");
    if (doc.contains("pairing")) {
        const Json& rows = doc.at("pairing");
        if (!rows.is_array() || rows.size() != b.dim())
            throw SchemaViolation("'pairing' must be a " + std::to_string(b.dim()) + "x" +
                                  std::to_string(b.dim()) + " matrix in " + source);
        Mat<GaussRational> m(b.dim(), b.dim());
        for (size_t i = 0; i < b.dim(); ++i) {
            const Json& row = rows.at(i);
            if (!row.is_array() || row.size() != b.dim())
                throw SchemaViolation("pairing row " + std::to_string(i) + " has wrong length");
            for (size_t j = 0; j < b.dim(); ++j)
                m(i, j) = detail::resolve_value(row.at(j), b.parameters, "pairing entry");
        }
        try {
            b.pairing = PairingMatrix(std::move(m));
        } catch (const ShapeMismatch& e) {
            throw SchemaViolation(std::string("pairing in ") + source + ": " + e.what());
        }
        b.mode = BundleMode::pairing;
    } else if (doc.contains("cubic_form")) {
        if (!doc.at("cubic_form").is_boolean() || !doc.at("cubic_form").get<bool>())
            throw SchemaViolation("'cubic_form' must be true when present");
        for (const auto& el : b.basis)
            if (el.degree != 2)
                throw SchemaViolation("cubic-form bundle has non-degree-2 element '" + el.name +
                                      "'");
        b.mode = BundleMode::cubic;
    }

    // triples
    b.triples = TripleTensor(b.dim(), b.top_degree);
    if (doc.contains("triples")) {
        std::set<std::array<size_t, 3>> seen;
        for (const Json& t : doc.at("triples")) {
            detail::require_keys(t, {"i", "j", "k", "value"}, "triple");
            size_t i = b.index_of(detail::require_string(t, "i", "triple"));
            size_t j = b.index_of(detail::require_string(t, "j", "triple"));
            size_t k = b.index_of(detail::require_string(t, "k", "triple"));
            auto key = TripleTensor::sorted_key(i, j, k);
            if (!seen.insert(key).second)
                throw SchemaViolation("duplicate triple (" + b.basis[i].name + ", " +
                                      b.basis[j].name + ", " + b.basis[k].name + ") in " + source);
            b.triples.set(i, j, k,
                          detail::resolve_value(detail::require(t, "value", "triple"),
                                                b.parameters, "triple value"));
        }
    }

    // rays + series
    if (doc.contains("rays")) {
        const Json& rays = doc.at("rays");
        detail::require_keys(rays, {"names", "nondegenerate"}, "rays");
        ExtremalRaySet rs;
        for (const Json& n : detail::require(rays, "names", "rays"))
            rs.names.push_back(n.get<std::string>());
        rs.nondegenerate = detail::require(rays, "nondegenerate", "rays").get<bool>();
        rs.validate();
        b.rays = std::move(rs);
    }
    if (doc.contains("series")) {
        if (!b.rays)
            throw SchemaViolation("bundle " + source + " has series but no rays");
        auto ray_index = [&](const std::string& rname) -> size_t {
            for (size_t r = 0; r < b.rays->names.size(); ++r)
                if (b.rays->names[r] == rname) return r;
            throw UnresolvedSymbol("ray '" + rname + "' in " + source);
        };
        for (const Json& s : doc.at("series")) {
            detail::require_keys(s, {"triple", "terms", "tails"}, "series entry");
            const Json& triple = detail::require(s, "triple", "series entry");
            if (!triple.is_array() || triple.size() != 3)
                throw SchemaViolation("series 'triple' must list three basis names");
            GWSeries gw;
            for (size_t t = 0; t < 3; ++t) gw.triple[t] = b.index_of(triple.at(t).get<std::string>());
            if (s.contains("terms")) {
                for (const Json& term : s.at("terms")) {
                    detail::require_keys(term, {"degrees", "value"}, "series term");
                    GWTerm tm;
                    for (const Json& d : detail::require(term, "degrees", "series term"))
                        tm.degrees.push_back(d.get<long long>());
                    tm.value = detail::resolve_value(detail::require(term, "value", "series term"),
                                                     b.parameters, "series term value");
                    gw.terms.push_back(std::move(tm));
                }
            }
            if (s.contains("tails")) {
                for (const Json& tail : s.at("tails")) {
                    detail::require_keys(tail, {"ray", "from", "value", "kind"}, "series tail");
                    if (tail.contains("kind") && tail.at("kind").get<std::string>() != "constant")
                        throw UnsupportedTailKind("tail kind '" +
                                                  tail.at("kind").get<std::string>() +
                                                  "' (only constant per-degree tails exist)");
                    GWTail tl;
                    tl.ray = ray_index(detail::require_string(tail, "ray", "series tail"));
                    tl.from = detail::require(tail, "from", "series tail").get<long long>();
                    tl.value = detail::resolve_value(detail::require(tail, "value", "series tail"),
                                                     b.parameters, "series tail value");
                    gw.tails.push_back(std::move(tl));
                }
            }
            gw.validate(b.rays->count());
            b.series.push_back(std::move(gw));
        }
    }

    // group + iota
    if (doc.contains("group")) {
        const Json& g = doc.at("group");
        detail::require_keys(g, {"order", "names", "table", "iota"}, "group");
        GroupSpec spec;
        spec.order = detail::require(g, "order", "group").get<size_t>();
        if (g.contains("names"))
            for (const Json& n : g.at("names")) spec.names.push_back(n.get<std::string>());
        else
            for (size_t i = 0; i < spec.order; ++i) spec.names.push_back("g" + std::to_string(i));
        for (const Json& row : detail::require(g, "table", "group")) {
            std::vector<size_t> r;
            for (const Json& v : row) r.push_back(v.get<size_t>());
            spec.table.push_back(std::move(r));
        }
        try {
            spec.validate();
        } catch (const InvalidGroupTable& e) {
            throw SchemaViolation(std::string("group in ") + source + ": " + e.what());
        }
        auto classes = conjugacy_classes(spec);
        if (g.contains("iota")) {
            for (const auto& [key, value] : g.at("iota").items()) {
                bool known = false;
                for (const auto& c : classes)
                    if (c.name == key) known = true;
                if (!known)
                    throw UnresolvedSymbol("iota key '" + key +
                                           "' is not a conjugacy class name in " + source);
                Rational iota = detail::json_rational(value, "iota of class " + key);
                if (iota < 0)
                    throw SchemaViolation("iota of class " + key + " must be nonnegative");
                if (key == classes[class_of(classes, spec.identity())].name && iota != 0)
                    throw SchemaViolation("iota of the identity class must be 0");
                b.iota_by_class[key] = iota;
            }
        }
        b.group = std::move(spec);
    }

    // involution: explicit pairs; unmapped names stay fixed
    if (doc.contains("involution")) {
        std::vector<size_t> perm(b.dim());
        for (size_t i = 0; i < b.dim(); ++i) perm[i] = i;
        for (const auto& [from, to] : doc.at("involution").items())
            perm[b.index_of(from)] = b.index_of(to.get<std::string>());
        b.involution = std::move(perm);
    }

    if (doc.contains("candidate_map")) {
        std::vector<std::pair<std::string, GaussRational>> cm;
        std::set<std::string> covered;
        for (const auto& [key, value] : doc.at("candidate_map").items()) {
            size_t idx = b.index_of(key);
            (void)idx;
            cm.emplace_back(key, detail::resolve_value(value, b.parameters, "candidate map entry"));
            covered.insert(key);
        }
        for (const auto& el : b.basis)
            if (!covered.count(el.name))
                throw SchemaViolation("candidate_map is missing basis element '" + el.name + "'");
        b.candidate_map = std::move(cm);
    }

    if (doc.contains("fixed_classes"))
        for (const Json& n : doc.at("fixed_classes"))
            b.fixed_classes.push_back(b.index_of(n.get<std::string>()));

    return b;
}

} // namespace detail

inline Bundle parse_bundle(const std::string& path,
                           const std::map<std::string, std::string>& overrides = {}) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open bundle file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_bundle_text(buf.str(), path, overrides);
}

/// Grading of a bare tensor against the declared top degree (tensor-mode
/// bundles never reach build_algebra, which otherwise performs this check).
inline void validate_tensor_grading(const std::vector<BasisElement>& basis,
                                    const TripleTensor& triples) {
    if (!triples.top_degree()) return;
    for (const auto& [key, v] : triples.entries()) {
        if (v.is_zero()) continue;
        if (basis[key[0]].degree + basis[key[1]].degree + basis[key[2]].degree !=
            *triples.top_degree())
            throw GradingViolation("triple (" + basis[key[0]].name + ", " + basis[key[1]].name +
                                   ", " + basis[key[2]].name + ") nonzero off the top degree");
    }
}

} // namespace crepant
