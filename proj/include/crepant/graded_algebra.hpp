#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "crepant/matrix.hpp"
#include "crepant/scalars.hpp"

namespace crepant {

/// Basis class of a graded ring. `degree` is the cohomological (real)
/// degree, twice the complex degree; it may be fractional for shifted
/// sector classes. `sector` ties the class to a conjugacy class name when
/// the algebra carries orbifold sector data.
struct BasisElement {
    std::string name;
    Rational degree;
    std::optional<std::string> sector;
};

/// Symmetric pairing matrix over Q(i).
class PairingMatrix {
public:
    explicit PairingMatrix(Mat<GaussRational> m) : m_(std::move(m)) {
        if (m_.rows() != m_.cols())
            throw ShapeMismatch("pairing matrix must be square");
        for (size_t i = 0; i < m_.rows(); ++i)
            for (size_t j = i + 1; j < m_.cols(); ++j)
                if (m_(i, j) != m_(j, i))
                    throw ShapeMismatch("pairing matrix must be symmetric");
    }

    size_t size() const { return m_.rows(); }
    const GaussRational& at(size_t i, size_t j) const { return m_(i, j); }
    const Mat<GaussRational>& mat() const { return m_; }

private:
    Mat<GaussRational> m_;
};

/// Sparse symmetric 3-tensor. Entries are stored under the sorted index
/// triple; set_raw stores an index triple exactly as given, which is how a
/// deliberately asymmetric tensor is represented (check_structure surfaces
/// the resulting product asymmetry).
class TripleTensor {
public:
    using Key = std::array<size_t, 3>;

    explicit TripleTensor(size_t dim, std::optional<Rational> top_degree = std::nullopt)
        : dim_(dim), top_(std::move(top_degree)) {}

    size_t dim() const { return dim_; }
    const std::optional<Rational>& top_degree() const { return top_; }

    static Key sorted_key(size_t i, size_t j, size_t k) {
        Key key{i, j, k};
        std::sort(key.begin(), key.end());
        return key;
    }

    void set(size_t i, size_t j, size_t k, const GaussRational& v) {
        store(sorted_key(i, j, k), v);
    }

    void add(size_t i, size_t j, size_t k, const GaussRational& v) {
        Key key = sorted_key(i, j, k);
        auto it = entries_.find(key);
        GaussRational sum = (it == entries_.end() ? GaussRational(0) : it->second) + v;
        store(key, sum);
    }

    /// Stores the index triple without sorting. Only for representing
    /// inconsistent input; every internal producer uses set/add.
    void set_raw(size_t i, size_t j, size_t k, const GaussRational& v) { store({i, j, k}, v); }

    GaussRational value(size_t i, size_t j, size_t k) const {
        Key raw{i, j, k};
        if (auto it = entries_.find(raw); it != entries_.end()) return it->second;
        if (auto it = entries_.find(sorted_key(i, j, k)); it != entries_.end()) return it->second;
        return GaussRational(0);
    }

    const std::map<Key, GaussRational>& entries() const { return entries_; }

    /// Sorted index triples carrying a nonzero value.
    std::set<Key> support() const {
        std::set<Key> out;
        for (const auto& [key, v] : entries_)
            if (!v.is_zero()) out.insert(sorted_key(key[0], key[1], key[2]));
        return out;
    }

    bool is_symmetric() const {
        for (const auto& [key, v] : entries_) {
            Key s = sorted_key(key[0], key[1], key[2]);
            if (key != s && value(s[0], s[1], s[2]) != v) return false;
        }
        return true;
    }

private:
    void store(const Key& key, const GaussRational& v) {
        for (size_t idx : key)
            if (idx >= dim_) throw ShapeMismatch("tensor index out of range");
        if (v.is_zero())
            entries_.erase(key);
        else
            entries_[key] = v;
    }

    size_t dim_;
    std::optional<Rational> top_;
    std::map<Key, GaussRational> entries_;
};

/// Symmetric cubic form on a named degree-2 sub-basis; no pairing attached.
struct CubicForm {
    std::vector<std::string> names;
    std::map<std::array<size_t, 3>, GaussRational> entries;

    size_t dim() const { return names.size(); }

    void set(size_t i, size_t j, size_t k, const GaussRational& v) {
        auto key = TripleTensor::sorted_key(i, j, k);
        if (v.is_zero())
            entries.erase(key);
        else
            entries[key] = v;
    }

    GaussRational value(size_t i, size_t j, size_t k) const {
        auto it = entries.find(TripleTensor::sorted_key(i, j, k));
        return it == entries.end() ? GaussRational(0) : it->second;
    }
};

enum class CheckKind { grading, commutativity, unit_law, associativity };

inline const char* to_string(CheckKind k) {
    switch (k) {
        case CheckKind::grading: return "grading";
        case CheckKind::commutativity: return "commutativity";
        case CheckKind::unit_law: return "unit_law";
        default: return "associativity";
    }
}

struct StructureViolation {
    CheckKind kind;
    std::vector<std::string> where; // offending basis names
    std::string detail;
};

struct StructureReport {
    std::vector<StructureViolation> violations;
    bool ok() const { return violations.empty(); }
};

/// Finite-dimensional graded commutative ring presented by a basis with
/// derived structure constants. Pairing and triple tensor are retained
/// when the algebra was built from them; sector-style algebras supply
/// constants directly.
class GradedAlgebra {
public:
    GradedAlgebra(std::vector<BasisElement> basis,
                  std::map<std::pair<size_t, size_t>, std::vector<GaussRational>> constants,
                  std::optional<size_t> unit, std::optional<PairingMatrix> pairing = std::nullopt,
                  std::optional<TripleTensor> triples = std::nullopt)
        : basis_(std::move(basis)),
          constants_(std::move(constants)),
          unit_(unit),
          pairing_(std::move(pairing)),
          triples_(std::move(triples)) {}

    size_t dim() const { return basis_.size(); }
    const std::vector<BasisElement>& basis() const { return basis_; }
    std::optional<size_t> unit() const { return unit_; }
    const std::optional<PairingMatrix>& pairing() const { return pairing_; }
    const std::optional<TripleTensor>& triples() const { return triples_; }

    std::optional<size_t> index_of(const std::string& name) const {
        for (size_t i = 0; i < basis_.size(); ++i)
            if (basis_[i].name == name) return i;
        return std::nullopt;
    }

    bool even(size_t i) const { return is_even_integer(basis_[i].degree); }

    /// Coefficients of e_i * e_j in the basis.
    const std::vector<GaussRational>& product(size_t i, size_t j) const {
        if (!even(i) || !even(j))
            throw OddDegreeUnsupported("product involving odd-degree class '" +
                                       basis_[!even(i) ? i : j].name + "'");
        auto it = constants_.find({i, j});
        if (it == constants_.end()) { // missing pair means zero product
            zero_.assign(dim(), GaussRational(0));
            return zero_;
        }
        return it->second;
    }

    /// Bilinear extension to coefficient vectors.
    std::vector<GaussRational> product(const std::vector<GaussRational>& a,
                                       const std::vector<GaussRational>& b) const {
        std::vector<GaussRational> out(dim(), GaussRational(0));
        for (size_t i = 0; i < dim(); ++i) {
            if (a[i].is_zero()) continue;
            for (size_t j = 0; j < dim(); ++j) {
                if (b[j].is_zero()) continue;
                const auto& p = product(i, j);
                for (size_t k = 0; k < dim(); ++k)
                    if (!p[k].is_zero()) out[k] += a[i] * b[j] * p[k];
            }
        }
        return out;
    }

private:
    std::vector<BasisElement> basis_;
    std::map<std::pair<size_t, size_t>, std::vector<GaussRational>> constants_;
    std::optional<size_t> unit_;
    std::optional<PairingMatrix> pairing_;
    std::optional<TripleTensor> triples_;
    mutable std::vector<GaussRational> zero_;
};

namespace detail {

inline void validate_basis(const std::vector<BasisElement>& basis) {
    std::set<std::string> seen;
    for (const auto& b : basis) {
        if (!seen.insert(b.name).second)
            throw SchemaViolation("duplicate basis name '" + b.name + "'");
        if (b.degree < 0)
            throw SchemaViolation("negative degree on basis element '" + b.name + "'");
    }
}

inline void validate_grading(const std::vector<BasisElement>& basis, const PairingMatrix& pairing,
                             const TripleTensor& triples) {
    if (!triples.top_degree()) return;
    const Rational& top = *triples.top_degree();
    for (size_t i = 0; i < basis.size(); ++i)
        for (size_t j = i; j < basis.size(); ++j)
            if (!pairing.at(i, j).is_zero() && basis[i].degree + basis[j].degree != top)
                throw GradingViolation("pairing <" + basis[i].name + ", " + basis[j].name +
                                       "> nonzero off the top degree");
    for (const auto& [key, v] : triples.entries()) {
        if (v.is_zero()) continue;
        Rational sum = basis[key[0]].degree + basis[key[1]].degree + basis[key[2]].degree;
        if (sum != top)
            throw GradingViolation("triple (" + basis[key[0]].name + ", " + basis[key[1]].name +
                                   ", " + basis[key[2]].name + ") nonzero off the top degree");
    }
}

inline std::optional<size_t> detect_unit(const std::vector<BasisElement>& basis) {
    std::optional<size_t> unit;
    for (size_t i = 0; i < basis.size(); ++i) {
        if (basis[i].degree == 0) {
            if (unit) return std::nullopt; // ambiguous
            unit = i;
        }
    }
    return unit;
}

} // namespace detail

/// Build the ring from its pairing and triple tensor: for each ordered
/// even pair (i,j) the product coefficients c solve pairing * c = t where
/// t_k = triples(i,j,k). This is the defining relation
/// <a cup b, c> = <a, b, c> read as a linear system.
inline GradedAlgebra build_algebra(std::vector<BasisElement> basis, PairingMatrix pairing,
                                   TripleTensor triples) {
    detail::validate_basis(basis);
    const size_t n = basis.size();
    if (pairing.size() != n || triples.dim() != n)
        throw ShapeMismatch("basis, pairing and triples must agree in dimension");
    detail::validate_grading(basis, pairing, triples);

    auto inv = invert(pairing.mat());
    if (!inv)
        throw DegeneratePairing("pairing matrix is not invertible");

    std::map<std::pair<size_t, size_t>, std::vector<GaussRational>> constants;
    for (size_t i = 0; i < n; ++i) {
        if (!is_even_integer(basis[i].degree)) continue;
        for (size_t j = 0; j < n; ++j) {
            if (!is_even_integer(basis[j].degree)) continue;
            std::vector<GaussRational> rhs(n);
            for (size_t k = 0; k < n; ++k) rhs[k] = triples.value(i, j, k);
            constants[{i, j}] = mat_vec(*inv, rhs);
        }
    }
    auto unit = detail::detect_unit(basis);
    return GradedAlgebra(std::move(basis), std::move(constants), unit, std::move(pairing),
                         std::move(triples));
}

/// Degree additivity, commutativity and the unit law on the derived
/// product. Violations are report entries, not errors.
inline StructureReport check_structure(const GradedAlgebra& alg) {
    StructureReport report;
    const auto& basis = alg.basis();
    for (size_t i = 0; i < alg.dim(); ++i) {
        if (!alg.even(i)) continue;
        for (size_t j = i; j < alg.dim(); ++j) {
            if (!alg.even(j)) continue;
            const auto& pij = alg.product(i, j);
            const auto& pji = alg.product(j, i);
            if (pij != pji)
                report.violations.push_back({CheckKind::commutativity,
                                             {basis[i].name, basis[j].name},
                                             basis[i].name + " * " + basis[j].name +
                                                 " differs from " + basis[j].name + " * " +
                                                 basis[i].name});
            for (size_t k = 0; k < alg.dim(); ++k) {
                if (pij[k].is_zero()) continue;
                if (basis[k].degree != basis[i].degree + basis[j].degree)
                    report.violations.push_back(
                        {CheckKind::grading,
                         {basis[i].name, basis[j].name, basis[k].name},
                         "product " + basis[i].name + " * " + basis[j].name +
                             " has a component of wrong degree on " + basis[k].name});
            }
        }
    }
    if (alg.unit()) {
        size_t u = *alg.unit();
        for (size_t j = 0; j < alg.dim(); ++j) {
            if (!alg.even(j)) continue;
            const auto& p = alg.product(u, j);
            for (size_t k = 0; k < alg.dim(); ++k) {
                GaussRational expect = (k == j) ? GaussRational(1) : GaussRational(0);
                if (p[k] != expect) {
                    report.violations.push_back({CheckKind::unit_law,
                                                 {basis[u].name, basis[j].name},
                                                 "unit times " + basis[j].name +
                                                     " is not " + basis[j].name});
                    break;
                }
            }
        }
    }
    return report;
}

/// Lists every ordered basis triple with (a*b)*c != a*(b*c).
inline StructureReport check_associativity(const GradedAlgebra& alg) {
    StructureReport report;
    const auto& basis = alg.basis();
    for (size_t a = 0; a < alg.dim(); ++a) {
        if (!alg.even(a)) continue;
        std::vector<GaussRational> ea(alg.dim(), GaussRational(0));
        ea[a] = GaussRational(1);
        for (size_t b = 0; b < alg.dim(); ++b) {
            if (!alg.even(b)) continue;
            std::vector<GaussRational> eb(alg.dim(), GaussRational(0));
            eb[b] = GaussRational(1);
            for (size_t c = 0; c < alg.dim(); ++c) {
                if (!alg.even(c)) continue;
                std::vector<GaussRational> ec(alg.dim(), GaussRational(0));
                ec[c] = GaussRational(1);
                std::vector<GaussRational> ab = alg.product(a, b);
                std::vector<GaussRational> bc = alg.product(b, c);
                auto lhs = alg.product(ab, ec);
                auto rhs = alg.product(ea, bc);
                if (lhs != rhs)
                    report.violations.push_back(
                        {CheckKind::associativity,
                         {basis[a].name, basis[b].name, basis[c].name},
                         "(" + basis[a].name + " * " + basis[b].name + ") * " + basis[c].name +
                             " != " + basis[a].name + " * (" + basis[b].name + " * " +
                             basis[c].name + ")"});
            }
        }
    }
    return report;
}

/// Restriction of the triple tensor to a degree-2 sub-basis.
inline CubicForm cubic_form(const std::vector<BasisElement>& basis, const TripleTensor& triples,
                            const std::vector<std::string>& h2_names) {
    CubicForm form;
    std::vector<size_t> idx;
    for (const auto& name : h2_names) {
        auto it = std::find_if(basis.begin(), basis.end(),
                               [&](const BasisElement& b) { return b.name == name; });
        if (it == basis.end())
            throw UnresolvedSymbol("basis element '" + name + "'");
        if (it->degree != 2)
            throw GradingViolation("cubic form restricted to '" + name + "' of degree " +
                                   crepant::to_string(it->degree));
        idx.push_back(static_cast<size_t>(it - basis.begin()));
        form.names.push_back(name);
    }
    for (size_t a = 0; a < idx.size(); ++a)
        for (size_t b = a; b < idx.size(); ++b)
            for (size_t c = b; c < idx.size(); ++c)
                form.set(a, b, c, triples.value(idx[a], idx[b], idx[c]));
    return form;
}

/// Exact inertia of a real pairing.
inline Signature pairing_signature(const PairingMatrix& pairing) {
    Mat<Rational> real(pairing.size(), pairing.size());
    for (size_t i = 0; i < pairing.size(); ++i)
        for (size_t j = 0; j < pairing.size(); ++j) {
            if (pairing.at(i, j).im != 0)
                throw NonRealEntry("pairing entry at (" + std::to_string(i) + "," +
                                   std::to_string(j) + ") has an imaginary part");
            real(i, j) = pairing.at(i, j).re;
        }
    return signature_of_symmetric(std::move(real));
}

/// Promote a cubic form on H^2 to the graded Frobenius algebra
/// 1 + H^2 + H^4 + top with <1, vol> = 1 and <x_i, x_j*> = delta. The
/// products of the promoted ring are exactly the ones the form determines,
/// which is what makes associativity checks on noncompact fixtures
/// meaningful.
inline GradedAlgebra frobenius_algebra(const CubicForm& form) {
    std::set<std::string> taken(form.names.begin(), form.names.end());
    auto fresh = [&taken](std::string base) {
        while (taken.count(base)) base += "'";
        taken.insert(base);
        return base;
    };
    std::vector<BasisElement> basis;
    basis.push_back({fresh("1"), Rational(0), std::nullopt});
    for (const auto& n : form.names) basis.push_back({n, Rational(2), std::nullopt});
    std::vector<std::string> duals;
    for (const auto& n : form.names) {
        duals.push_back(fresh(n + "*"));
        basis.push_back({duals.back(), Rational(4), std::nullopt});
    }
    basis.push_back({fresh("vol"), Rational(6), std::nullopt});

    const size_t dim = basis.size();
    const size_t m = form.dim();
    const size_t unit = 0, top = dim - 1;
    auto cls = [&](size_t a) { return 1 + a; };
    auto dual = [&](size_t a) { return 1 + m + a; };

    Mat<GaussRational> p(dim, dim);
    p(unit, top) = p(top, unit) = GaussRational(1);
    for (size_t a = 0; a < m; ++a) p(cls(a), dual(a)) = p(dual(a), cls(a)) = GaussRational(1);

    TripleTensor t(dim, Rational(6));
    t.set(unit, unit, top, GaussRational(1));
    for (size_t a = 0; a < m; ++a) t.set(unit, cls(a), dual(a), GaussRational(1));
    for (size_t a = 0; a < m; ++a)
        for (size_t b = a; b < m; ++b)
            for (size_t c = b; c < m; ++c) t.set(cls(a), cls(b), cls(c), form.value(a, b, c));

    return build_algebra(std::move(basis), PairingMatrix(std::move(p)), std::move(t));
}

} // namespace crepant
