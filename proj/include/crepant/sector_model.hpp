#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "crepant/graded_algebra.hpp"
#include "crepant/maps.hpp"

namespace crepant {

/// Finite group given by an explicit multiplication table:
/// table[a][b] = index of a*b. Validated as a group law on load.
struct GroupSpec {
    size_t order = 0;
    std::vector<std::vector<size_t>> table;
    std::vector<std::string> names;

    size_t mul(size_t a, size_t b) const { return table[a][b]; }

    size_t identity() const {
        for (size_t e = 0; e < order; ++e) {
            bool ok = true;
            for (size_t x = 0; x < order && ok; ++x)
                ok = mul(e, x) == x && mul(x, e) == x;
            if (ok) return e;
        }
        throw InvalidGroupTable("no identity element");
    }

    size_t inverse(size_t x) const {
        size_t e = identity();
        for (size_t y = 0; y < order; ++y)
            if (mul(x, y) == e) return y;
        throw InvalidGroupTable("element '" + names[x] + "' has no inverse");
    }

    void validate() const {
        if (order == 0 || table.size() != order)
            throw InvalidGroupTable("table size does not match the order");
        for (const auto& row : table) {
            if (row.size() != order) throw InvalidGroupTable("ragged multiplication table");
            for (size_t v : row)
                if (v >= order) throw InvalidGroupTable("table entry out of range");
        }
        if (names.size() != order) throw InvalidGroupTable("element name count mismatch");
        identity(); // throws when absent
        for (size_t x = 0; x < order; ++x) inverse(x);
        for (size_t a = 0; a < order; ++a)
            for (size_t b = 0; b < order; ++b)
                for (size_t c = 0; c < order; ++c)
                    if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                        throw InvalidGroupTable("multiplication is not associative at (" +
                                                names[a] + ", " + names[b] + ", " + names[c] + ")");
    }
};

/// Conjugacy class, named after its smallest representative.
struct ConjClass {
    size_t representative;
    std::vector<size_t> elements;
    size_t centralizer_order;
    std::string name;
};

inline std::vector<ConjClass> conjugacy_classes(const GroupSpec& g) {
    g.validate();
    std::vector<ConjClass> classes;
    std::vector<bool> seen(g.order, false);
    for (size_t x = 0; x < g.order; ++x) {
        if (seen[x]) continue;
        std::set<size_t> orbit;
        for (size_t h = 0; h < g.order; ++h) orbit.insert(g.mul(g.mul(h, x), g.inverse(h)));
        ConjClass cls;
        cls.representative = *orbit.begin();
        cls.elements.assign(orbit.begin(), orbit.end());
        size_t centralizer = 0;
        for (size_t h = 0; h < g.order; ++h)
            if (g.mul(h, x) == g.mul(x, h)) ++centralizer;
        cls.centralizer_order = centralizer;
        cls.name = g.names[cls.representative];
        for (size_t e : orbit) seen[e] = true;
        classes.push_back(std::move(cls));
    }
    return classes;
}

inline size_t class_of(const std::vector<ConjClass>& classes, size_t element) {
    for (size_t c = 0; c < classes.size(); ++c)
        for (size_t e : classes[c].elements)
            if (e == element) return c;
    throw InvalidGroupTable("element not covered by the conjugacy classes");
}

/// Class of the inverse of (any representative of) a class; well defined
/// because inversion maps conjugacy classes to conjugacy classes.
inline size_t inverse_class(const GroupSpec& g, const std::vector<ConjClass>& classes, size_t cls) {
    return class_of(classes, g.inverse(classes[cls].representative));
}

/// Degree-shifting number of a local action with the given eigenvalue
/// exponents a_j/m in [0,1): their plain sum.
inline Rational age(const std::vector<Rational>& exponents) {
    Rational sum(0);
    for (const auto& e : exponents) {
        if (e < 0 || e >= 1)
            throw ExponentOutOfRange("eigenvalue exponent " + to_string(e) + " outside [0,1)");
        sum += e;
    }
    return sum;
}

/// Degree-shifting number of a permutation of cycle type (k_1,...,k_l)
/// acting on (C^d)^n: (d/2) * sum (k_i - 1).
inline Rational perm_degree_shift(const std::vector<size_t>& cycle_type, size_t fiber_dim) {
    if (cycle_type.empty())
        throw InvalidPartition("empty cycle type");
    if (fiber_dim == 0)
        throw InvalidPartition("fiber dimension must be at least 1");
    size_t n = 0;
    for (size_t part : cycle_type) {
        if (part == 0) throw InvalidPartition("cycle of length 0");
        n += part;
    }
    return Rational(Int(fiber_dim) * Int(n - cycle_type.size()), 2);
}

/// Sign-twist exponent epsilon(h1,h2) = (iota(h1)+iota(h2)-iota(h1 h2))/2.
inline Rational epsilon_sign(const Rational& iota1, const Rational& iota2,
                             const Rational& iota12) {
    return (iota1 + iota2 - iota12) / 2;
}

/// Basis element of a sector algebra: a graded class living on the twisted
/// sector of one conjugacy class.
struct SectorBasisElement {
    std::string name;
    Rational degree;
    size_t class_id;
};

/// Sector-indexed presentation of an orbifold-style product: the
/// (c1,c2)-component holds the partial structure constants
/// (alpha cup beta)_(h1,h2) for h1 in class c1, h2 in class c2. Components
/// land in the class of the product of representatives, and their sum over
/// all sector pairs is the total product.
class SectorAlgebra {
public:
    SectorAlgebra(GroupSpec group, std::vector<Rational> iota,
                  std::vector<SectorBasisElement> basis,
                  std::map<std::pair<size_t, size_t>,
                           std::map<std::pair<size_t, size_t>, std::vector<GaussRational>>>
                      components)
        : group_(std::move(group)),
          classes_(conjugacy_classes(group_)),
          iota_(std::move(iota)),
          basis_(std::move(basis)),
          components_(std::move(components)) {
        if (iota_.size() != classes_.size())
            throw SectorMismatch("iota table size does not match the class count");
        for (size_t c = 0; c < classes_.size(); ++c) {
            if (iota_[c] < 0)
                throw SectorMismatch("negative degree-shifting number on class " +
                                     classes_[c].name);
            if (classes_[c].representative == group_.identity() && iota_[c] != 0)
                throw SectorMismatch("identity class must have degree-shifting number 0");
        }
        for (const auto& b : basis_)
            if (b.class_id >= classes_.size())
                throw SectorMismatch("basis element '" + b.name + "' has an unknown sector");
        for (const auto& [sectors, table] : components_) {
            size_t out_class = product_class(sectors.first, sectors.second);
            for (const auto& [pair, coeffs] : table) {
                if (basis_[pair.first].class_id != sectors.first ||
                    basis_[pair.second].class_id != sectors.second)
                    throw SectorMismatch("component (" + classes_[sectors.first].name + ", " +
                                         classes_[sectors.second].name +
                                         ") indexes classes outside those sectors");
                for (size_t k = 0; k < coeffs.size(); ++k)
                    if (!coeffs[k].is_zero() && basis_[k].class_id != out_class)
                        throw SectorMismatch("component lands outside the sector of the product");
            }
        }
    }

    const GroupSpec& group() const { return group_; }
    const std::vector<ConjClass>& classes() const { return classes_; }
    const std::vector<Rational>& iota() const { return iota_; }
    const std::vector<SectorBasisElement>& basis() const { return basis_; }
    const auto& components() const { return components_; }

    size_t product_class(size_t c1, size_t c2) const {
        return class_of(classes_,
                        group_.mul(classes_[c1].representative, classes_[c2].representative));
    }

    /// Total product (the sum over sector pairs) as a plain graded algebra.
    GradedAlgebra total_algebra() const {
        std::vector<BasisElement> basis;
        for (const auto& b : basis_)
            basis.push_back({b.name, b.degree, classes_[b.class_id].name});
        std::map<std::pair<size_t, size_t>, std::vector<GaussRational>> constants;
        for (const auto& [sectors, table] : components_)
            for (const auto& [pair, coeffs] : table) {
                auto& slot = constants[pair];
                if (slot.empty()) slot.assign(basis_.size(), GaussRational(0));
                for (size_t k = 0; k < coeffs.size(); ++k) slot[k] += coeffs[k];
            }
        return GradedAlgebra(std::move(basis), std::move(constants), unit_index());
    }

    std::optional<size_t> unit_index() const {
        std::optional<size_t> unit;
        for (size_t i = 0; i < basis_.size(); ++i)
            if (basis_[i].degree == 0) {
                if (unit) return std::nullopt;
                unit = i;
            }
        return unit;
    }

private:
    GroupSpec group_;
    std::vector<ConjClass> classes_;
    std::vector<Rational> iota_;
    std::vector<SectorBasisElement> basis_;
    std::map<std::pair<size_t, size_t>,
             std::map<std::pair<size_t, size_t>, std::vector<GaussRational>>>
        components_;
};

/// Scales every (h1,h2)-component by (-1)^epsilon(h1,h2). The sign
/// exponents must be integers; a fractional epsilon would leave Q(i).
inline SectorAlgebra signed_product(const SectorAlgebra& sa) {
    auto components = sa.components();
    for (auto& [sectors, table] : components) {
        Rational eps = epsilon_sign(sa.iota()[sectors.first], sa.iota()[sectors.second],
                                    sa.iota()[sa.product_class(sectors.first, sectors.second)]);
        if (!is_integer(eps))
            throw NonIntegerSignExponent("epsilon(" + sa.classes()[sectors.first].name + ", " +
                                         sa.classes()[sectors.second].name + ") = " +
                                         to_string(eps));
        if (numerator(eps) % 2 == 0) continue;
        for (auto& [pair, coeffs] : table)
            for (auto& c : coeffs) c = -c;
    }
    return SectorAlgebra(sa.group(), sa.iota(),
                         std::vector<SectorBasisElement>(sa.basis()), std::move(components));
}

/// The Qin-Wang rescaling alpha -> (-1)^{iota(g)/2} alpha = i^{iota(g)} alpha
/// on the sector of g. Composed with verify_map it intertwines the signed
/// and unsigned products.
inline DiagonalMap qinwang_map(const SectorAlgebra& sa) {
    std::vector<GaussRational> scalars;
    for (const auto& b : sa.basis()) {
        const Rational& iota = sa.iota()[b.class_id];
        if (!is_integer(iota))
            throw NonIntegerIota("iota(" + sa.classes()[b.class_id].name + ") = " +
                                 to_string(iota));
        scalars.push_back(i_pow(numerator(iota)));
    }
    return DiagonalMap(std::move(scalars));
}

/// Square Q(i) matrix equal to its conjugate transpose.
class HermitianMatrix {
public:
    explicit HermitianMatrix(Mat<GaussRational> m) : m_(std::move(m)) {
        if (m_.rows() != m_.cols())
            throw NotHermitian("matrix is not square");
        for (size_t i = 0; i < m_.rows(); ++i)
            for (size_t j = 0; j < m_.cols(); ++j)
                if (m_(i, j) != conjugate(m_(j, i)))
                    throw NotHermitian("entry (" + std::to_string(i) + "," + std::to_string(j) +
                                       ") is not the conjugate of its transpose");
    }

    size_t size() const { return m_.rows(); }
    const Mat<GaussRational>& mat() const { return m_; }

private:
    Mat<GaussRational> m_;
};

/// Hermitian pairing <<a,b>> = <a, I(b)> from a basis involution I that
/// swaps each sector with its inverse sector. Coefficient conjugation is
/// the identity on basis elements, so at matrix level G[a][b] =
/// pairing(a, I(b)); the hermitian invariant is validated on the result.
inline HermitianMatrix hermitian_gram(const PairingMatrix& pairing,
                                      const std::vector<size_t>& involution,
                                      const std::vector<BasisElement>& basis,
                                      const GroupSpec& group,
                                      const std::vector<ConjClass>& classes) {
    const size_t n = pairing.size();
    if (involution.size() != n || basis.size() != n)
        throw ShapeMismatch("involution/basis size does not match the pairing");
    for (size_t i = 0; i < n; ++i) {
        if (involution[i] >= n || involution[involution[i]] != i)
            throw NotAnInvolution("basis permutation does not square to the identity at '" +
                                  basis[i].name + "'");
    }
    auto class_index_of_name = [&](const std::string& name) -> std::optional<size_t> {
        for (size_t c = 0; c < classes.size(); ++c)
            if (classes[c].name == name) return c;
        return std::nullopt;
    };
    for (size_t i = 0; i < n; ++i) {
        size_t j = involution[i];
        if (basis[i].degree != basis[j].degree)
            throw SectorMismatch("involution does not preserve the degree of '" + basis[i].name +
                                 "'");
        if (basis[i].sector && basis[j].sector) {
            auto ci = class_index_of_name(*basis[i].sector);
            auto cj = class_index_of_name(*basis[j].sector);
            if (!ci || !cj)
                throw SectorMismatch("unknown sector label on '" + basis[i].name + "' or '" +
                                     basis[j].name + "'");
            if (inverse_class(group, classes, *ci) != *cj)
                throw SectorMismatch("involution must send sector (" + *basis[i].sector +
                                     ") to its inverse sector");
        }
    }
    Mat<GaussRational> g(n, n);
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) g(a, b) = pairing.at(a, involution[b]);
    return HermitianMatrix(std::move(g));
}

/// Exact positive-definiteness via leading principal minors; the minors of
/// a hermitian Q(i) matrix are real rationals.
inline bool is_positive_definite(const HermitianMatrix& g) {
    for (size_t k = 1; k <= g.size(); ++k) {
        GaussRational minor = leading_minor(g.mat(), k);
        if (minor.im != 0)
            throw NotHermitian("leading minor " + std::to_string(k) + " is not real");
        if (minor.re <= 0) return false;
    }
    return true;
}

} // namespace crepant
