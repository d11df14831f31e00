#pragma once

#include <array>
#include <complex>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "crepant/graded_algebra.hpp"
#include "crepant/maps.hpp"
#include "crepant/smith.hpp"

namespace crepant {

enum class VerifyMode { products, products_and_pairing };

enum class IsoVerdict { verified, refuted, solved, no_diagonal_solution, needs_field_extension };

inline const char* to_string(IsoVerdict v) {
    switch (v) {
        case IsoVerdict::verified: return "verified";
        case IsoVerdict::refuted: return "refuted";
        case IsoVerdict::solved: return "solved";
        case IsoVerdict::no_diagonal_solution: return "no-diagonal-solution";
        default: return "needs-field-extension";
    }
}

/// A concretely failing constraint: the basis triple plus the two exact
/// values that disagree (lhs through the map, rhs the expected value).
struct Obstruction {
    std::array<std::string, 3> where;
    GaussRational lhs;
    GaussRational rhs;
};

/// Floating-point fallback witness. Non-certifying by construction; only
/// attached when the exact system is consistent but a required root lies
/// outside Q(i).
struct NumericWitness {
    std::vector<std::complex<double>> scalars;
    double residual = 0.0;
};

struct IsoReport {
    IsoVerdict verdict = IsoVerdict::refuted;
    std::optional<std::vector<GaussRational>> witness; // diagonal scalars
    std::optional<Mat<GaussRational>> witness_matrix;  // general linear witness
    std::optional<Obstruction> obstruction;
    std::optional<NumericWitness> numeric;
    std::vector<std::vector<Int>> kernel; // multiplicative degrees of freedom of a solved system
    std::string note;
};

namespace detail {

inline std::complex<double> to_complex(const GaussRational& z) {
    return {static_cast<double>(z.re), static_cast<double>(z.im)};
}

inline void require_same_shape(size_t a, size_t b) {
    if (a != b)
        throw ShapeMismatch("source and target have different dimensions (" + std::to_string(a) +
                            " vs " + std::to_string(b) + ")");
}

inline void require_invertible(const Mat<GaussRational>& m) {
    if (determinant(m) == GaussRational(0))
        throw SingularMap("candidate map matrix is singular");
}

/// Degree blocks: every nonzero entry of the map must connect classes of
/// equal degree.
inline void require_degree_preserving(const Mat<GaussRational>& m,
                                      const std::vector<BasisElement>& source,
                                      const std::vector<BasisElement>& target) {
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j)
            if (!m(i, j).is_zero() && target[i].degree != source[j].degree)
                throw ShapeMismatch("map sends '" + source[j].name + "' (degree " +
                                    crepant::to_string(source[j].degree) + ") onto '" +
                                    target[i].name + "' (degree " +
                                    crepant::to_string(target[i].degree) + ")");
}

} // namespace detail

// ---------------------------------------------------------------------------
// verify_map
// ---------------------------------------------------------------------------

/// Checks F_B(m a, m b, m c) = F_A(a, b, c) on every basis triple.
inline IsoReport verify_map(const CubicForm& a, const CubicForm& b, const LinearMap& m,
                            VerifyMode mode = VerifyMode::products) {
    if (mode != VerifyMode::products)
        throw ShapeMismatch("cubic forms carry no pairing to verify");
    detail::require_same_shape(a.dim(), b.dim());
    if (m.size() != a.dim())
        throw ShapeMismatch("map dimension does not match the forms");
    detail::require_invertible(m.matrix());

    const size_t n = a.dim();
    for (size_t x = 0; x < n; ++x)
        for (size_t y = x; y < n; ++y)
            for (size_t z = y; z < n; ++z) {
                GaussRational lhs(0);
                for (size_t p = 0; p < n; ++p) {
                    if (m.matrix()(p, x).is_zero()) continue;
                    for (size_t q = 0; q < n; ++q) {
                        if (m.matrix()(q, y).is_zero()) continue;
                        for (size_t r = 0; r < n; ++r) {
                            if (m.matrix()(r, z).is_zero()) continue;
                            lhs += m.matrix()(p, x) * m.matrix()(q, y) * m.matrix()(r, z) *
                                   b.value(p, q, r);
                        }
                    }
                }
                GaussRational rhs = a.value(x, y, z);
                if (lhs != rhs) {
                    IsoReport rep;
                    rep.verdict = IsoVerdict::refuted;
                    rep.obstruction = Obstruction{{a.names[x], a.names[y], a.names[z]}, lhs, rhs};
                    rep.note = "form value mismatch at (" + a.names[x] + ", " + a.names[y] + ", " +
                               a.names[z] + "): " + crepant::to_string(lhs) + " != " +
                               crepant::to_string(rhs);
                    return rep;
                }
            }
    IsoReport rep;
    rep.verdict = IsoVerdict::verified;
    rep.witness_matrix = m.matrix();
    return rep;
}

inline IsoReport verify_map(const CubicForm& a, const CubicForm& b, const DiagonalMap& m,
                            VerifyMode mode = VerifyMode::products) {
    IsoReport rep = verify_map(a, b, LinearMap(m.matrix()), mode);
    if (rep.verdict == IsoVerdict::verified) {
        rep.witness = m.scalars();
        rep.witness_matrix.reset();
    }
    return rep;
}

/// Checks m(x cup y) = m(x) cup' m(y) on all even basis pairs, m(1) = 1',
/// and optionally pairing preservation.
inline IsoReport verify_map(const GradedAlgebra& a, const GradedAlgebra& b, const LinearMap& m,
                            VerifyMode mode = VerifyMode::products) {
    detail::require_same_shape(a.dim(), b.dim());
    if (m.size() != a.dim())
        throw ShapeMismatch("map dimension does not match the algebras");
    detail::require_degree_preserving(m.matrix(), a.basis(), b.basis());
    detail::require_invertible(m.matrix());

    const size_t n = a.dim();
    auto mismatch = [&](const std::string& x, const std::string& y,
                        const std::vector<GaussRational>& lhs,
                        const std::vector<GaussRational>& rhs) {
        IsoReport rep;
        rep.verdict = IsoVerdict::refuted;
        for (size_t k = 0; k < n; ++k)
            if (lhs[k] != rhs[k]) {
                rep.obstruction = Obstruction{{x, y, b.basis()[k].name}, lhs[k], rhs[k]};
                break;
            }
        rep.note = "product mismatch at (" + x + ", " + y + ")";
        return rep;
    };

    if (a.unit() && b.unit()) {
        std::vector<GaussRational> img = m.image(*a.unit());
        std::vector<GaussRational> expect(n, GaussRational(0));
        expect[*b.unit()] = GaussRational(1);
        if (img != expect) return mismatch(a.basis()[*a.unit()].name, "1", img, expect);
    }

    for (size_t x = 0; x < n; ++x) {
        if (!a.even(x)) continue;
        for (size_t y = x; y < n; ++y) {
            if (!a.even(y)) continue;
            std::vector<GaussRational> lhs = m.apply(a.product(x, y));
            std::vector<GaussRational> rhs = b.product(m.image(x), m.image(y));
            if (lhs != rhs) return mismatch(a.basis()[x].name, a.basis()[y].name, lhs, rhs);
        }
    }

    if (mode == VerifyMode::products_and_pairing) {
        if (!a.pairing() || !b.pairing())
            throw ShapeMismatch("pairing verification requested but a pairing is missing");
        for (size_t x = 0; x < n; ++x)
            for (size_t y = x; y < n; ++y) {
                GaussRational lhs(0);
                std::vector<GaussRational> mx = m.image(x), my = m.image(y);
                for (size_t p = 0; p < n; ++p)
                    for (size_t q = 0; q < n; ++q)
                        if (!mx[p].is_zero() && !my[q].is_zero())
                            lhs += mx[p] * my[q] * b.pairing()->at(p, q);
                GaussRational rhs = a.pairing()->at(x, y);
                if (lhs != rhs) {
                    IsoReport rep;
                    rep.verdict = IsoVerdict::refuted;
                    rep.obstruction =
                        Obstruction{{a.basis()[x].name, a.basis()[y].name, "<pairing>"}, lhs, rhs};
                    rep.note = "pairing mismatch at (" + a.basis()[x].name + ", " +
                               a.basis()[y].name + ")";
                    return rep;
                }
            }
    }

    IsoReport rep;
    rep.verdict = IsoVerdict::verified;
    rep.witness_matrix = m.matrix();
    return rep;
}

inline IsoReport verify_map(const GradedAlgebra& a, const GradedAlgebra& b, const DiagonalMap& m,
                            VerifyMode mode = VerifyMode::products) {
    IsoReport rep = verify_map(a, b, LinearMap(m.matrix()), mode);
    if (rep.verdict == IsoVerdict::verified) {
        rep.witness = m.scalars();
        rep.witness_matrix.reset();
    }
    return rep;
}

// ---------------------------------------------------------------------------
// solve_diagonal
// ---------------------------------------------------------------------------

namespace detail {

struct MulConstraint {
    std::vector<Int> exponents;
    GaussRational rhs; // nonzero
    std::array<std::string, 3> where;
};

enum class MulStatus { solved, inconsistent, needs_root };

struct MulSolution {
    MulStatus status = MulStatus::solved;
    std::vector<GaussRational> values;
    size_t context_row = 0; // a constraint involved in an inconsistency
    std::vector<std::vector<Int>> kernel;
    std::vector<std::complex<double>> numeric;
    double residual = 0.0;
};

inline GaussRational pow_by(const GaussRational& z, const Int& e) { return pow(z, e); }

/// Solve lambda^M = r over the units of Q(i) via Smith normal form
/// U M V = D: with nu = V^{-1}-coordinates the system becomes
/// nu_i^{d_i} = (r^U)_i. Rows of U beyond the rank are left-kernel vectors
/// of M, and their transformed right-hand sides must equal 1 for the
/// system to be consistent. Free coordinates are set to 1, which makes the
/// particular solution a deterministic function of constraint order.
inline MulSolution solve_multiplicative(size_t nvars, const std::vector<MulConstraint>& cons) {
    MulSolution sol;
    const size_t m = cons.size();
    if (m == 0) {
        sol.values.assign(nvars, GaussRational(1));
        for (size_t k = 0; k < nvars; ++k) {
            std::vector<Int> basis_vec(nvars, 0);
            basis_vec[k] = 1;
            sol.kernel.push_back(std::move(basis_vec));
        }
        return sol;
    }

    Mat<Int> mat(m, nvars);
    for (size_t t = 0; t < m; ++t)
        for (size_t j = 0; j < nvars; ++j) mat(t, j) = cons[t].exponents[j];
    SmithResult snf = smith_normal_form(mat);

    auto transformed_rhs = [&](size_t i) {
        GaussRational s(1);
        for (size_t t = 0; t < m; ++t)
            if (snf.u(i, t) != 0) s *= pow_by(cons[t].rhs, snf.u(i, t));
        return s;
    };

    // consistency along the left kernel
    for (size_t i = snf.rank; i < m; ++i) {
        if (transformed_rhs(i) != GaussRational(1)) {
            sol.status = MulStatus::inconsistent;
            sol.context_row = 0;
            for (size_t t = 0; t < m; ++t)
                if (snf.u(i, t) != 0) {
                    sol.context_row = t;
                    break;
                }
            return sol;
        }
    }

    // roots for the pivot coordinates
    std::vector<GaussRational> nu(nvars, GaussRational(1));
    bool root_missing = false;
    for (size_t i = 0; i < snf.rank; ++i) {
        GaussRational s = transformed_rhs(i);
        Int d = snf.d(i, i);
        std::optional<GaussRational> root;
        if (d <= 64) root = kth_root_gauss(s, static_cast<unsigned>(d));
        if (!root) {
            root_missing = true;
            break;
        }
        nu[i] = *root;
    }

    // kernel of M = columns of V past the rank
    for (size_t k = snf.rank; k < nvars; ++k) {
        std::vector<Int> basis_vec(nvars);
        for (size_t j = 0; j < nvars; ++j) basis_vec[j] = snf.v(j, k);
        sol.kernel.push_back(std::move(basis_vec));
    }

    if (root_missing) {
        sol.status = MulStatus::needs_root;
        // numeric fallback through the same decomposition
        std::vector<std::complex<double>> nu_c(nvars, {1.0, 0.0});
        for (size_t i = 0; i < snf.rank; ++i) {
            std::complex<double> s{1.0, 0.0};
            for (size_t t = 0; t < m; ++t)
                if (snf.u(i, t) != 0)
                    s *= std::pow(to_complex(cons[t].rhs),
                                  std::complex<double>(static_cast<double>(snf.u(i, t)), 0.0));
            nu_c[i] = std::pow(s, 1.0 / static_cast<double>(snf.d(i, i)));
        }
        sol.numeric.assign(nvars, {1.0, 0.0});
        for (size_t j = 0; j < nvars; ++j) {
            std::complex<double> v{1.0, 0.0};
            for (size_t k = 0; k < nvars; ++k)
                if (snf.v(j, k) != 0)
                    v *= std::pow(nu_c[k],
                                  std::complex<double>(static_cast<double>(snf.v(j, k)), 0.0));
            sol.numeric[j] = v;
        }
        double residual = 0.0;
        for (const auto& c : cons) {
            std::complex<double> lhs{1.0, 0.0};
            for (size_t j = 0; j < nvars; ++j)
                if (c.exponents[j] != 0)
                    lhs *= std::pow(sol.numeric[j],
                                    std::complex<double>(static_cast<double>(c.exponents[j]), 0.0));
            residual = std::max(residual, std::abs(lhs - to_complex(c.rhs)));
        }
        sol.residual = residual;
        return sol;
    }

    sol.values.assign(nvars, GaussRational(1));
    for (size_t j = 0; j < nvars; ++j) {
        GaussRational v(1);
        for (size_t k = 0; k < nvars; ++k)
            if (snf.v(j, k) != 0) v *= pow_by(nu[k], snf.v(j, k));
        sol.values[j] = v;
    }
    return sol;
}

/// Shared zero-pattern + constraint assembly for symmetric tensors.
/// Returns nullopt and fills `refutation` when the zero patterns disagree.
template <typename ValueA, typename ValueB>
std::optional<std::vector<MulConstraint>> tensor_constraints(
    const std::set<std::array<size_t, 3>>& support, ValueA value_a, ValueB value_b,
    const std::vector<std::string>& names, size_t nvars, IsoReport& refutation) {
    std::vector<MulConstraint> cons;
    for (const auto& key : support) {
        GaussRational va = value_a(key), vb = value_b(key);
        if (va.is_zero() && vb.is_zero()) continue;
        if (va.is_zero() != vb.is_zero()) {
            refutation.verdict = IsoVerdict::refuted;
            refutation.obstruction =
                Obstruction{{names[key[0]], names[key[1]], names[key[2]]}, vb, va};
            refutation.note = "zero-pattern mismatch at (" + names[key[0]] + ", " + names[key[1]] +
                              ", " + names[key[2]] + "): " + crepant::to_string(vb) +
                              " vs " + crepant::to_string(va);
            return std::nullopt;
        }
        MulConstraint c;
        c.exponents.assign(nvars, 0);
        for (size_t idx : key) c.exponents[idx] += 1;
        c.rhs = va / vb;
        c.where = {names[key[0]], names[key[1]], names[key[2]]};
        cons.push_back(std::move(c));
    }
    return cons;
}

inline void add_pin_constraints(std::vector<MulConstraint>& cons, const std::vector<size_t>& pinned,
                                const std::vector<std::string>& names, size_t nvars) {
    for (size_t p : pinned) {
        MulConstraint c;
        c.exponents.assign(nvars, 0);
        c.exponents.at(p) = 1;
        c.rhs = GaussRational(1);
        c.where = {names[p], "<pinned>", "<pinned>"};
        cons.push_back(std::move(c));
    }
}

template <typename Reverify>
IsoReport finish_solve(size_t nvars, const std::vector<MulConstraint>& cons,
                       Reverify reverify) {
    MulSolution sol = solve_multiplicative(nvars, cons);
    IsoReport rep;
    rep.verdict = IsoVerdict::solved;
    switch (sol.status) {
        case MulStatus::inconsistent: {
            rep.verdict = IsoVerdict::no_diagonal_solution;
            const auto& w = cons[sol.context_row].where;
            rep.note = "the multiplicative constraint system is inconsistent (a left-kernel "
                       "combination involving (" +
                       w[0] + ", " + w[1] + ", " + w[2] + ") multiplies to a value other than 1)";
            return rep;
        }
        case MulStatus::needs_root: {
            rep.verdict = IsoVerdict::needs_field_extension;
            rep.numeric = NumericWitness{sol.numeric, sol.residual};
            rep.kernel = sol.kernel;
            rep.note = "a required root does not lie in Q(i); the attached floating-point "
                       "witness is non-certifying";
            return rep;
        }
        case MulStatus::solved:
            break;
    }
    // mandatory exact re-verification of the witness
    IsoReport check = reverify(sol.values);
    if (check.verdict != IsoVerdict::verified)
        throw std::logic_error("solver produced a witness that fails re-verification");
    rep.witness = sol.values;
    rep.kernel = sol.kernel;
    return rep;
}

} // namespace detail

/// Search for a diagonal map m: A -> B with F_B(m.,m.,m.) = F_A. Indices
/// with the same position in the two bases correspond; `pinned` forces
/// those scalars to 1 (used for classes identified by pullback).
inline IsoReport solve_diagonal(const CubicForm& a, const CubicForm& b,
                                const std::vector<size_t>& pinned = {}) {
    detail::require_same_shape(a.dim(), b.dim());
    const size_t n = a.dim();

    std::set<std::array<size_t, 3>> support;
    for (const auto& [key, v] : a.entries) support.insert(key);
    for (const auto& [key, v] : b.entries) support.insert(key);

    IsoReport refutation;
    refutation.verdict = IsoVerdict::refuted;
    auto cons = detail::tensor_constraints(
        support, [&](const std::array<size_t, 3>& k) { return a.value(k[0], k[1], k[2]); },
        [&](const std::array<size_t, 3>& k) { return b.value(k[0], k[1], k[2]); }, a.names, n,
        refutation);
    if (!cons) return refutation;
    detail::add_pin_constraints(*cons, pinned, a.names, n);

    return detail::finish_solve(n, *cons, [&](const std::vector<GaussRational>& w) {
        return verify_map(a, b, DiagonalMap(w), VerifyMode::products);
    });
}

/// Diagonal isomorphism search on structure constants:
/// lambda_a lambda_b lambda_k^{-1} c_B = c_A, plus lambda_unit = 1.
inline IsoReport solve_diagonal(const GradedAlgebra& a, const GradedAlgebra& b,
                                const std::vector<size_t>& pinned = {}) {
    detail::require_same_shape(a.dim(), b.dim());
    const size_t n = a.dim();
    for (size_t i = 0; i < n; ++i)
        if (a.basis()[i].degree != b.basis()[i].degree)
            throw ShapeMismatch("degree mismatch at basis position " + std::to_string(i));

    std::vector<detail::MulConstraint> cons;
    std::vector<std::string> names;
    for (const auto& e : a.basis()) names.push_back(e.name);

    IsoReport refutation;
    refutation.verdict = IsoVerdict::refuted;
    for (size_t x = 0; x < n; ++x) {
        if (!a.even(x)) continue;
        for (size_t y = x; y < n; ++y) {
            if (!a.even(y)) continue;
            const auto& ca = a.product(x, y);
            const auto& cb = b.product(x, y);
            for (size_t k = 0; k < n; ++k) {
                if (ca[k].is_zero() && cb[k].is_zero()) continue;
                if (ca[k].is_zero() != cb[k].is_zero()) {
                    refutation.obstruction =
                        Obstruction{{names[x], names[y], names[k]}, cb[k], ca[k]};
                    refutation.note = "zero-pattern mismatch in the products at (" + names[x] +
                                      ", " + names[y] + ") along " + names[k];
                    return refutation;
                }
                detail::MulConstraint c;
                c.exponents.assign(n, 0);
                c.exponents[x] += 1;
                c.exponents[y] += 1;
                c.exponents[k] -= 1;
                c.rhs = ca[k] / cb[k];
                c.where = {names[x], names[y], names[k]};
                cons.push_back(std::move(c));
            }
        }
    }
    std::vector<size_t> pins = pinned;
    if (a.unit() && b.unit()) {
        if (*a.unit() != *b.unit())
            throw ShapeMismatch("unit positions differ between the algebras");
        pins.push_back(*a.unit());
    }
    detail::add_pin_constraints(cons, pins, names, n);

    return detail::finish_solve(n, cons, [&](const std::vector<GaussRational>& w) {
        return verify_map(a, b, DiagonalMap(w), VerifyMode::products);
    });
}

} // namespace crepant
