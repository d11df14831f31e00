#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "crepant/graded_algebra.hpp"

namespace crepant {

/// Integral basis of extremal rays of the contraction. Nondegeneracy
/// (linear independence of the rays) is an assertion of the data
/// provider, not verified geometry; every correction refuses to run
/// without it.
struct ExtremalRaySet {
    std::vector<std::string> names;
    bool nondegenerate = false;

    size_t count() const { return names.size(); }

    void validate() const {
        if (names.empty())
            throw SchemaViolation("extremal ray set must contain at least one ray");
        std::set<std::string> seen;
        for (const auto& n : names)
            if (!seen.insert(n).second)
                throw SchemaViolation("duplicate ray name '" + n + "'");
    }
};

/// One finite term of a GW 3-point series: a multi-degree over the rays
/// with its invariant.
struct GWTerm {
    std::vector<long long> degrees;
    GaussRational value;
};

/// Geometric tail along one ray: sum_{d >= from} value * q_r^d. Constant
/// per-degree coefficients are the only supported family; every series the
/// construction needs has its multiple-cover factors already cancelled.
struct GWTail {
    size_t ray;
    long long from;
    GaussRational value;
};

/// GW q-series of one basis triple: finitely many terms plus single-ray
/// geometric tails.
struct GWSeries {
    std::array<size_t, 3> triple;
    std::vector<GWTerm> terms;
    std::vector<GWTail> tails;

    void validate(size_t ray_count) const {
        std::set<std::vector<long long>> degrees_seen;
        for (const auto& t : terms) {
            if (t.degrees.size() != ray_count)
                throw SchemaViolation("term multi-degree arity does not match the ray count");
            bool all_zero = true;
            for (long long d : t.degrees) {
                if (d < 0) throw SchemaViolation("negative degree in series term");
                if (d != 0) all_zero = false;
            }
            if (all_zero)
                throw SchemaViolation("series term of multi-degree zero (the classical part "
                                      "belongs in the triple tensor)");
            if (!degrees_seen.insert(t.degrees).second)
                throw SchemaViolation("duplicate multi-degree in series terms");
        }
        for (const auto& tail : tails) {
            if (tail.ray >= ray_count)
                throw SchemaViolation("tail ray index out of range");
            if (tail.from < 1)
                throw SchemaViolation("tail start degree must be at least 1");
            for (const auto& t : terms) {
                bool pure = t.degrees[tail.ray] >= tail.from;
                for (size_t r = 0; r < t.degrees.size() && pure; ++r)
                    if (r != tail.ray && t.degrees[r] != 0) pure = false;
                if (pure)
                    throw SchemaViolation("series term overlaps a tail along ray " +
                                          std::to_string(tail.ray));
            }
        }
    }
};

/// Evaluation point: one exact scalar per ray.
struct QPoint {
    std::vector<GaussRational> q;

    static QPoint minus_one(size_t rays) {
        return QPoint{std::vector<GaussRational>(rays, GaussRational(-1))};
    }
};

/// Exact value of the series at q: the finite terms plus the closed form
/// value * q_r^from / (1 - q_r) of each tail. Tails diverge at q_r = 1;
/// that is the divergence that forces the q = -1 evaluation point.
inline GaussRational evaluate_series(const GWSeries& s, const QPoint& q) {
    for (const auto& tail : s.tails)
        if (q.q.at(tail.ray) == GaussRational(1))
            throw PoleAtOne("tail along ray " + std::to_string(tail.ray) +
                            " has a pole at q = 1");
    GaussRational total(0);
    for (const auto& t : s.terms) {
        GaussRational monomial(1);
        for (size_t r = 0; r < t.degrees.size(); ++r)
            if (t.degrees[r] != 0) monomial *= pow(q.q.at(r), t.degrees[r]);
        total += t.value * monomial;
    }
    for (const auto& tail : s.tails) {
        const GaussRational& qr = q.q.at(tail.ray);
        total += tail.value * pow(qr, tail.from) / (GaussRational(1) - qr);
    }
    return total;
}

/// Assemble the quantum-correction triple tensor at q = (-1,...,-1).
/// Multiple series on the same unordered triple accumulate.
inline TripleTensor qc_triple_tensor(const std::vector<GWSeries>& series,
                                     const ExtremalRaySet& rays, size_t dim,
                                     std::optional<Rational> top_degree = std::nullopt) {
    rays.validate();
    if (!rays.nondegenerate)
        throw DegenerateRays("quantum correction is undefined for degenerate extremal rays");
    TripleTensor qc(dim, std::move(top_degree));
    QPoint q = QPoint::minus_one(rays.count());
    for (const auto& s : series) {
        s.validate(rays.count());
        qc.add(s.triple[0], s.triple[1], s.triple[2], evaluate_series(s, q));
    }
    return qc;
}

/// <a,b,c>_pi = <a,b,c> + <a,b,c>_qc, entrywise.
inline TripleTensor corrected_triples(const TripleTensor& classical, const TripleTensor& qc) {
    if (classical.dim() != qc.dim())
        throw BasisMismatch("classical and correction tensors have different dimensions");
    if (classical.top_degree() != qc.top_degree() && qc.top_degree().has_value())
        throw BasisMismatch("classical and correction tensors declare different top degrees");
    TripleTensor out = classical;
    for (const auto& [key, v] : qc.entries()) out.add(key[0], key[1], key[2], v);
    return out;
}

/// The quantum corrected ring H*_pi: the classical pairing with the
/// corrected triples, products derived the usual way.
inline GradedAlgebra corrected_product(const TripleTensor& corrected, PairingMatrix pairing,
                                       std::vector<BasisElement> basis) {
    return build_algebra(std::move(basis), std::move(pairing), corrected);
}

} // namespace crepant
