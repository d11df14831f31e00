#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "crepant/isomorphism.hpp"
#include "crepant/sector_model.hpp"

using namespace crepant;

namespace {

std::mt19937 rng(555777);

GroupSpec z2() { return {2, {{0, 1}, {1, 0}}, {"e", "t"}}; }

GroupSpec z3() { return {3, {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}, {"e", "g", "g2"}}; }

GroupSpec trivial() { return {1, {{0}}, {"e"}}; }

/// S3 with elements e, r, r2 (rotations), s, sr, sr2 (reflections),
/// table built from the permutation representation.
GroupSpec s3() {
    // permutations of {0,1,2}: index -> image list
    std::vector<std::array<int, 3>> perms = {
        {0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
    auto compose = [&](size_t a, size_t b) { // (a after b)
        std::array<int, 3> c{};
        for (int x = 0; x < 3; ++x) c[x] = perms[a][perms[b][x]];
        for (size_t i = 0; i < perms.size(); ++i)
            if (perms[i] == c) return i;
        FAIL("composition fell outside S3");
        return size_t(0);
    };
    GroupSpec g;
    g.order = 6;
    g.names = {"e", "r", "r2", "s0", "s1", "s2"};
    g.table.assign(6, std::vector<size_t>(6));
    for (size_t a = 0; a < 6; ++a)
        for (size_t b = 0; b < 6; ++b) g.table[a][b] = compose(a, b);
    return g;
}

/// Small S2-graded sector algebra: x_e (degree 0), x_t (degree 2, twisted,
/// iota 1), y_e (degree 4); x_t * x_t = c y_e is the only cross-sector
/// product.
SectorAlgebra s2_sector_fixture(const GaussRational& c, const Rational& iota_t = Rational(1)) {
    GroupSpec g = z2();
    std::vector<SectorBasisElement> basis{{"x_e", Rational(0), 0},
                                          {"x_t", Rational(2), 1},
                                          {"y_e", Rational(4), 0}};
    std::map<std::pair<size_t, size_t>, std::map<std::pair<size_t, size_t>, std::vector<GaussRational>>>
        comps;
    auto vec = [](GaussRational a, GaussRational b, GaussRational cc) {
        return std::vector<GaussRational>{a, b, cc};
    };
    comps[{0, 0}][{0, 0}] = vec(1, 0, 0); // x_e x_e = x_e
    comps[{0, 0}][{0, 2}] = vec(0, 0, 1); // x_e y_e = y_e
    comps[{0, 0}][{2, 0}] = vec(0, 0, 1);
    comps[{0, 0}][{2, 2}] = vec(0, 0, 0);
    comps[{0, 1}][{0, 1}] = vec(0, 1, 0); // x_e x_t = x_t
    comps[{1, 0}][{1, 0}] = vec(0, 1, 0);
    comps[{0, 1}][{2, 1}] = vec(0, 0, 0); // y_e x_t = 0
    comps[{1, 0}][{1, 2}] = vec(0, 0, 0);
    comps[{1, 1}][{1, 1}] = vec(0, 0, c); // x_t x_t = c y_e
    return SectorAlgebra(g, {Rational(0), iota_t}, basis, comps);
}

} // namespace

TEST_CASE("conjugacy classes of small groups") {
    auto cz2 = conjugacy_classes(z2());
    REQUIRE(cz2.size() == 2);
    CHECK(cz2[0].elements.size() == 1);
    CHECK(cz2[1].elements.size() == 1);

    auto ct = conjugacy_classes(trivial());
    REQUIRE(ct.size() == 1);

    GroupSpec s = s3();
    auto cs3 = conjugacy_classes(s);
    REQUIRE(cs3.size() == 3);
    std::multiset<size_t> sizes;
    for (const auto& c : cs3) sizes.insert(c.elements.size());
    CHECK(sizes == std::multiset<size_t>{1, 2, 3});

    // brute-force oracle: recompute each orbit over all 36 conjugations
    for (const auto& cls : cs3) {
        std::set<size_t> orbit;
        for (size_t h = 0; h < 6; ++h)
            orbit.insert(s.mul(s.mul(h, cls.representative), s.inverse(h)));
        CHECK(std::set<size_t>(cls.elements.begin(), cls.elements.end()) == orbit);
        CHECK(cls.centralizer_order * cls.elements.size() == 6);
    }

    size_t covered = 0;
    for (const auto& c : cs3) covered += c.elements.size();
    CHECK(covered == 6);
}

TEST_CASE("invalid group tables are rejected") {
    GroupSpec broken{2, {{0, 1}, {1, 1}}, {"e", "t"}}; // t has no inverse row
    CHECK_THROWS_AS(broken.validate(), InvalidGroupTable);
    GroupSpec ragged{2, {{0, 1}}, {"e", "t"}};
    CHECK_THROWS_AS(ragged.validate(), InvalidGroupTable);
    CHECK_THROWS_AS(conjugacy_classes(broken), InvalidGroupTable);
}

TEST_CASE("age of local actions") {
    CHECK(age({make_rational(1, 2), make_rational(1, 2)}) == Rational(1));
    CHECK(age({Rational(0), Rational(0)}) == Rational(0));
    CHECK(age({make_rational(1, 3), make_rational(2, 3)}) == Rational(1));
    CHECK_THROWS_AS(age({Rational(1)}), ExponentOutOfRange);
    CHECK_THROWS_AS(age({make_rational(-1, 3)}), ExponentOutOfRange);
}

TEST_CASE("degree shift of permutation sectors") {
    CHECK(perm_degree_shift({2}, 2) == Rational(1));          // transposition in S2, d = 2
    CHECK(perm_degree_shift({1, 1, 1}, 3) == Rational(0));    // identity
    CHECK(perm_degree_shift({3}, 2) == Rational(2));          // 3-cycle, d = 2
    CHECK(perm_degree_shift({2, 1}, 1) == make_rational(1, 2));
    CHECK_THROWS_AS(perm_degree_shift({}, 2), InvalidPartition);
    CHECK_THROWS_AS(perm_degree_shift({2, 0}, 2), InvalidPartition);
    CHECK_THROWS_AS(perm_degree_shift({2}, 0), InvalidPartition);
}

TEST_CASE("perm_degree_shift agrees with age on cycle eigenvalues") {
    // a k-cycle acting on C^k has eigenvalue exponents j/k, j = 0..k-1;
    // repeating them d times and summing ages must reproduce the formula
    std::vector<std::vector<std::vector<size_t>>> partitions(7);
    partitions[0] = {{}};
    for (size_t n = 1; n <= 6; ++n)
        for (size_t first = 1; first <= n; ++first)
            for (const auto& rest : partitions[n - first]) {
                if (!rest.empty() && rest.front() > first) continue; // keep nonincreasing
                std::vector<size_t> p{first};
                p.insert(p.end(), rest.begin(), rest.end());
                partitions[n].push_back(std::move(p));
            }
    for (size_t n = 1; n <= 6; ++n)
        for (const auto& part : partitions[n])
            for (size_t d = 1; d <= 3; ++d) {
                std::vector<Rational> exps;
                for (size_t k : part)
                    for (size_t copy = 0; copy < d; ++copy)
                        for (size_t j = 0; j < k; ++j) exps.push_back(make_rational(j, k));
                CHECK(age(exps) == perm_degree_shift(part, d));
            }
}

TEST_CASE("epsilon sign values") {
    CHECK(epsilon_sign(Rational(0), Rational(0), Rational(0)) == Rational(0));
    CHECK(epsilon_sign(Rational(1), Rational(1), Rational(0)) == Rational(1));
    CHECK(epsilon_sign(Rational(1), Rational(0), Rational(1)) == Rational(0));
    CHECK(epsilon_sign(make_rational(1, 2), make_rational(1, 2), Rational(0)) ==
          make_rational(1, 2));
}

TEST_CASE("cocycle identity for epsilon along group multiplication") {
    std::uniform_int_distribution<int> num(-6, 6);
    std::uniform_int_distribution<int> den(1, 4);
    for (GroupSpec g : {z2(), z3(), s3()}) {
        auto classes = conjugacy_classes(g);
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<Rational> iota(classes.size());
            for (auto& v : iota) v = make_rational(num(rng), den(rng));
            auto iota_of = [&](size_t element) { return iota[class_of(classes, element)]; };
            auto eps = [&](size_t h1, size_t h2) {
                return epsilon_sign(iota_of(h1), iota_of(h2), iota_of(g.mul(h1, h2)));
            };
            for (size_t h1 = 0; h1 < g.order; ++h1)
                for (size_t h2 = 0; h2 < g.order; ++h2)
                    for (size_t h3 = 0; h3 < g.order; ++h3)
                        CHECK(eps(h1, h2) + eps(g.mul(h1, h2), h3) ==
                              eps(h1, g.mul(h2, h3)) + eps(h2, h3));
        }
    }
}

TEST_CASE("conjugation identity behind the Qin-Wang rescaling") {
    // i^{iota1} i^{iota2} = i^{iota12} * (-1)^epsilon with (-1)^epsilon
    // read as i^{2 epsilon}
    std::uniform_int_distribution<int> num(0, 8);
    for (GroupSpec g : {z2(), z3(), s3()}) {
        auto classes = conjugacy_classes(g);
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<Rational> iota(classes.size());
            for (size_t c = 0; c < iota.size(); ++c)
                iota[c] = classes[c].representative == g.identity() ? Rational(0)
                                                                    : Rational(num(rng));
            auto iota_of = [&](size_t element) { return iota[class_of(classes, element)]; };
            for (size_t h1 = 0; h1 < g.order; ++h1)
                for (size_t h2 = 0; h2 < g.order; ++h2) {
                    Rational i1 = iota_of(h1), i2 = iota_of(h2), i12 = iota_of(g.mul(h1, h2));
                    Rational two_eps = i1 + i2 - i12;
                    REQUIRE(is_integer(two_eps));
                    CHECK(i_pow(numerator(i1)) * i_pow(numerator(i2)) ==
                          i_pow(numerator(i12)) * i_pow(numerator(two_eps)));
                }
        }
    }
}

TEST_CASE("signed product flips exactly the odd-epsilon components") {
    SectorAlgebra sa = s2_sector_fixture(GaussRational(make_rational(3, 2)));
    SectorAlgebra sp = signed_product(sa);
    // epsilon(t,t) = (1+1-0)/2 = 1: the (t,t) component is negated
    CHECK(sp.components().at({1, 1}).at({1, 1})[2] == GaussRational(make_rational(-3, 2)));
    // epsilon(e,t) = 0: untouched
    CHECK(sp.components().at({0, 1}).at({0, 1})[1] == GaussRational(1));

    // iota(t) = 2 makes epsilon(t,t) = 2, so nothing changes
    SectorAlgebra even = s2_sector_fixture(GaussRational(5), Rational(2));
    SectorAlgebra even_signed = signed_product(even);
    CHECK(even_signed.components().at({1, 1}).at({1, 1})[2] == GaussRational(5));

    // fractional epsilon leaves Q(i) and is refused
    SectorAlgebra frac = s2_sector_fixture(GaussRational(1), make_rational(1, 2));
    CHECK_THROWS_AS(signed_product(frac), NonIntegerSignExponent);
}

TEST_CASE("all-identity-sector algebras are fixed by the sign twist") {
    GroupSpec g = trivial();
    std::vector<SectorBasisElement> basis{{"u", Rational(0), 0}};
    std::map<std::pair<size_t, size_t>, std::map<std::pair<size_t, size_t>, std::vector<GaussRational>>>
        comps;
    comps[{0, 0}][{0, 0}] = {GaussRational(1)};
    SectorAlgebra sa(g, {Rational(0)}, basis, comps);
    SectorAlgebra sp = signed_product(sa);
    CHECK(sp.components().at({0, 0}).at({0, 0})[0] == GaussRational(1));
}

TEST_CASE("qinwang map scalars") {
    SectorAlgebra sa = s2_sector_fixture(GaussRational(1));
    DiagonalMap m = qinwang_map(sa);
    CHECK(m.at(0) == GaussRational(1));           // iota 0
    CHECK(m.at(1) == GaussRational::unit_i());    // iota 1
    CHECK(m.at(2) == GaussRational(1));

    SectorAlgebra two = s2_sector_fixture(GaussRational(1), Rational(2));
    CHECK(qinwang_map(two).at(1) == GaussRational(-1)); // i^2

    SectorAlgebra frac = s2_sector_fixture(GaussRational(1), make_rational(1, 2));
    CHECK_THROWS_AS(qinwang_map(frac), NonIntegerIota);
}

TEST_CASE("qinwang map intertwines the unsigned and signed products") {
    for (GaussRational c : {GaussRational(1), GaussRational(make_rational(-2, 3)),
                            GaussRational(Rational(0), Rational(1))}) {
        SectorAlgebra sa = s2_sector_fixture(c);
        GradedAlgebra unsigned_total = sa.total_algebra();
        GradedAlgebra signed_total = signed_product(sa).total_algebra();
        IsoReport rep = verify_map(unsigned_total, signed_total, qinwang_map(sa));
        CHECK(rep.verdict == IsoVerdict::verified);
    }
}

TEST_CASE("hermitian gram of the C^2/Z3 pairing") {
    GroupSpec g = z3();
    auto classes = conjugacy_classes(g);
    std::vector<BasisElement> basis{{"beta_g", Rational(2), "g"},
                                    {"beta_g2", Rational(2), "g2"}};
    GaussRational c(make_rational(1, 3));
    Mat<GaussRational> p(2, 2);
    p(0, 1) = p(1, 0) = c;
    PairingMatrix pairing(p);

    CHECK(pairing_signature(pairing) == Signature{1, 1, 0});

    HermitianMatrix gram = hermitian_gram(pairing, {1, 0}, basis, g, classes);
    CHECK(gram.mat()(0, 0) == c);
    CHECK(gram.mat()(1, 1) == c);
    CHECK(gram.mat()(0, 1) == GaussRational(0));
    CHECK(is_positive_definite(gram));

    // identity involution on a real symmetric pairing returns the pairing,
    // but fails the sector constraint here (g maps to g2); drop the labels
    std::vector<BasisElement> unlabeled{{"a", Rational(2), std::nullopt},
                                        {"b", Rational(2), std::nullopt}};
    Mat<GaussRational> diag(2, 2);
    diag(0, 0) = GaussRational(2);
    diag(1, 1) = GaussRational(3);
    HermitianMatrix same = hermitian_gram(PairingMatrix(diag), {0, 1}, unlabeled, g, classes);
    CHECK(same.mat() == diag);

    CHECK_THROWS_AS(hermitian_gram(pairing, {0, 1}, basis, g, classes), SectorMismatch);

    std::vector<BasisElement> degree_broken{{"beta_g", Rational(2), "g"},
                                            {"beta_g2", Rational(4), "g2"}};
    CHECK_THROWS_AS(hermitian_gram(pairing, {1, 0}, degree_broken, g, classes), SectorMismatch);

    CHECK_THROWS_AS(hermitian_gram(pairing, {1, 1}, basis, g, classes), NotAnInvolution);
}

TEST_CASE("positive definiteness by exact minors") {
    Mat<GaussRational> id2 = Mat<GaussRational>::identity(2);
    CHECK(is_positive_definite(HermitianMatrix(id2)));

    Mat<GaussRational> hyp(2, 2);
    hyp(0, 1) = hyp(1, 0) = GaussRational(1);
    CHECK_FALSE(is_positive_definite(HermitianMatrix(hyp))); // signature (1,1,0)

    Mat<GaussRational> herm(2, 2);
    herm(0, 0) = GaussRational(2);
    herm(0, 1) = GaussRational::unit_i();
    herm(1, 0) = -GaussRational::unit_i();
    herm(1, 1) = GaussRational(2);
    CHECK(is_positive_definite(HermitianMatrix(herm))); // minors 2 and 3

    Mat<GaussRational> not_herm(2, 2);
    not_herm(0, 1) = GaussRational::unit_i();
    not_herm(1, 0) = GaussRational::unit_i();
    CHECK_THROWS_AS(HermitianMatrix(not_herm), NotHermitian);
}

TEST_CASE("a complex symmetric pairing cannot masquerade as hermitian") {
    // swapping inverse sectors puts the off-diagonal entry on the diagonal;
    // if it has an imaginary part the result is not hermitian
    GroupSpec g = z3();
    auto classes = conjugacy_classes(g);
    std::vector<BasisElement> basis{{"bg", Rational(2), "g"}, {"bg2", Rational(2), "g2"}};
    Mat<GaussRational> p(2, 2);
    p(0, 1) = p(1, 0) = GaussRational(Rational(1), Rational(1)); // 1 + i
    CHECK_THROWS_AS(hermitian_gram(PairingMatrix(p), {1, 0}, basis, g, classes), NotHermitian);
}

TEST_CASE("hermitian gram output is hermitian for random swap pairings") {
    GroupSpec g = z3();
    auto classes = conjugacy_classes(g);
    std::uniform_int_distribution<int> entry(-5, 5);
    for (int trial = 0; trial < 50; ++trial) {
        // random real symmetric pairing across the swapped sectors
        GaussRational off(Rational(entry(rng)));
        GaussRational diag_g(Rational(entry(rng)));
        Mat<GaussRational> p(2, 2);
        p(0, 1) = p(1, 0) = off.is_zero() ? GaussRational(1) : off;
        p(0, 0) = p(1, 1) = diag_g;
        std::vector<BasisElement> basis{{"bg", Rational(2), "g"}, {"bg2", Rational(2), "g2"}};
        // the HermitianMatrix constructor validates conj-transpose equality
        HermitianMatrix gram = hermitian_gram(PairingMatrix(p), {1, 0}, basis, g, classes);
        CHECK(gram.mat() == conjugate_transpose(gram.mat()));
    }
}

TEST_CASE("sector components must land in the product sector") {
    GroupSpec g = z2();
    std::vector<SectorBasisElement> basis{{"x_e", Rational(0), 0}, {"x_t", Rational(2), 1}};
    std::map<std::pair<size_t, size_t>, std::map<std::pair<size_t, size_t>, std::vector<GaussRational>>>
        comps;
    // (t,t) lands in class e; writing it on x_t is inconsistent
    comps[{1, 1}][{1, 1}] = {GaussRational(0), GaussRational(1)};
    CHECK_THROWS_AS(SectorAlgebra(g, {Rational(0), Rational(1)}, basis, comps), SectorMismatch);
}
