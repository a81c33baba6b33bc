#include <doctest.h>

#include <random>
#include <set>

#include "thetacorr/theta.hpp"

using namespace thetacorr;

namespace {

struct F79Data {
    ContextPtr f79;
    ContextPtr ext;  // F_79[u]/(u^3 + 9u + 76)
    ThetaPoint b;    // level-4 null point (1 : 1 : 12 : 1)

    FieldElement e(int64_t c0, int64_t c1, int64_t c2) const {
        return ext->from_coeffs({f79->from_int(c0), f79->from_int(c1), f79->from_int(c2)});
    }
    FieldElement e(int64_t c0) const { return ext->from_int(c0); }

    ThetaPoint q1() const {
        IndexGroup g12{1, 12};
        std::vector<FieldElement> cs = {e(17, 19, 16), e(1), e(46), e(17, 19, 16), e(37), e(54),
                                        e(46, 70, 34), e(54), e(37), e(17, 19, 16), e(46), e(1)};
        return ThetaPoint{g12, std::move(cs), ThetaPoint::Projective};
    }
    ThetaPoint lone() const {
        IndexGroup g12{1, 12};
        std::vector<FieldElement> cs = {e(1), e(0), e(0), e(1), e(0), e(0),
                                        e(12), e(0), e(0), e(1), e(0), e(0)};
        return ThetaPoint{g12, std::move(cs), ThetaPoint::Affine};
    }
    ThetaPoint class_c() const {
        IndexGroup g12{1, 12};
        std::vector<FieldElement> cs = {e(1), e(1), e(12), e(1), e(1), e(1),
                                        e(12), e(1), e(1), e(1), e(12), e(1)};
        return ThetaPoint{g12, std::move(cs), ThetaPoint::Affine};
    }
    std::vector<std::vector<FieldElement>> k1() const {
        return {{e(1), e(1), e(12), e(1)}, {e(37), e(54), e(46), e(1)}, {e(8), e(60), e(74), e(1)}};
    }
};

F79Data data() {
    F79Data d;
    d.f79 = make_context(79);
    d.ext = FieldContext::extension(d.f79, UniPolynomial::from_ints(d.f79.get(), {76, 9, 0, 1}));
    IndexGroup g4{1, 4};
    d.b = ThetaPoint{g4, {d.f79->from_int(1), d.f79->from_int(1), d.f79->from_int(12), d.f79->from_int(1)},
                     ThetaPoint::Projective};
    return d;
}

std::vector<FieldElement> j_values(const ThetaSystem& sys, const std::vector<FieldElement>& full) {
    std::vector<FieldElement> vals;
    vals.reserve(sys.vars->arity());
    for (int v = 0; v < sys.vars->arity(); ++v) vals.push_back(full[sys.rep_of_var[v]]);
    return vals;
}

bool satisfies_J(const ThetaSystem& sys, const ThetaPoint& p) {
    auto vals = j_values(sys, p.coords);
    for (const auto& f : sys.polys)
        if (!eval_poly(f, vals).is_zero()) return false;
    return true;
}

ThetaPoint b_normalize(const ThetaSystem& sys, const ThetaPoint& a) {
    // scale so that the coordinate at index 0 is b_0
    auto [slice, omega] = pi1(a, sys.ell, &sys.b);
    ThetaPoint out = a;
    FieldElement inv = omega.inv();
    for (auto& c : out.coords) c = c * inv;
    out.kind = ThetaPoint::Affine;
    return out;
}

}  // namespace

TEST_CASE("rho and index embedding") {
    IndexGroup z4{1, 4}, z3{1, 3}, z12{1, 12};
    CHECK(rho(z4, z3, 1, 0) == 3);
    CHECK(rho(z4, z3, 0, 1) == 4);
    CHECK(rho(z4, z3, 2, 2) == 2);  // 14 mod 12
    auto [x, y] = rho_split(z4, z3, 2);
    CHECK(x == 2);
    CHECK(y == 2);
    CHECK_THROWS_AS(rho(z4, IndexGroup{1, 2}, 0, 0), NotCoprime);

    CHECK(embed_index(z4, z12, 1) == 3);
    CHECK(embed_index(IndexGroup{1, 2}, z12, 1) == 6);
    CHECK(embed_index(z12, IndexGroup{1, 24}, 5) == 10);
    CHECK_THROWS_AS(embed_index(IndexGroup{1, 5}, z12, 1), NotDivisible);

    // row-major tuples at g = 2
    IndexGroup z6{2, 6};
    CHECK(z6.linear({1, 2}) == 8);
    CHECK(z6.tuple(8) == std::vector<int>{1, 2});
}

TEST_CASE("level-4 relations vanish at the null point") {
    auto d = data();
    auto rels = riemann_relations(d.f79.get(), d.b.grp);
    CHECK(!rels.empty());
    CHECK(satisfies_relations(rels, d.b.coords));

    // and the relation set is invariant under u -> -u relabeling
    std::set<std::string> keys;
    for (const auto& r : rels) keys.insert(r.canonical_key());
    IndexGroup grp = d.b.grp;
    for (const auto& r : rels) {
        std::vector<Polynomial::Term> ts;
        for (const auto& [m, c] : r.terms()) {
            Monomial nm = Monomial::one(m.arity());
            for (int i = 0; i < m.arity(); ++i) nm.e[grp.neg(i)] = m.e[i];
            ts.emplace_back(nm, c);
        }
        auto img = Polynomial::from_terms(r.ctx(), r.vars(), r.order(), std::move(ts)).monic();
        CHECK(keys.count(img.canonical_key()) == 1);
    }

    CHECK_THROWS_AS(riemann_relations(d.f79.get(), IndexGroup{1, 3}), OddLevel);
}

TEST_CASE("level-12 relations: symmetry count and vanishing at Q1") {
    auto d = data();
    IndexGroup g12{1, 12};
    auto rels = riemann_relations(d.ext.get(), g12);
    int linear = 0;
    for (const auto& r : rels)
        if (r.total_degree() == 1) ++linear;
    CHECK(linear == 5);  // pairs {u, -u} with u not in {0, 6}

    auto q1 = d.q1();
    CHECK(satisfies_relations(rels, q1.coords));
}

TEST_CASE("variety relations") {
    auto d = data();
    auto rels = variety_relations(d.b);
    CHECK(!rels.empty());
    // 0 is on the variety
    CHECK(satisfies_relations(rels, d.b.coords));
    // all K1 points lie on it
    for (const auto& p : data().k1()) CHECK(satisfies_relations(rels, p));
    // random vectors essentially never do
    std::mt19937_64 rng(3);
    int failures = 0;
    for (int t = 0; t < 20; ++t) {
        std::vector<FieldElement> v;
        for (int i = 0; i < 4; ++i) v.push_back(d.f79->random_element(rng));
        if (!satisfies_relations(rels, v)) ++failures;
    }
    CHECK(failures >= 19);

    // an invalid null point is rejected
    ThetaPoint bad = d.b;
    bad.coords[2] = d.f79->from_int(13);
    CHECK_THROWS_AS(variety_relations(bad), InvalidNullPoint);
}

TEST_CASE("build_J: variables and example points") {
    auto d = data();
    auto sys = build_J(d.b, 3);
    CHECK(sys.vars->arity() == 4);  // classes {1,11}, {2,10}, {4,8}, {5,7}
    CHECK(sys.rep_of_var == std::vector<int>{1, 2, 4, 5});
    CHECK(!sys.polys.empty());

    // Q1 normalized so that the index-0 coordinate is 1 satisfies every generator
    auto q1n = b_normalize(sys, d.q1());
    CHECK(satisfies_J(sys, q1n));
    // the degenerate points too
    CHECK(satisfies_J(sys, d.lone()));
    CHECK(satisfies_J(sys, d.class_c()));

    CHECK_THROWS_AS(build_J(d.b, 2), EvenEll);
    ThetaPoint bad = d.b;
    bad.coords[0] = d.f79->from_int(5);
    CHECK_THROWS_AS(build_J(bad, 3), InvalidNullPoint);
}

TEST_CASE("pi1 reports the proportionality factor") {
    auto d = data();
    auto q1 = d.q1();
    auto [slice, omega] = pi1(q1, 3, &d.b);
    CHECK(omega == d.e(17, 19, 16));
    REQUIRE(slice.coords.size() == 4);
    for (int u = 0; u < 4; ++u) CHECK(slice.coords[u] == omega * d.b.coords[u].lift_to(d.ext.get()));

    auto sys = build_J(d.b, 3);
    auto q1n = b_normalize(sys, q1);
    auto [s2, w2] = pi1(q1n, 3, &d.b);
    CHECK(w2.is_one());
    for (int u = 0; u < 4; ++u) CHECK(s2.coords[u] == d.b.coords[u].lift_to(d.ext.get()));

    auto [s3, w3] = pi1(d.lone(), 3, &d.b);
    CHECK(proj_equal(s3.coords, d.b.coords));
    (void)w3;
}

TEST_CASE("pi2 on the paper's points") {
    auto d = data();
    auto c = pi2(d.q1(), 3);
    std::vector<FieldElement> expect = {d.e(12, 19, 16), d.e(72, 19, 16), d.e(59, 70, 34), d.e(72, 19, 16)};
    REQUIRE(c.coords.size() == 4);
    for (int u = 0; u < 4; ++u) CHECK(c.coords[u] == expect[u]);

    // pi2 of a valid point satisfies the level-4 relations
    auto rels = riemann_relations(d.ext.get(), d.b.grp);
    CHECK(satisfies_relations(rels, c.coords));

    // class-C point: all slices equal, so pi2 is proportional to b
    auto cc = pi2(d.class_c(), 3);
    CHECK(proj_equal(cc.coords, d.b.coords));
}

TEST_CASE("theta translate") {
    auto d = data();
    // no 4th root of unity in F_79 (4 does not divide 78): extend first
    CHECK_THROWS_AS(root_of_unity(d.f79, 4), NoSuchRoot);
    auto quad = FieldContext::extension(d.f79, find_irreducible(d.f79, 2, 2));
    auto zeta4 = root_of_unity(quad, 4);
    auto b = d.b.lift_to(quad.get());

    auto id = theta_translate(b, quad->one(), {0}, {0}, zeta4);
    for (int u = 0; u < 4; ++u) CHECK(id.coords[u] == b.coords[u]);

    auto shifted = theta_translate(b, quad->one(), {2}, {0}, zeta4);
    std::vector<int64_t> expect = {12, 1, 1, 1};
    for (int u = 0; u < 4; ++u) CHECK(shifted.coords[u] == quad->from_int(expect[u]));

    // composing (1,i,0) then (1,0,j) differs from the reverse by zeta^{<j,i>}
    std::vector<int> i = {1}, j = {1};
    auto a1 = theta_translate(theta_translate(b, quad->one(), i, {0}, zeta4), quad->one(), {0}, j, zeta4);
    auto a2 = theta_translate(theta_translate(b, quad->one(), {0}, j, zeta4), quad->one(), i, {0}, zeta4);
    bool scalar1 = true, scalar2 = true;
    for (int u = 0; u < 4; ++u) {
        scalar1 = scalar1 && (a1.coords[u] == zeta4 * a2.coords[u]);
        scalar2 = scalar2 && (a1.coords[u] == zeta4.pow(3) * a2.coords[u]);
    }
    CHECK((scalar1 || scalar2));

    CHECK_THROWS_AS(theta_translate(b, quad->one(), {0}, {0}, quad->from_int(2)), WrongRootOrder);
}

TEST_CASE("index and twist actions") {
    auto d = data();
    auto sys = build_J(d.b, 3);
    auto q1n = b_normalize(sys, d.q1());

    // identity specs
    auto idp = act(q1n, 4, 3, ActionSpec::index_auto({{1}}));
    CHECK(idp.coords == q1n.coords);
    auto idt = act(q1n, 4, 3, ActionSpec::sym_twist({{0}}, FieldElement()));
    CHECK(idt.coords == q1n.coords);

    // u -> 9u kills the ell-part: the image is the class-C pattern
    auto cc = act(q1n, 4, 3, ActionSpec::index_auto({{0}}));
    CHECK(proj_equal(cc.coords, d.class_c().coords));
    CHECK(satisfies_J(sys, cc));

    // six pairwise distinct points, all on V_J
    auto zeta = root_of_unity(d.ext, 3);
    std::set<std::string> seen;
    for (int m : {1, 2}) {
        auto pm = act(q1n, 4, 3, ActionSpec::index_auto({{m}}));
        for (int c = 0; c < 3; ++c) {
            std::vector<std::vector<int>> cm = {{c}};
            auto pt = act(pm, 4, 3, ActionSpec::sym_twist(cm, zeta));
            CHECK(satisfies_J(sys, pt));
            std::string key;
            for (const auto& x : pt.coords) key += x.to_string() + "|";
            seen.insert(key);
        }
    }
    CHECK(seen.size() == 6);
}

TEST_CASE("P extraction and classification") {
    auto d = data();
    auto sys = build_J(d.b, 3);
    auto q1n = b_normalize(sys, d.q1());

    auto P = extract_Pi(q1n, 4, 3);
    REQUIRE(P.size() == 3);
    auto K1 = d.k1();
    for (int i = 0; i < 3; ++i) {
        REQUIRE(P[i].has_value());
        CHECK(proj_equal(*P[i], K1[i]));
    }

    auto Pl = extract_Pi(d.lone(), 4, 3);
    CHECK(Pl[0].has_value());
    CHECK(!Pl[1].has_value());
    CHECK(!Pl[2].has_value());

    auto Pc = extract_Pi(d.class_c(), 4, 3);
    for (int i = 0; i < 3; ++i) {
        REQUIRE(Pc[i].has_value());
        CHECK(proj_equal(*Pc[i], d.b.coords));
    }

    CHECK(classify(q1n, 4, 3).tag == Classification::Valid);
    CHECK(classify(d.class_c(), 4, 3).tag == Classification::DegenerateNotRankG);
    CHECK(classify(d.lone(), 4, 3).tag == Classification::DegenerateUndefined);

    // every defined P_i lies on the variety of b
    auto vrels = variety_relations(d.b);
    for (const auto& p : P) CHECK(satisfies_relations(vrels, *p));
}

TEST_CASE("orbits") {
    auto d = data();
    auto sys = build_J(d.b, 3);
    auto zeta = root_of_unity(d.ext, 3);

    auto q1n = b_normalize(sys, d.q1());
    CHECK(orbit(q1n, 4, 3, zeta).size() == 6);
    CHECK(orbit(d.class_c(), 4, 3, zeta).size() == 3);
    CHECK(orbit(d.lone(), 4, 3, zeta).size() == 1);

    CHECK_THROWS_AS(orbit(q1n, 4, 3, d.ext->one()), MissingRootOfUnity);
}

TEST_CASE("make_degenerate") {
    auto d = data();
    auto sys = build_J(d.b, 3);
    auto q1n = b_normalize(sys, d.q1());

    // S = Z(3), identity: unchanged
    auto full = make_degenerate(q1n, 4, 3, {0, 1, 2}, {{1}});
    CHECK(full.coords == q1n.coords);

    // S = {0}: the lone degenerate point
    auto z = make_degenerate(q1n, 4, 3, {0}, {{1}});
    CHECK(z.coords == d.lone().coords);
    CHECK(satisfies_J(sys, z));

    // S = Z(3) with psi2 = 0: a class-C member
    auto cc = make_degenerate(q1n, 4, 3, {0, 1, 2}, {{0}});
    CHECK(proj_equal(cc.coords, d.class_c().coords));
    CHECK(satisfies_J(sys, cc));

    CHECK_THROWS_AS(make_degenerate(q1n, 4, 3, {}, {{1}}), EmptySubgroup);
}

TEST_CASE("counting formulas") {
    CHECK(count_valid(1, 3) == 24);
    CHECK(count_classes(1, 3) == 4);
    CHECK(orbit_order(1, 3) == 6);
    CHECK(count_valid(2, 3) == 51840);
    CHECK(count_classes(2, 3) == 40);
    CHECK(orbit_order(2, 3) == 1296);
    CHECK(count_valid(2, 5) == 9360000);
    CHECK_THROWS_AS(count_valid(3, 3), UnsupportedGenus);

    // closed form: (l^2+1)(l+1)(l^2-1)(l^2-l)l^3 = l^10 - l^8 - l^6 + l^4
    for (int ell : {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}) {
        long long l = ell;
        long long closed = 1;
        for (int i = 0; i < 4; ++i) closed *= l;
        long long l4 = closed;
        long long l6 = l4 * l * l, l8 = l6 * l * l, l10 = l8 * l * l;
        CHECK(count_valid(2, ell) == l10 - l8 - l6 + l4);
    }
}
