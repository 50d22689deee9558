#include "doctest.h"
#include "gkcalc/words.hpp"
#include "gkcalc/rng.hpp"

using namespace gk;

namespace {

struct Fixture {
    Registry reg;
    GeneratorPool pool;
    const GAlgebra* C;
    const GAlgebra* M2;
    const GAlgebra* D; // C (+) M2

    Fixture() {
        reg.G = reg.install_group(FiniteGroup::trivial());
        C = reg.complex_line();
        const auto& m2 = reg.matrix_algebra(C, 2, Rep::trivial(reg.G, 2));
        M2 = m2.alg;
        const auto& d = reg.direct_sum(C, M2);
        D = d.alg;
        pool.add_identity(C, "idC");
        pool.add_identity(M2, "idM2");
        pool.add_identity(D, "idD");
        // rank-one embedding of C into M2
        Matrix em(4, 1);
        em.at(0, 0) = Scalar(1);
        pool.add_hom("p1", GHom(C, M2, std::move(em)));
        pool.add_hom("incl", d.inj_b);
        pool.add_hom("proj", d.proj_b);
        pool.add_corner("e2", &m2);
        pool.add_seq("s", d.inj_a, d.proj_b, d.inj_b);
    }
};

} // namespace

TEST_CASE("parser builds typed trees and reports errors") {
    Fixture f;
    auto w = parse_word("p1 . incl", f.pool);
    CHECK(w->src == f.C);
    CHECK(w->tgt == f.D);
    CHECK(w->kind == Word::Compose);

    auto w2 = parse_word("(p1 + p1) . incl", f.pool);
    CHECK(w2->src == f.C);
    CHECK(w2->kind == Word::Compose);
    CHECK(w2->left->kind == Word::Plus);

    CHECK_THROWS_WITH_AS(parse_word("p1 . nosuch", f.pool), doctest::Contains("unknown identifier"),
                         Error);
    // type error names both objects
    CHECK_THROWS_WITH_AS(parse_word("p1 . p1", f.pool), doctest::Contains("M2(C)"), Error);
    CHECK_THROWS_WITH_AS(parse_word("(p1 . incl", f.pool), doctest::Contains("expected ')'"), Error);
}

TEST_CASE("expansion distributes and is idempotent") {
    Fixture f;
    // (a + b) . c -> a.c + b.c
    auto w = parse_word("(p1 + p1) . incl", f.pool);
    auto s = expand(*w);
    CHECK(s.terms.size() == 2);
    CHECK(s.terms[0].letters.size() == 2);
    // a . (b + c) . d -> a.b.d + a.c.d with document term order
    auto w2 = parse_word("p1 . (incl + incl) . idD", f.pool);
    auto s2 = expand(*w2);
    CHECK(s2.terms.size() == 2);
    CHECK(s2.terms[0].letters.size() == 3);
    // signs: -(a + b) gives two negative terms
    auto w3 = parse_word("-(p1 + p1 . idM2)", f.pool);
    auto s3 = expand(*w3);
    CHECK(s3.terms.size() == 2);
    CHECK(s3.terms[0].negative);
    CHECK(s3.terms[1].negative);
    // idempotence through a rebuilt flat word
    auto s4 = expand(*parse_word("p1 . incl + p1 . incl", f.pool));
    CHECK(s4.same_shape(expand(*parse_word("(p1 + p1) . incl", f.pool))));
}

TEST_CASE("random bracketings expand to the same sum of products") {
    Fixture f;
    Rng rng(17);
    // associativity: left vs right composition bracketing is invisible in
    // the expansion
    auto a = parse_word("(p1 . incl) . idD", f.pool);
    auto b = parse_word("p1 . (incl . idD)", f.pool);
    CHECK(expand(*a).same_shape(expand(*b)));
    for (int t = 0; t < 20; t++) {
        // random sums with random paren placement over the same term list
        int n = (int)rng.range(2, 4);
        std::string flat, nested;
        for (int i = 0; i < n; i++) {
            if (i) { flat += " + "; nested += " + "; }
            flat += "p1 . incl";
            nested += (i % 2 == 0) ? "(p1) . incl" : "p1 . (incl)";
        }
        CHECK(expand(*parse_word(flat, f.pool)).same_shape(expand(*parse_word("(" + nested + ")", f.pool))));
    }
}

TEST_CASE("rewrite: compose homs, cancel corners, identity laws") {
    Fixture f;
    auto s = expand(*parse_word("p1 . incl", f.pool));
    auto sites = rewrite_sites(s, f.pool);
    bool found_compose = false;
    for (const auto& site : sites)
        if (site.rule == RuleKind::ComposeHoms) {
            found_compose = true;
            auto s2 = rewrite_one(s, f.pool, site);
            CHECK(s2.terms.size() == 1);
            CHECK(s2.terms[0].letters.size() == 1);
            CHECK(s2.terms[0].letters[0].hom.mat == f.pool.find("incl")->hom.mat * f.pool.find("p1")->hom.mat);
        }
    CHECK(found_compose);

    // e2 . e2_inv -> id_C
    auto sc = expand(*parse_word("e2 . e2_inv", f.pool));
    auto sites2 = rewrite_sites(sc, f.pool);
    bool found_cancel = false;
    for (const auto& site : sites2)
        if (site.rule == RuleKind::CancelCorner) {
            found_cancel = true;
            auto s2 = rewrite_one(sc, f.pool, site);
            CHECK(s2.terms[0].letters.size() == 1);
            CHECK(s2.terms[0].letters[0].kind == Generator::Identity);
            CHECK(s2.terms[0].letters[0].id_obj == f.C);
        }
    CHECK(found_cancel);

    // dropping identities and inserting them back
    auto si = expand(*parse_word("p1 . idM2", f.pool));
    bool found_drop = false;
    for (const auto& site : rewrite_sites(si, f.pool))
        if (site.rule == RuleKind::DropIdentity) {
            found_drop = true;
            auto s2 = rewrite_one(si, f.pool, site);
            CHECK(s2.terms[0].letters.size() == 1);
        }
    CHECK(found_drop);
}

TEST_CASE("rewrite: split-exactness identities produce two-term sums") {
    Fixture f;
    auto s = expand(*parse_word("idD", f.pool));
    bool found = false;
    for (const auto& site : rewrite_sites(s, f.pool))
        if (site.rule == RuleKind::SplitIdentityM) {
            found = true;
            auto s2 = rewrite_one(s, f.pool, site);
            CHECK(s2.terms.size() == 2);
            CHECK(s2.terms[0].letters.size() == 2); // delta . i
            CHECK(s2.terms[0].letters[0].kind == Generator::Split);
            CHECK(s2.terms[1].letters.size() == 2); // f . s
        }
    CHECK(found);
    // 1_J -> i . delta and back
    auto sj = expand(*parse_word("idC", f.pool));
    bool foundj = false;
    for (const auto& site : rewrite_sites(sj, f.pool))
        if (site.rule == RuleKind::SplitIdentityJ) {
            foundj = true;
            auto s2 = rewrite_one(sj, f.pool, site);
            CHECK(s2.terms.size() == 1);
            CHECK(s2.terms[0].letters.size() == 2);
            // and contract it back
            bool contracted = false;
            for (const auto& site2 : rewrite_sites(s2, f.pool))
                if (site2.rule == RuleKind::ContractSplitJ) {
                    auto s3 = rewrite_one(s2, f.pool, site2);
                    CHECK(s3.terms[0].letters.size() == 1);
                    CHECK(s3.terms[0].letters[0].kind == Generator::Identity);
                    contracted = true;
                }
            CHECK(contracted);
        }
    CHECK(foundj);
}

TEST_CASE("homotopy endpoints of constant and rotation paths") {
    Fixture f;
    // constant path at p1
    PathHom h;
    h.name = "const";
    h.src = f.C;
    h.tgt = f.M2;
    h.mat.assign(4, std::vector<PathScalar>(1));
    h.mat[0][0] = PathScalar(Scalar(1));
    auto [e0, e1] = homotopy_endpoints(h);
    CHECK(e0.mat == e1.mat);

    // rotation path ad(U_t) o p1: moves e11 to e22
    PathScalar c = PathScalar::c_var(), s = PathScalar::s_var();
    PathHom rot;
    rot.name = "rot";
    rot.src = f.C;
    rot.tgt = f.M2;
    rot.mat.assign(4, std::vector<PathScalar>(1));
    // U_t e11 U_t^-1 for U_t = [[c,-s],[s,c]]: entries (c^2, cs, cs... with signs)
    rot.mat[0][0] = c * c;        // e11 coefficient
    rot.mat[1][0] = c * s;        // e12
    rot.mat[2][0] = c * s;        // e21
    rot.mat[3][0] = s * s;        // e22
    auto [r0, r1] = homotopy_endpoints(rot);
    Matrix m0(4, 1), m1(4, 1);
    m0.at(0, 0) = Scalar(1);
    m1.at(3, 0) = Scalar(1);
    CHECK(r0.mat == m0);
    CHECK(r1.mat == m1);
    // registered homotopy gives swap sites on matching letters
    f.pool.add_homotopy(rot);
    GeneratorPool& pool = f.pool;
    auto sw = expand(*parse_word("rot_0", pool));
    bool found = false;
    for (const auto& site : rewrite_sites(sw, pool))
        if (site.rule == RuleKind::HomotopySwap) {
            auto s2 = rewrite_one(sw, pool, site);
            CHECK(s2.terms[0].letters[0].hom.mat == m1);
            found = true;
        }
    CHECK(found);
}

TEST_CASE("rewrites preserve well-typedness endpoints") {
    Fixture f;
    Rng rng(23);
    auto s = expand(*parse_word("p1 . incl . idD + p1 . incl", f.pool));
    auto sites = rewrite_sites(s, f.pool);
    for (const auto& site : sites) {
        auto s2 = rewrite_one(s, f.pool, site);
        CHECK(s2.src == s.src);
        CHECK(s2.tgt == s.tgt);
        for (const auto& t : s2.terms) {
            REQUIRE(!t.letters.empty());
            CHECK(t.letters.front().source() == s.src);
            CHECK(t.letters.back().target() == s.tgt);
            for (size_t i = 0; i + 1 < t.letters.size(); i++)
                CHECK(t.letters[i].target() == t.letters[i + 1].source());
        }
    }
}
