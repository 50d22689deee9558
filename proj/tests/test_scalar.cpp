#include "doctest.h"
#include "gkcalc/scalar.hpp"
#include "gkcalc/matrix.hpp"
#include "gkcalc/pathring.hpp"
#include "gkcalc/group.hpp"
#include "gkcalc/reps.hpp"
#include "gkcalc/rng.hpp"

using namespace gk;

static Scalar rand_scalar(Rng& rng) {
    return Scalar(mpq_class(rng.range(-6, 6), rng.range(1, 4)),
                  mpq_class(rng.range(-6, 6), rng.range(1, 4)));
}

TEST_CASE("scalar field axioms hold exactly on random samples") {
    Rng rng(7);
    for (int t = 0; t < 200; t++) {
        Scalar a = rand_scalar(rng), b = rand_scalar(rng), c = rand_scalar(rng);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        if (!a.is_zero()) CHECK(a * a.inv() == Scalar(1));
    }
}

TEST_CASE("scalar string round trip and canonical form") {
    CHECK(Scalar::parse("1/2+3/4*i") == Scalar(mpq_class(1, 2), mpq_class(3, 4)));
    CHECK(Scalar::parse("-2") == Scalar(-2));
    CHECK(Scalar::parse("-3/2*i") == Scalar(mpq_class(0), mpq_class(-3, 2)));
    CHECK(Scalar::parse("i") == Scalar::i());
    Rng rng(11);
    for (int t = 0; t < 100; t++) {
        Scalar a = rand_scalar(rng);
        CHECK(Scalar::parse(a.str()) == a);
    }
    CHECK(Scalar(mpq_class(2, 4), mpq_class(0)).str() == "1/2+0/1*i");
    CHECK(Scalar(mpq_class(0), mpq_class(-1, 2)).str() == "0/1-1/2*i");
}

TEST_CASE("matrix solve, inverse, rank") {
    Rng rng(3);
    for (int t = 0; t < 30; t++) {
        int n = (int)rng.range(1, 5);
        Matrix m(n, n);
        for (int i = 0; i < n; i++)
            for (int j = 0; j < n; j++) m.at(i, j) = rand_scalar(rng);
        auto inv = m.inverse();
        if (inv) {
            CHECK(m * *inv == Matrix::identity(n));
            CHECK(m.rank() == n);
        } else {
            CHECK(m.rank() < n);
        }
    }
}

TEST_CASE("null space and column space are complementary in dimension") {
    Rng rng(5);
    for (int t = 0; t < 30; t++) {
        int r = (int)rng.range(1, 5), c = (int)rng.range(1, 5);
        Matrix m(r, c);
        for (int i = 0; i < r; i++)
            for (int j = 0; j < c; j++)
                if (rng.chance(1, 2)) m.at(i, j) = rand_scalar(rng);
        Matrix ns = m.null_space();
        CHECK(ns.cols + m.rank() == c);
        if (ns.cols) CHECK((m * ns).is_zero());
    }
}

TEST_CASE("path ring normal form and endpoint evaluation") {
    PathScalar c = PathScalar::c_var(), s = PathScalar::s_var();
    CHECK(c * c + s * s == PathScalar(Scalar(1)));
    PathScalar p = c * s + PathScalar(Scalar(2)) * c;
    CHECK(p.eval0() == Scalar(2)); // (c,s)=(1,0)
    CHECK(p.eval1() == Scalar(0)); // (c,s)=(0,1)
    // reversal swaps the endpoints and is an involution
    CHECK(p.reversed().eval0() == p.eval1());
    CHECK(p.reversed().eval1() == p.eval0());
    CHECK(p.reversed().reversed() == p);
}

TEST_CASE("cyclic group verification and classes") {
    FiniteGroup g = FiniteGroup::cyclic(6);
    CHECK(g.identity == 0);
    CHECK(g.inv(2) == 4);
    CHECK(g.num_classes() == 6);
    CHECK(g.element_order(2) == 3);
    CHECK(g.is_abelian());
}

TEST_CASE("regular representation decomposes with correct accounting") {
    for (int n : {1, 2, 3, 4, 5, 6, 8, 12}) {
        FiniteGroup g = FiniteGroup::cyclic(n);
        CharTable t = char_table(g);
        int dims = 0;
        for (size_t i = 0; i < t.dim.size(); i++) dims += t.dim[i] * t.dim[i] / t.endo[i];
        CHECK(dims == n);
        // trivial character is listed first
        for (auto& v : t.chi[0]) CHECK(v == Scalar(1));
    }
}

TEST_CASE("z2 and z3 character tables over Q(i)") {
    FiniteGroup z2 = FiniteGroup::cyclic(2);
    CharTable t2 = char_table(z2);
    CHECK(t2.size() == 2);
    CHECK(t2.dim[0] == 1);
    CHECK(t2.dim[1] == 1);
    // Z3 over Q(i): trivial + one 2-dimensional piece with endo dim 2
    FiniteGroup z3 = FiniteGroup::cyclic(3);
    CharTable t3 = char_table(z3);
    CHECK(t3.size() == 2);
    CHECK(t3.dim[1] == 2);
    CHECK(t3.endo[1] == 2);
    // Z4 over Q(i): four one-dimensional characters (i is in the field)
    CharTable t4 = char_table(FiniteGroup::cyclic(4));
    CHECK(t4.size() == 4);
}

TEST_CASE("multiplicities of virtual characters") {
    FiniteGroup z2 = FiniteGroup::cyclic(2);
    CharTable t = char_table(z2);
    // regular character (2, 0) = trivial + sign
    auto m = t.multiplicities({Scalar(2), Scalar(0)});
    REQUIRE(m.has_value());
    CHECK((*m)[0] == 1);
    CHECK((*m)[1] == 1);
    // character of e11 under ad(diag(1,-1)) image: trace over class reps (1, 1)
    auto m2 = t.multiplicities({Scalar(1), Scalar(1)});
    REQUIRE(m2.has_value());
    CHECK((*m2)[0] == 1);
    CHECK((*m2)[1] == 0);
}

TEST_CASE("equivariant conjugator between equal-character idempotents") {
    FiniteGroup z2 = FiniteGroup::cyclic(2);
    // swap representation on C^2
    Matrix swap(2, 2);
    swap.at(0, 1) = Scalar(1);
    swap.at(1, 0) = Scalar(1);
    Rep rho(&z2, {Matrix::identity(2), swap});
    // two invariant rank-1 idempotents with the same (trivial) image character
    Matrix p(2, 2), q(2, 2);
    for (int i = 0; i < 2; i++)
        for (int j = 0; j < 2; j++) p.at(i, j) = Scalar(mpq_class(1, 2));
    // q = conjugate of p by an invariant invertible
    Matrix w = Matrix::identity(2);
    w.at(0, 1) = Scalar(3);
    w.at(1, 0) = Scalar(3); // symmetric => commutes with swap
    q = w * p * *w.inverse();
    Rng rng(42);
    auto v = equivariant_conjugator(rho, p, q, rng);
    REQUIRE(v.has_value());
    CHECK(*v * p == q * *v);
    for (int g = 0; g < 2; g++) CHECK(*v * rho[g] == rho[g] * *v);
}
