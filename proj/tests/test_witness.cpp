#include "doctest.h"
#include "gkcalc/witness.hpp"

using namespace gk;

namespace {

struct Fx {
    Registry reg;
    GeneratorPool pool;
    const GAlgebra* C;
    const GAlgebra* M2;

    Fx(FiniteGroup g = FiniteGroup::trivial()) {
        reg.G = reg.install_group(std::move(g));
        C = reg.complex_line();
        const auto& m2 = reg.matrix_algebra(C, 2, Rep::trivial(reg.G, 2));
        M2 = m2.alg;
        Matrix em(4, 1);
        em.at(0, 0) = Scalar(1);
        pool.add_hom("p1", GHom(C, M2, std::move(em)));
        pool.add_corner("e2", &m2);
    }
};

} // namespace

TEST_CASE("witness: identical elements give a replayable chain") {
    Fx f;
    auto x = phi(f.reg, *parse_word("p1", f.pool)).value;
    Rng rng(5);
    auto w = build_witness(f.reg, x, x, rng);
    REQUIRE(w.has_value());
    replay_witness(*w, true);
}

TEST_CASE("witness: element vs padded element") {
    Fx f;
    auto x = phi(f.reg, *parse_word("p1", f.pool)).value;
    S1Element pad = S1Element::zero(f.reg, x.B);
    pad.N = 2;
    pad.rep = Rep::trivial(f.reg.G, 2);
    pad.Pp = AMat(x.Bplus, 2, 2);
    pad.Pm = AMat(x.Bplus, 2, 2);
    auto y = s1_add(x, pad);
    Rng rng(7);
    auto w = build_witness(f.reg, x, y, rng);
    REQUIRE(w.has_value());
    replay_witness(*w, true);
}

TEST_CASE("witness: e11 vs e22 over M2 via an explicit conjugation chain") {
    Fx f;
    // two rank-one idempotent classes over M2 with the same key
    const GAlgebra* Bp = f.reg.unitized(f.M2).plus;
    S1Element a, b;
    a.B = b.B = f.M2;
    a.Bplus = b.Bplus = Bp;
    a.N = b.N = 1;
    a.rep = b.rep = Rep::trivial(f.reg.G, 1);
    a.Pp = AMat(Bp, 1, 1);
    a.Pp.set(0, 0, 0, Scalar(1)); // e11
    a.Pm = AMat(Bp, 1, 1);
    b.Pp = AMat(Bp, 1, 1);
    b.Pp.set(0, 0, 3, Scalar(1)); // e22
    b.Pm = AMat(Bp, 1, 1);
    a.standard = b.standard = true;
    a.validate();
    b.validate();
    CHECK(equiv(f.reg, a, b).verdict == Verdict::Equal);
    Rng rng(11);
    auto w = build_witness(f.reg, a, b, rng);
    REQUIRE(w.has_value());
    replay_witness(*w, true);
}

TEST_CASE("witness: refused for distinct keys and produced for pipeline pairs") {
    Fx f;
    auto one = phi(f.reg, *parse_word("p1", f.pool)).value;
    auto two = phi(f.reg, *parse_word("p1 + p1", f.pool)).value;
    Rng rng(13);
    CHECK(!build_witness(f.reg, one, two, rng).has_value());
    // corner round trip pair from the pipeline
    auto rt = phi(f.reg, *parse_word("p1 . e2_inv . e2", f.pool)).value;
    auto w = build_witness(f.reg, one, rt, rng);
    REQUIRE(w.has_value());
    replay_witness(*w, true);
}

TEST_CASE("witness: equivariant pair over C with Z2") {
    Fx f(FiniteGroup::cyclic(2));
    auto kg = kgroup(f.reg, f.C);
    REQUIRE(kg.determinate);
    REQUIRE(kg.rank == 2);
    // the trivial-irrep generator vs its padded, conjugated copy
    const auto& gen = kg.generators[0];
    S1Element pad = S1Element::zero(f.reg, f.C);
    pad.N = 2;
    pad.rep = Rep(f.reg.G, {Matrix::identity(2), [] {
                                Matrix s(2, 2);
                                s.at(0, 1) = Scalar(1);
                                s.at(1, 0) = Scalar(1);
                                return s;
                            }()});
    pad.Pp = AMat(gen.Bplus, 2, 2);
    pad.Pm = AMat(gen.Bplus, 2, 2);
    auto y = s1_add(pad, gen);
    Rng rng(17);
    auto w = build_witness(f.reg, gen, y, rng);
    REQUIRE(w.has_value());
    replay_witness(*w, true);
    // negative result: generators of different irreps are not witnessable
    CHECK(!build_witness(f.reg, kg.generators[0], kg.generators[1], rng).has_value());
}

TEST_CASE("witness: coefficient identities agree with brute path-ring expansion") {
    // independent oracle for the symbolic transvection check: expand
    // (1+sX) P (1-sX) fully in the path ring and square it
    Fx f;
    auto x = phi(f.reg, *parse_word("p1 . e2_inv . e2", f.pool)).value;
    Rng rng(29);
    auto w = build_witness(f.reg, x, x, rng);
    REQUIRE(w.has_value());
    S1Element st = w->start;
    int checked = 0;
    for (const auto& mv : w->moves) {
        if (mv.kind == WitnessMove::Transvection && st.N <= 12) {
            PathScalar s = PathScalar::s_var();
            PMat sX = lift_path_mat(mv.X);
            for (auto& entry : sX.e)
                for (auto& v : entry) v = v * s;
            AMat idm(st.Bplus, st.N, st.N);
            for (int i = 0; i < st.N; i++) idm.set(i, i, st.Bplus->dim - 1, Scalar(1));
            PMat W = lift_path_mat(idm) + sX;
            PMat Wi = lift_path_mat(idm) - sX;
            for (const AMat* P : {&st.Pp, &st.Pm}) {
                PMat path = W * lift_path_mat(*P) * Wi;
                CHECK(path * path == path);
            }
            checked++;
        }
        // apply the move to keep the state in sync
        S1Element next = st;
        switch (mv.kind) {
            case WitnessMove::TrivialAdd: {
                // general interleaved insertion at mv.coords
                int N = st.N + mv.summand.N;
                std::vector<int> src(N, 0);
                std::vector<bool> isnew(N, false);
                for (size_t k = 0; k < mv.coords.size(); k++) {
                    isnew[mv.coords[k]] = true;
                    src[mv.coords[k]] = (int)k;
                }
                int old = 0;
                for (int i = 0; i < N; i++)
                    if (!isnew[i]) src[i] = old++;
                S1Element r;
                r.B = st.B;
                r.Bplus = st.Bplus;
                r.N = N;
                std::vector<Matrix> ms;
                for (int g = 0; g < st.B->G->order; g++) {
                    Matrix m(N, N);
                    for (int i = 0; i < N; i++)
                        for (int j = 0; j < N; j++) {
                            if (isnew[i] != isnew[j]) continue;
                            m.at(i, j) = isnew[i] ? mv.summand.rep[g].at(src[i], src[j])
                                                  : st.rep[g].at(src[i], src[j]);
                        }
                    ms.push_back(std::move(m));
                }
                r.rep = Rep(st.B->G, std::move(ms));
                r.Pp = AMat(st.Bplus, N, N);
                r.Pm = AMat(st.Bplus, N, N);
                for (int i = 0; i < N; i++)
                    for (int j = 0; j < N; j++) {
                        if (isnew[i] != isnew[j]) continue;
                        const S1Element& from = isnew[i] ? mv.summand : st;
                        r.Pp.at(i, j) = from.Pp.at(src[i], src[j]);
                        r.Pm.at(i, j) = from.Pm.at(src[i], src[j]);
                    }
                next = r;
                break;
            }
            case WitnessMove::TrivialRemove: {
                std::vector<bool> in(st.N, false);
                for (int c : mv.coords) in[c] = true;
                std::vector<int> keep;
                for (int i = 0; i < st.N; i++)
                    if (!in[i]) keep.push_back(i);
                S1Element r;
                r.B = st.B;
                r.Bplus = st.Bplus;
                r.N = (int)keep.size();
                std::vector<Matrix> ms;
                for (int g = 0; g < st.B->G->order; g++) {
                    Matrix m(r.N, r.N);
                    for (int i2 = 0; i2 < r.N; i2++)
                        for (int j2 = 0; j2 < r.N; j2++) m.at(i2, j2) = st.rep[g].at(keep[i2], keep[j2]);
                    ms.push_back(std::move(m));
                }
                r.rep = Rep(st.B->G, std::move(ms));
                r.Pp = st.Pp.submatrix(keep);
                r.Pm = st.Pm.submatrix(keep);
                next = r;
                break;
            }
            case WitnessMove::Transvection: {
                AMat idm(st.Bplus, st.N, st.N);
                for (int i = 0; i < st.N; i++) idm.set(i, i, st.Bplus->dim - 1, Scalar(1));
                AMat Wm = idm + mv.X, Wim = idm - mv.X;
                if (mv.side != MoveSide::MinusOnly) next.Pp = Wm * st.Pp * Wim;
                if (mv.side != MoveSide::PlusOnly) next.Pm = Wm * st.Pm * Wim;
                break;
            }
        }
        st = next;
    }
    CHECK(checked > 0);
}

TEST_CASE("witness: tampered chains are rejected by the replayer") {
    Fx f;
    auto x = phi(f.reg, *parse_word("p1", f.pool)).value;
    auto rt = phi(f.reg, *parse_word("p1 . e2_inv . e2", f.pool)).value;
    Rng rng(19);
    auto w = build_witness(f.reg, x, rt, rng);
    REQUIRE(w.has_value());
    // flip the endpoint: replay must fail
    HomotopyWitness bad = *w;
    bad.end = phi(f.reg, *parse_word("p1 + p1", f.pool)).value;
    CHECK_THROWS_AS(replay_witness(bad), Error);
    // tamper with a transvection block
    HomotopyWitness bad2 = *w;
    for (auto& mv : bad2.moves)
        if (mv.kind == WitnessMove::Transvection) {
            mv.X = mv.X * Scalar(2);
            break;
        }
    CHECK_THROWS_AS(replay_witness(bad2), Error);
}
