#include "gkcalc/witness.hpp"
#include <algorithm>

namespace gk {

namespace {

AMat scalar_identity(const GAlgebra* Aplus, int n) {
    AMat m(Aplus, n, n);
    for (int i = 0; i < n; i++) m.set(i, i, Aplus->dim - 1, Scalar(1));
    return m;
}

bool is_trivial_pair(const S1Element& s) { return s.Pp == s.Pm; }

/* interleave a summand into the state at the given resulting positions */
S1Element insert_at(const S1Element& st, const S1Element& summand, const std::vector<int>& coords) {
    int N = st.N + summand.N;
    std::vector<int> src(N, -1); // >=0: old coordinate, <0: -(summand idx)-1
    std::vector<bool> is_new(N, false);
    for (size_t t = 0; t < coords.size(); t++) {
        if (coords[t] < 0 || coords[t] >= N) throw Error("witness: insertion position out of range");
        is_new[coords[t]] = true;
        src[coords[t]] = -(int)t - 1;
    }
    int old = 0;
    for (int i = 0; i < N; i++)
        if (!is_new[i]) src[i] = old++;
    if (old != st.N || (int)coords.size() != summand.N)
        throw Error("witness: insertion shape mismatch");
    S1Element r;
    r.B = st.B;
    r.Bplus = st.Bplus;
    r.N = N;
    std::vector<Matrix> ms;
    for (int g = 0; g < st.B->G->order; g++) {
        Matrix m(N, N);
        for (int i = 0; i < N; i++)
            for (int j = 0; j < N; j++) {
                if (is_new[i] != is_new[j]) continue;
                m.at(i, j) = is_new[i] ? summand.rep[g].at(-src[i] - 1, -src[j] - 1)
                                       : st.rep[g].at(src[i], src[j]);
            }
        ms.push_back(std::move(m));
    }
    r.rep = Rep(st.B->G, std::move(ms));
    r.Pp = AMat(st.Bplus, N, N);
    r.Pm = AMat(st.Bplus, N, N);
    for (int i = 0; i < N; i++)
        for (int j = 0; j < N; j++) {
            if (is_new[i] != is_new[j]) continue;
            if (is_new[i]) {
                r.Pp.at(i, j) = summand.Pp.at(-src[i] - 1, -src[j] - 1);
                r.Pm.at(i, j) = summand.Pm.at(-src[i] - 1, -src[j] - 1);
            } else {
                r.Pp.at(i, j) = st.Pp.at(src[i], src[j]);
                r.Pm.at(i, j) = st.Pm.at(src[i], src[j]);
            }
        }
    r.standard = is_scalar_diag_idempotent(r.Pm);
    return r;
}

S1Element restrict_to(const S1Element& x, const std::vector<int>& keep) {
    S1Element r;
    r.B = x.B;
    r.Bplus = x.Bplus;
    r.N = (int)keep.size();
    std::vector<Matrix> ms;
    for (int g = 0; g < x.B->G->order; g++) {
        Matrix m(r.N, r.N);
        for (int i = 0; i < r.N; i++)
            for (int j = 0; j < r.N; j++) m.at(i, j) = x.rep[g].at(keep[i], keep[j]);
        ms.push_back(std::move(m));
    }
    r.rep = Rep(x.B->G, std::move(ms));
    r.Pp = x.Pp.submatrix(keep);
    r.Pm = x.Pm.submatrix(keep);
    r.standard = is_scalar_diag_idempotent(r.Pm);
    return r;
}

bool decoupled(const S1Element& x, const std::vector<int>& coords) {
    std::vector<bool> in(x.N, false);
    for (int c : coords) in[c] = true;
    for (int i = 0; i < x.N; i++)
        for (int j = 0; j < x.N; j++) {
            if (in[i] == in[j]) continue;
            for (const auto& m : x.rep.m)
                if (!m.at(i, j).is_zero()) return false;
            if (!x.Pp.entry_zero(i, j) || !x.Pm.entry_zero(i, j)) return false;
        }
    return true;
}

void apply_transvection(S1Element& st, const AMat& X, MoveSide side) {
    AMat id = scalar_identity(st.Bplus, st.N);
    AMat W = id + X;
    AMat Wi = id - X;
    if (side != MoveSide::MinusOnly) st.Pp = W * st.Pp * Wi;
    if (side != MoveSide::PlusOnly) st.Pm = W * st.Pm * Wi;
    st.standard = is_scalar_diag_idempotent(st.Pm);
}

void check_transvection_symbolic(const S1Element& before, const AMat& X, MoveSide side) {
    // The path is P(t) = (1 + sin t X) P (1 - sin t X) = P + s A - s^2 B
    // with A = XP - PX and B = XPX.  Since 1, s, s^2, s^3, s^4 are linearly
    // independent in the path ring, P(t)^2 = P(t) is equivalent to the four
    // coefficient identities below, which we verify exactly.  Invariance of
    // the whole path follows from invariance of P and X (checked by the
    // caller), because A and B are products of invariants.
    auto check_one = [&](const AMat& P) {
        AMat A = X * P - P * X;
        AMat B = X * P * X;
        if (P * A + A * P != A) throw Error("witness: path fails idempotency at order s");
        if (A * A - P * B - B * P != B * Scalar(-1))
            throw Error("witness: path fails idempotency at order s^2");
        if (!(A * B + B * A).is_zero()) throw Error("witness: path fails idempotency at order s^3");
        if (!(B * B).is_zero()) throw Error("witness: path fails idempotency at order s^4");
    };
    if (side != MoveSide::MinusOnly) check_one(before.Pp);
    if (side != MoveSide::PlusOnly) check_one(before.Pm);
}

} // namespace

void replay_witness(const HomotopyWitness& w, bool symbolic_paths) {
    S1Element st = w.start;
    st.validate();
    for (const auto& mv : w.moves) {
        switch (mv.kind) {
            case WitnessMove::TrivialAdd: {
                if (mv.summand.B != st.B) throw Error("witness: summand over a different target");
                mv.summand.validate();
                if (!is_trivial_pair(mv.summand))
                    throw Error("witness: added summand is not a trivial element");
                st = insert_at(st, mv.summand, mv.coords);
                break;
            }
            case WitnessMove::TrivialRemove: {
                std::vector<int> coords = mv.coords;
                std::sort(coords.begin(), coords.end());
                if (!decoupled(st, coords))
                    throw Error("witness: removed coordinates are coupled to the rest");
                S1Element part = restrict_to(st, coords);
                if (!is_trivial_pair(part))
                    throw Error("witness: removed part is not a trivial element");
                if (part.Pp != mv.summand.Pp || part.rep.m != mv.summand.rep.m)
                    throw Error("witness: removed part does not match the recorded summand");
                std::vector<int> keep;
                std::vector<bool> in(st.N, false);
                for (int c : coords) in[c] = true;
                for (int i = 0; i < st.N; i++)
                    if (!in[i]) keep.push_back(i);
                st = restrict_to(st, keep);
                break;
            }
            case WitnessMove::Transvection: {
                if (mv.X.A != st.Bplus || mv.X.rows != st.N || mv.X.cols != st.N)
                    throw Error("witness: transvection shape mismatch");
                if (!(mv.X * mv.X).is_zero()) throw Error("witness: X^2 != 0");
                if (!is_ambient_invariant(mv.X, st.rep))
                    throw Error("witness: transvection block is not invariant");
                if (mv.side != MoveSide::Both) {
                    Matrix Xs = scalar_part(mv.X);
                    Matrix Ps = scalar_part(mv.side == MoveSide::PlusOnly ? st.Pp : st.Pm);
                    if (Xs * Ps != Ps * Xs)
                        throw Error("witness: one-sided move changes the scalar part");
                }
                if (symbolic_paths) check_transvection_symbolic(st, mv.X, mv.side);
                apply_transvection(st, mv.X, mv.side);
                break;
            }
        }
        st.validate();
    }
    if (st.B != w.end.B || st.N != w.end.N || !(st.Pp == w.end.Pp) || !(st.Pm == w.end.Pm))
        throw Error("witness: chain does not reproduce the target element");
    for (int g = 0; g < st.B->G->order; g++)
        if (st.rep[g] != w.end.rep[g]) throw Error("witness: ambient representation mismatch");
}

// ---------------------------------------------------------------------------
// synthesis

namespace {

/* G-commuting invertible over M_N(B+) conjugating invariant idempotent p to
 * q, assembled blockwise; nullopt if some block has mismatched characters */
std::optional<std::pair<AMat, AMat>> conjugator(const BlockContext& d, const Rep& amb, const AMat& p,
                                                const AMat& q, Rng& rng, bool force_extra_identity) {
    int N = p.rows;
    std::vector<Matrix> vk, vki;
    for (size_t k = 0; k < d.pres->sizes.size(); k++) {
        Rep rho = amb.kron(d.block_reps[k]);
        Matrix pk = d.block_of(p, (int)k), qk = d.block_of(q, (int)k);
        auto v = equivariant_conjugator(rho, pk, qk, rng);
        if (!v) return std::nullopt;
        vk.push_back(*v);
        vki.push_back(*v->inverse());
    }
    Matrix vs, vsi;
    if (force_extra_identity) {
        vs = Matrix::identity(N);
        vsi = Matrix::identity(N);
    } else {
        auto v = equivariant_conjugator(amb, scalar_part(p), scalar_part(q), rng);
        if (!v) return std::nullopt;
        vs = *v;
        vsi = *v->inverse();
    }
    AMat V = d.assemble(N, vk, vs);
    AMat Vi = d.assemble(N, vki, vsi);
    if (V * Vi != scalar_identity(d.Bplus, N)) return std::nullopt;
    if (V * p != q * V) return std::nullopt;
    return std::make_pair(std::move(V), std::move(Vi));
}

AMat block_at(const GAlgebra* Bplus, int size, int bi, int bj, const AMat& content) {
    // size x size block matrix (2x2 of N x N blocks) with `content` at (bi,bj)
    int n = content.rows;
    AMat out(Bplus, 2 * n, 2 * n);
    for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) out.at(bi * n + i, bj * n + j) = content.at(i, j);
    (void)size;
    return out;
}

struct Builder {
    Registry& reg;
    const BlockContext& d;
    std::vector<WitnessMove> moves;
    S1Element st;

    void trivial_add(const AMat& u, const Rep& urep, bool at_left) {
        S1Element s;
        s.B = st.B;
        s.Bplus = st.Bplus;
        s.N = u.rows;
        s.rep = urep;
        s.Pp = u;
        s.Pm = u;
        s.standard = is_scalar_diag_idempotent(u);
        WitnessMove mv;
        mv.kind = WitnessMove::TrivialAdd;
        mv.summand = s;
        for (int i = 0; i < s.N; i++) mv.coords.push_back(at_left ? i : st.N + i);
        moves.push_back(mv);
        st = at_left ? s1_add(s, st) : s1_add(st, s);
    }
    void trivial_add_right(const AMat& u, const Rep& urep) { trivial_add(u, urep, false); }
    void trivial_add_left(const AMat& u, const Rep& urep) { trivial_add(u, urep, true); }
    void trivial_remove(const std::vector<int>& coords) {
        WitnessMove mv;
        mv.kind = WitnessMove::TrivialRemove;
        mv.coords = coords;
        mv.summand = restrict_to(st, coords);
        if (!is_trivial_pair(mv.summand)) throw Error("witness builder: removal of nontrivial part");
        moves.push_back(mv);
        std::vector<bool> in(st.N, false);
        for (int c : coords) in[c] = true;
        std::vector<int> keep;
        for (int i = 0; i < st.N; i++)
            if (!in[i]) keep.push_back(i);
        st = restrict_to(st, keep);
    }
    void transvect(const AMat& X, MoveSide side) {
        WitnessMove mv;
        mv.kind = WitnessMove::Transvection;
        mv.X = X;
        mv.side = side;
        moves.push_back(mv);
        apply_transvection(st, X, side);
    }

    /* conjugate the whole pair by V: double with a zero block, run the
     * six-factor decomposition of diag(V, V^-1), drop the zero block */
    void pair_conjugate(const AMat& V, const AMat& Vi) {
        int n = st.N;
        AMat zero(st.Bplus, n, n);
        trivial_add_right(zero, st.rep);
        // diag(V,V^-1) = E12(V) E21(-V^-1) E12(V) E21(1) E12(-1) E21(1);
        // conjugations compose left-to-right, so apply the last factor first
        auto E12 = [&](const AMat& a) { return block_at(st.Bplus, 2 * n, 0, 1, a); };
        auto E21 = [&](const AMat& a) { return block_at(st.Bplus, 2 * n, 1, 0, a); };
        AMat one = scalar_identity(st.Bplus, n);
        transvect(E21(one), MoveSide::Both);
        transvect(E12(one * Scalar(-1)), MoveSide::Both);
        transvect(E21(one), MoveSide::Both);
        transvect(E12(V), MoveSide::Both);
        transvect(E21(Vi * Scalar(-1)), MoveSide::Both);
        transvect(E12(V), MoveSide::Both);
        std::vector<int> gone;
        for (int i = n; i < 2 * n; i++) gone.push_back(i);
        trivial_remove(gone);
    }

    /* conjugate only the positive component by V = 1 + n with ideal n,
     * using the relative four-factor decomposition
     * diag(V,V^-1) = E21(-(u+m)) E12(n) E21(u) E12(m), u = 1_B 1_N */
    void plus_conjugate_relative(const AMat& V, const AMat& Vi) {
        int n0 = st.N;
        AMat id = scalar_identity(st.Bplus, n0);
        AMat nmat = V - id;
        AMat mmat = Vi - id;
        // u = diag of the unit of B (an ideal entry since B is unital)
        AMat u(st.Bplus, n0, n0);
        for (int i = 0; i < n0; i++) {
            std::vector<Scalar> entry(st.Bplus->dim);
            for (int b = 0; b < st.B->dim; b++) entry[b] = (*st.B->unit)[b];
            u.at(i, i) = std::move(entry);
        }
        AMat zero(st.Bplus, n0, n0);
        trivial_add_right(zero, st.rep);
        auto E12 = [&](const AMat& a) { return block_at(st.Bplus, 2 * n0, 0, 1, a); };
        auto E21 = [&](const AMat& a) { return block_at(st.Bplus, 2 * n0, 1, 0, a); };
        transvect(E12(mmat), MoveSide::PlusOnly);
        transvect(E21(u), MoveSide::PlusOnly);
        transvect(E12(nmat), MoveSide::PlusOnly);
        transvect(E21((u + mmat) * Scalar(-1)), MoveSide::PlusOnly);
        std::vector<int> gone;
        for (int i = n0; i < 2 * n0; i++) gone.push_back(i);
        trivial_remove(gone);
    }
};

/* atoms of the representation alone (finest invariant coordinate blocks) */
std::vector<std::vector<int>> rep_atoms(const Rep& rep) {
    int N = rep.dim();
    AMat dummy(nullptr, 0, 0);
    (void)dummy;
    std::vector<int> parent(N);
    for (int i = 0; i < N; i++) parent[i] = i;
    std::function<int(int)> find = [&](int i) { return parent[i] == i ? i : parent[i] = find(parent[i]); };
    for (const auto& m : rep.m)
        for (int i = 0; i < N; i++)
            for (int j = 0; j < N; j++)
                if (i != j && (!m.at(i, j).is_zero() || !m.at(j, i).is_zero()))
                    parent[find(i)] = find(j);
    std::map<int, std::vector<int>> comps;
    for (int i = 0; i < N; i++) comps[find(i)].push_back(i);
    std::vector<std::vector<int>> out;
    for (auto& [r, c] : comps) out.push_back(std::move(c));
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a[0] < b[0]; });
    return out;
}

/* canonicalization of one side: common ambient padding is done by the
 * caller; this runs steps B (add complement of the negative) and C
 * (conjugate the negative to E = diag(1..1,0..0)) */
void canonicalize_negative(Builder& b, Rng& rng) {
    int M = b.st.N;
    AMat idM = scalar_identity(b.st.Bplus, M);
    AMat comp = idM - b.st.Pm;
    bool scalar_neg = is_scalar_diag_idempotent(b.st.Pm);
    Rep repW = b.st.rep;
    b.trivial_add_right(comp, repW);
    int M2 = b.st.N;
    AMat E(b.st.Bplus, M2, M2);
    for (int i = 0; i < M; i++) E.set(i, i, b.st.Bplus->dim - 1, Scalar(1));
    if (scalar_neg) {
        // the negative is diag(D, 1-D) over twin copies of the same
        // representation; swapping the twin atoms wherever D = 0 yields E
        // with plus-minus-one conjugators only
        Matrix D = scalar_part(b.st.Pm);
        for (const auto& atom : rep_atoms(repW)) {
            if (!D.at(atom[0], atom[0]).is_zero()) continue;
            // rotate atom <-> its twin (offset by M): three transvections
            AMat X12(b.st.Bplus, M2, M2), X21(b.st.Bplus, M2, M2);
            for (int c : atom) {
                X12.set(c, c + M, b.st.Bplus->dim - 1, Scalar(1));
                X21.set(c + M, c, b.st.Bplus->dim - 1, Scalar(1));
            }
            b.transvect(X21, MoveSide::Both);
            b.transvect(X12 * Scalar(-1), MoveSide::Both);
            b.transvect(X21, MoveSide::Both);
        }
    } else {
        auto vc = conjugator(b.d, b.st.rep, b.st.Pm, E, rng, false);
        if (!vc) throw Error("witness builder: negative cannot be canonicalized");
        b.pair_conjugate(vc->first, vc->second);
    }
    if (b.st.Pm != E) throw Error("witness builder: canonical negative mismatch");
}

} // namespace

std::optional<HomotopyWitness> build_witness(Registry& reg, const S1Element& x, const S1Element& y,
                                             Rng& rng) {
    if (x.B != y.B) return std::nullopt;
    auto ver = equiv(reg, x, y);
    if (ver.verdict != Verdict::Equal) return std::nullopt;
    auto d = block_context(reg, x.B);
    if (!d) return std::nullopt;

    HomotopyWitness w;
    w.start = x;
    w.end = y;

    // left chain from x, right chain from y; they meet at the state reached
    // by the y side, so record y's moves and reverse them at the end
    Builder bx{reg, *d};
    bx.st = x;
    Builder by{reg, *d};
    by.st = y;

    // drop decoupled trivial components first to keep the chain small
    for (Builder* b : {&bx, &by}) {
        auto gone = compressible_coords(b->st);
        if (!gone.empty() && (int)gone.size() < b->st.N) b->trivial_remove(gone);
    }

    // step A: common ambient W = rep(x) (+) rep(y)
    int nx = bx.st.N, ny = by.st.N;
    Rep rx = bx.st.rep, ry = by.st.rep;
    AMat zx(x.Bplus, ny, ny);
    bx.trivial_add_right(zx, ry);
    AMat zy(x.Bplus, nx, nx);
    by.trivial_add_left(zy, rx);

    // steps B and C on both sides
    canonicalize_negative(bx, rng);
    canonicalize_negative(by, rng);

    // middle: one-sided conjugation of the positive A -> B with a
    // conjugator that is 1 modulo the ideal
    if (bx.st.N != by.st.N) throw Error("witness builder: sizes diverged");
    auto vm = conjugator(*d, bx.st.rep, bx.st.Pp, by.st.Pp, rng, true);
    if (!vm) throw Error("witness builder: positives cannot be matched in scope");
    bx.plus_conjugate_relative(vm->first, vm->second);
    if (!(bx.st.Pp == by.st.Pp) || !(bx.st.Pm == by.st.Pm))
        throw Error("witness builder: chains failed to meet");

    // append the reverse of y's chain: add/remove are exact inverses with
    // the same coordinates, transvections invert by negating the block
    HomotopyWitness& W = w;
    W.moves = std::move(bx.moves);
    S1Element sim = bx.st;
    for (auto it = by.moves.rbegin(); it != by.moves.rend(); ++it) {
        WitnessMove mv = *it;
        if (mv.kind == WitnessMove::TrivialAdd) mv.kind = WitnessMove::TrivialRemove;
        else if (mv.kind == WitnessMove::TrivialRemove) mv.kind = WitnessMove::TrivialAdd;
        else mv.X = mv.X * Scalar(-1);
        // keep a simulated state to assert the chain lands on y
        switch (mv.kind) {
            case WitnessMove::TrivialAdd:
                sim = insert_at(sim, mv.summand, mv.coords);
                break;
            case WitnessMove::TrivialRemove: {
                std::vector<bool> in(sim.N, false);
                for (int c : mv.coords) in[c] = true;
                std::vector<int> keep;
                for (int i = 0; i < sim.N; i++)
                    if (!in[i]) keep.push_back(i);
                sim = restrict_to(sim, keep);
                break;
            }
            case WitnessMove::Transvection:
                apply_transvection(sim, mv.X, mv.side);
                break;
        }
        W.moves.push_back(std::move(mv));
    }
    if (!(sim.Pp == y.Pp) || !(sim.Pm == y.Pm) || sim.N != y.N)
        throw Error("witness builder: reversed chain does not land on y");
    for (int g = 0; g < y.B->G->order; g++)
        if (sim.rep[g] != y.rep[g]) throw Error("witness builder: reversed chain rep mismatch");
    return w;
}

} // namespace gk
