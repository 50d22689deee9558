#include "testgen.hpp"

namespace gk {

ElementGen::ElementGen(Registry& r, const GAlgebra* b, Rng& rn)
    : reg(r), B(b), ctx([&] {
          auto c = block_context(r, b);
          if (!c) throw Error("ElementGen: target out of the decidable scope");
          return std::move(*c);
      }()),
      rng(rn) {}

Rep ElementGen::random_rep(int max_size, std::vector<int>& boundaries) {
    const FiniteGroup* G = B->G;
    // atoms: all one-dimensional irreducibles, plus the regular representation
    std::vector<Rep> atoms;
    const CharTable& t = reg.chars();
    for (int i = 0; i < t.size(); i++) {
        if (t.dim[i] != 1) continue;
        std::vector<Matrix> ms;
        for (int g = 0; g < G->order; g++) {
            Matrix m(1, 1);
            m.at(0, 0) = t.chi[i][G->class_of[g]];
            ms.push_back(std::move(m));
        }
        atoms.push_back(Rep(G, std::move(ms)));
    }
    if (G->order <= max_size) atoms.push_back(Rep::regular(G));
    Rep out = atoms[rng.below(atoms.size())];
    boundaries = {out.dim()};
    while (out.dim() < max_size && rng.chance(1, 2)) {
        const Rep& a = atoms[rng.below(atoms.size())];
        if (out.dim() + a.dim() > max_size) break;
        out = out.dsum(a);
        boundaries.push_back(a.dim());
    }
    return out;
}

Matrix ElementGen::random_pattern(const std::vector<int>& boundaries) {
    int N = 0;
    for (int b : boundaries) N += b;
    Matrix d(N, N);
    int at = 0;
    for (int b : boundaries) {
        if (rng.chance(1, 2))
            for (int i = 0; i < b; i++) d.at(at + i, at + i) = Scalar(1);
        at += b;
    }
    return d;
}

AMat ElementGen::random_ideal_idempotent(const Rep& rep, const Matrix& D) {
    int N = rep.dim();
    std::vector<Matrix> blocks;
    for (size_t k = 0; k < ctx.pres->sizes.size(); k++) {
        int nk = ctx.pres->sizes[k];
        Rep rho = rep.kron(ctx.block_reps[k]);
        int dB2 = N * nk;
        Matrix Dk = D.kron(Matrix::identity(nk));
        Matrix R = Matrix::identity(dB2) - Dk;
        // random vectors inside the complement of D
        int tries = (int)rng.range(0, 2);
        Matrix vecs(dB2, std::max(1, tries));
        for (int c = 0; c < vecs.cols; c++)
            for (int i = 0; i < dB2; i++)
                vecs.at(i, c) = Scalar(mpq_class(rng.range(-1, 1)));
        Matrix W = invariant_span(rho, R * vecs);
        if (W.cols == 0 || rng.chance(1, 4)) {
            blocks.push_back(Matrix(dB2, dB2));
            continue;
        }
        // projector onto W whose kernel contains the image of Dk
        Matrix Dimg = Dk.column_space();
        Matrix ext(dB2, W.cols + Dimg.cols + dB2);
        for (int i = 0; i < dB2; i++) {
            for (int j = 0; j < W.cols; j++) ext.at(i, j) = W.at(i, j);
            for (int j = 0; j < Dimg.cols; j++) ext.at(i, W.cols + j) = Dimg.at(i, j);
            ext.at(i, W.cols + Dimg.cols + i) = Scalar(1);
        }
        Matrix Bb = ext.column_space();
        Matrix diag(dB2, dB2);
        for (int i = 0; i < W.cols; i++) diag.at(i, i) = Scalar(1);
        Matrix P0 = Bb * diag * *Bb.inverse();
        Matrix acc(dB2, dB2);
        for (int g = 0; g < B->G->order; g++)
            acc = acc + rho[g] * P0 * *rho[g].inverse();
        blocks.push_back(acc * Scalar(mpq_class(1, B->G->order)));
    }
    AMat e = ctx.assemble(N, blocks, Matrix(N, N));
    if (!e.is_idempotent()) throw Error("testgen: ideal idempotent construction failed");
    return e;
}

std::pair<AMat, AMat> ElementGen::random_unipotent(const Rep& rep) {
    int N = rep.dim();
    for (int attempt = 0; attempt < 16; attempt++) {
        AMat n(ctx.Bplus, N, N);
        for (int r = 0; r < N; r++)
            for (int c = 0; c < N; c++) {
                if (!rng.chance(1, 3)) continue;
                for (int b = 0; b < B->dim; b++)
                    if (rng.chance(1, 2)) n.set(r, c, b, Scalar(mpq_class(rng.range(-1, 1))));
            }
        // average to an invariant element (entries stay in B)
        AMat acc(ctx.Bplus, N, N);
        for (int g = 0; g < B->G->order; g++) acc = acc + ambient_act(n, rep, g);
        acc = acc * Scalar(mpq_class(1, B->G->order));
        AMat w = acc;
        for (int i = 0; i < N; i++) {
            auto& cell = w.at(i, i);
            if (cell.empty()) cell.assign(ctx.Bplus->dim, Scalar());
            cell[ctx.Bplus->dim - 1] += Scalar(1);
        }
        // invert blockwise
        std::vector<Matrix> inv_blocks;
        bool ok = true;
        for (size_t k = 0; k < ctx.pres->sizes.size() && ok; k++) {
            Matrix wk = ctx.block_of(w, (int)k);
            auto iv = wk.inverse();
            if (!iv) ok = false;
            else inv_blocks.push_back(std::move(*iv));
        }
        if (!ok) continue;
        AMat wi = ctx.assemble(N, inv_blocks, Matrix::identity(N));
        AMat id(ctx.Bplus, N, N);
        for (int i = 0; i < N; i++) id.set(i, i, ctx.Bplus->dim - 1, Scalar(1));
        if (w * wi != id || wi * w != id) continue;
        return {w, wi};
    }
    throw Error("testgen: no invertible unipotent found");
}

S1Element ElementGen::random_s1(int max_n) {
    std::vector<int> bounds;
    Rep rep = random_rep(max_n, bounds);
    int N = rep.dim();
    Matrix D = random_pattern(bounds);
    AMat E = random_ideal_idempotent(rep, D);
    AMat Dm(ctx.Bplus, N, N);
    for (int i = 0; i < N; i++)
        if (!D.at(i, i).is_zero()) Dm.set(i, i, ctx.Bplus->dim - 1, Scalar(1));
    auto [w, wi] = random_unipotent(rep);
    S1Element x;
    x.B = B;
    x.Bplus = ctx.Bplus;
    x.N = N;
    x.rep = rep;
    x.Pp = w * (Dm + E) * wi;
    x.Pm = Dm;
    x.standard = true;
    x.validate();
    return x;
}

LevelOne ElementGen::random_levelone() {
    // corner size 1 or 2 with a diagonal action built from 1-dim atoms
    int k = rng.chance(1, 2) ? 1 : 2;
    Rep gamma = Rep::trivial(B->G, k);
    if (k == 2) {
        std::vector<int> bb;
        Rep a = random_rep(1, bb), b = random_rep(1, bb);
        gamma = a.dsum(b);
    }
    const auto& J = reg.matrix_algebra(B, k, gamma);
    Rep flat = gamma; // the k x k ambient over B+ carries ad(gamma)
    // two invariant idempotents of J as flat pure-B matrices
    auto mk = [&]() {
        Matrix zero(k, k);
        AMat e = random_ideal_idempotent(flat, zero);
        auto [w, wi] = random_unipotent(flat);
        return w * e * wi;
    };
    AMat jp = mk(), jm = mk();
    auto to_coords = [&](const AMat& m) {
        std::vector<Scalar> v(J.alg->dim);
        for (int p = 0; p < k; p++)
            for (int q = 0; q < k; q++) {
                const auto& entry = m.at(p, q);
                if (entry.empty()) continue;
                for (int b = 0; b < B->dim; b++) v[(p * k + q) * B->dim + b] = entry[b];
            }
        return v;
    };
    LevelOne l;
    l.source = reg.complex_line();
    l.target = B;
    l.corner = &J;
    if (rng.chance(1, 3)) {
        // ambient J (+) C with a shared scalar idempotent component
        const auto& D = reg.direct_sum(J.alg, reg.complex_line());
        l.X = D.alg;
        l.iota = D.inj_a;
        Scalar lam = rng.chance(1, 2) ? Scalar(1) : Scalar(0);
        auto mkhom = [&](const AMat& j) {
            Matrix col(D.alg->dim, 1);
            auto v = to_coords(j);
            for (int i = 0; i < J.alg->dim; i++) col.at(i, 0) = v[i];
            col.at(J.alg->dim, 0) = lam;
            return GHom(l.source, D.alg, std::move(col), true);
        };
        l.sp = mkhom(jp);
        l.sm = mkhom(jm);
    } else {
        l.X = J.alg;
        l.iota = GHom::id(J.alg);
        auto mkhom = [&](const AMat& j) {
            Matrix col(J.alg->dim, 1);
            auto v = to_coords(j);
            for (int i = 0; i < J.alg->dim; i++) col.at(i, 0) = v[i];
            return GHom(l.source, J.alg, std::move(col), true);
        };
        l.sp = mkhom(jp);
        l.sm = mkhom(jm);
    }
    l.validate(reg, false);
    return l;
}

GHom ElementGen::random_conjugated_hom(const GHom& base) {
    // post-compose with conjugation by an invertible invariant element of
    // the target (an inner automorphism)
    const GAlgebra* T = base.tgt;
    auto tctx = block_context(reg, T);
    if (!tctx || !T->is_unital()) return base;
    Rng& rn = rng;
    for (int attempt = 0; attempt < 8; attempt++) {
        // v = 1_T + invariant element
        std::vector<Scalar> n(T->dim);
        for (int b = 0; b < T->dim; b++)
            if (rn.chance(1, 3)) n[b] = Scalar(mpq_class(rn.range(-1, 1)));
        // average over the action
        std::vector<Scalar> avg(T->dim);
        for (int g = 0; g < T->G->order; g++) {
            auto moved = T->act_vec(g, n);
            for (int b = 0; b < T->dim; b++) avg[b] += moved[b];
        }
        for (int b = 0; b < T->dim; b++)
            avg[b] = avg[b] * Scalar(mpq_class(1, T->G->order)) + (*T->unit)[b];
        // invert by solving left-multiplication
        Matrix L(T->dim, T->dim);
        for (int b = 0; b < T->dim; b++) {
            std::vector<Scalar> eb(T->dim);
            eb[b] = Scalar(1);
            auto prod = T->mul(avg, eb);
            for (int r = 0; r < T->dim; r++) L.at(r, b) = prod[r];
        }
        auto Li = L.inverse();
        if (!Li) continue;
        Matrix rhs(T->dim, 1);
        for (int r = 0; r < T->dim; r++) rhs.at(r, 0) = (*T->unit)[r];
        auto vi = L.solve(rhs);
        if (!vi) continue;
        std::vector<Scalar> inv(T->dim);
        for (int r = 0; r < T->dim; r++) inv[r] = vi->at(r, 0);
        // ad(v) as a matrix
        Matrix ad(T->dim, T->dim);
        for (int b = 0; b < T->dim; b++) {
            std::vector<Scalar> eb(T->dim);
            eb[b] = Scalar(1);
            auto img = T->mul(T->mul(avg, eb), inv);
            for (int r = 0; r < T->dim; r++) ad.at(r, b) = img[r];
        }
        try {
            GHom conj(T, T, std::move(ad), true);
            return base.compose_then(conj);
        } catch (const Error&) {
            continue;
        }
    }
    return base;
}

} // namespace gk
