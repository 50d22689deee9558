#include "gkcalc/levelone.hpp"
#include "gkcalc/oracle.hpp"
#include <algorithm>
#include <functional>
#include <map>

namespace gk {

// ---------------------------------------------------------------------------
// S1 elements

bool is_scalar_diag_idempotent(const AMat& m) {
    if (m.rows != m.cols) return false;
    int unit_idx = m.A->dim - 1;
    for (int r = 0; r < m.rows; r++)
        for (int c = 0; c < m.cols; c++) {
            const auto& entry = m.at(r, c);
            if (entry.empty()) continue;
            for (int b = 0; b < m.A->dim; b++) {
                if (entry[b].is_zero()) continue;
                if (r != c || b != unit_idx) return false;
                if (!entry[b].is_one()) return false;
            }
        }
    return true;
}

bool S1Element::difference_in_ideal() const {
    int unit_idx = Bplus->dim - 1;
    for (int r = 0; r < N; r++)
        for (int c = 0; c < N; c++)
            if (Pp.coeff(r, c, unit_idx) != Pm.coeff(r, c, unit_idx)) return false;
    return true;
}

void S1Element::validate() const {
    if (Pp.A != Bplus || Pm.A != Bplus) throw Error("S1: entries must live in B+");
    if (Pp.rows != N || Pp.cols != N || Pm.rows != N || Pm.cols != N)
        throw Error("S1: stabilization size mismatch");
    if ((int)rep.m.size() != B->G->order) throw Error("S1: matrix action missing");
    for (const auto& m : rep.m)
        if (m.rows != N || m.cols != N) throw Error("S1: matrix action shape mismatch");
    if (!Pp.is_idempotent()) throw Error("S1: P+ is not idempotent");
    if (!Pm.is_idempotent()) throw Error("S1: P- is not idempotent");
    if (!is_ambient_invariant(Pp, rep)) throw Error("S1: P+ is not invariant");
    if (!is_ambient_invariant(Pm, rep)) throw Error("S1: P- is not invariant");
    if (!difference_in_ideal()) throw Error("S1: P+ - P- has a unitized part");
    if (standard && !is_scalar_diag_idempotent(Pm))
        throw Error("S1: standard flag set but P- is not a scalar diagonal idempotent");
}

S1Element S1Element::zero(Registry& reg, const GAlgebra* B) {
    S1Element z;
    z.B = B;
    z.Bplus = reg.unitized(B).plus;
    z.N = 0;
    z.rep = Rep(B->G, std::vector<Matrix>(B->G->order, Matrix(0, 0)));
    z.Pp = AMat(z.Bplus, 0, 0);
    z.Pm = AMat(z.Bplus, 0, 0);
    z.standard = true;
    return z;
}

S1Element s1_add(const S1Element& x, const S1Element& y) {
    if (x.B != y.B) throw Error("s1_add: mismatched targets");
    S1Element r;
    r.B = x.B;
    r.Bplus = x.Bplus;
    r.N = x.N + y.N;
    std::vector<Matrix> ms;
    for (int g = 0; g < x.B->G->order; g++) ms.push_back(x.rep[g].dsum(y.rep[g]));
    r.rep = Rep(x.B->G, std::move(ms));
    r.Pp = x.Pp.dsum(y.Pp);
    r.Pm = x.Pm.dsum(y.Pm);
    r.standard = x.standard && y.standard;
    return r;
}

S1Element s1_negate(const S1Element& x) {
    S1Element r = x;
    std::swap(r.Pp, r.Pm);
    r.standard = is_scalar_diag_idempotent(r.Pm);
    return r;
}

std::vector<std::vector<int>> rep_blocks(const Rep& rep, const AMat& Pp, const AMat& Pm) {
    int N = Pp.rows;
    std::vector<int> parent(N);
    for (int i = 0; i < N; i++) parent[i] = i;
    std::function<int(int)> find = [&](int i) { return parent[i] == i ? i : parent[i] = find(parent[i]); };
    auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
    for (const auto& m : rep.m)
        for (int i = 0; i < N; i++)
            for (int j = 0; j < N; j++)
                if (i != j && (!m.at(i, j).is_zero() || !m.at(j, i).is_zero())) unite(i, j);
    for (const AMat* P : {&Pp, &Pm})
        for (int i = 0; i < N; i++)
            for (int j = 0; j < N; j++)
                if (i != j && (!P->entry_zero(i, j) || !P->entry_zero(j, i))) unite(i, j);
    std::map<int, std::vector<int>> comps;
    for (int i = 0; i < N; i++) comps[find(i)].push_back(i);
    std::vector<std::vector<int>> out;
    for (auto& [root, coords] : comps) out.push_back(std::move(coords));
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a[0] < b[0]; });
    return out;
}

std::vector<int> compressible_coords(const S1Element& x) {
    std::vector<int> gone;
    if (x.N == 0) return gone;
    auto comps = rep_blocks(x.rep, x.Pp, x.Pm);
    for (const auto& comp : comps) {
        bool trivial = true;
        for (int r : comp)
            for (int c : comp) {
                const auto& a = x.Pp.at(r, c);
                const auto& b = x.Pm.at(r, c);
                for (int k = 0; k < x.Bplus->dim && trivial; k++) {
                    Scalar av = a.empty() ? Scalar() : a[k];
                    Scalar bv = b.empty() ? Scalar() : b[k];
                    if (av != bv) trivial = false;
                }
            }
        if (trivial)
            for (int c : comp) gone.push_back(c);
    }
    std::sort(gone.begin(), gone.end());
    return gone;
}

S1Element s1_compress(const S1Element& x) {
    if (x.N == 0) return x;
    auto gone = compressible_coords(x);
    std::vector<bool> in(x.N, false);
    for (int c : gone) in[c] = true;
    std::vector<int> keep;
    for (int i = 0; i < x.N; i++)
        if (!in[i]) keep.push_back(i);
    if ((int)keep.size() == x.N) return x;
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
    r.standard = x.standard || is_scalar_diag_idempotent(r.Pm);
    return r;
}

// ---------------------------------------------------------------------------
// path matrices

PMat path_ambient_act(const PMat& p, const Rep& amb_rep, int g) {
    const GAlgebra* Ap = p.A;
    PMat moved(Ap, p.rows, p.cols);
    for (int r = 0; r < p.rows; r++)
        for (int c = 0; c < p.cols; c++) {
            const auto& entry = p.at(r, c);
            if (entry.empty()) continue;
            std::vector<PathScalar> out(Ap->dim);
            for (int j = 0; j < Ap->dim; j++) {
                if (entry[j].is_zero()) continue;
                for (int i = 0; i < Ap->dim; i++) {
                    const Scalar& a = Ap->action[g].at(i, j);
                    if (a.is_zero()) continue;
                    out[i] += entry[j] * PathScalar(a);
                }
            }
            moved.at(r, c) = std::move(out);
        }
    auto inv = amb_rep[g].inverse();
    if (!inv) throw Error("path_ambient_act: singular ambient matrix");
    return moved.scalar_lmul(amb_rep[g]).scalar_rmul(*inv);
}

AMat eval_path_mat(const PMat& p, bool at_one) {
    AMat out(p.A, p.rows, p.cols);
    for (int r = 0; r < p.rows; r++)
        for (int c = 0; c < p.cols; c++) {
            const auto& entry = p.at(r, c);
            if (entry.empty()) continue;
            std::vector<Scalar> v(p.A->dim);
            for (int b = 0; b < p.A->dim; b++) v[b] = at_one ? entry[b].eval1() : entry[b].eval0();
            out.at(r, c) = std::move(v);
        }
    return out;
}

PMat lift_path_mat(const AMat& p) {
    PMat out(p.A, p.rows, p.cols);
    for (int r = 0; r < p.rows; r++)
        for (int c = 0; c < p.cols; c++) {
            const auto& entry = p.at(r, c);
            if (entry.empty()) continue;
            std::vector<PathScalar> v(p.A->dim);
            for (int b = 0; b < p.A->dim; b++) v[b] = PathScalar(entry[b]);
            out.at(r, c) = std::move(v);
        }
    return out;
}

void S1Homotopy::validate() const {
    if (!(Pp * Pp == Pp)) throw Error("S1 homotopy: P+(t) is not idempotent in the path ring");
    if (!(Pm * Pm == Pm)) throw Error("S1 homotopy: P-(t) is not idempotent in the path ring");
    for (int g = 0; g < B->G->order; g++) {
        if (!(path_ambient_act(Pp, rep, g) == Pp)) throw Error("S1 homotopy: P+(t) not invariant");
        if (!(path_ambient_act(Pm, rep, g) == Pm)) throw Error("S1 homotopy: P-(t) not invariant");
    }
    int unit_idx = Bplus->dim - 1;
    for (int r = 0; r < N; r++)
        for (int c = 0; c < N; c++) {
            PathScalar a = Pp.at(r, c).empty() ? PathScalar() : Pp.at(r, c)[unit_idx];
            PathScalar b = Pm.at(r, c).empty() ? PathScalar() : Pm.at(r, c)[unit_idx];
            if (!(a == b)) throw Error("S1 homotopy: difference leaves the ideal along the path");
        }
}

std::pair<S1Element, S1Element> S1Homotopy::endpoints() const {
    S1Element a, b;
    a.B = b.B = B;
    a.Bplus = b.Bplus = Bplus;
    a.N = b.N = N;
    a.rep = b.rep = rep;
    a.Pp = eval_path_mat(Pp, false);
    a.Pm = eval_path_mat(Pm, false);
    b.Pp = eval_path_mat(Pp, true);
    b.Pm = eval_path_mat(Pm, true);
    a.standard = is_scalar_diag_idempotent(a.Pm);
    b.standard = is_scalar_diag_idempotent(b.Pm);
    a.validate();
    b.validate();
    return {a, b};
}

// ---------------------------------------------------------------------------
// chi: generators as level-one diagrams

namespace {

LevelOne chi_hom(Registry& reg, const GHom& phi, const std::string&) {
    LevelOne l;
    l.source = phi.src;
    l.target = phi.tgt;
    l.corner = &reg.matrix_algebra(phi.tgt, 1, Rep::trivial(phi.tgt->G, 1));
    l.X = l.corner->alg; // M_1(C) (x) B, canonically B itself
    // iota = identity on J; the splits land in X through the same renaming
    l.iota = GHom(l.corner->alg, l.X, Matrix::identity(l.X->dim), false);
    l.sp = GHom(phi.src, l.X, phi.mat, false);
    l.sm = GHom::zero(phi.src, l.X);
    return l;
}

} // namespace

LevelOne chi(Registry& reg, const Generator& g) {
    switch (g.kind) {
        case Generator::Hom: return chi_hom(reg, g.hom, g.name);
        case Generator::Identity: return chi_hom(reg, GHom::id(g.id_obj), g.name);
        case Generator::CornerInv: {
            LevelOne l;
            l.source = g.corner->alg; // J
            l.target = g.corner->base;
            l.corner = g.corner;
            l.X = g.corner->alg;
            l.iota = GHom::id(l.X);
            l.sp = GHom::id(l.X);
            l.sm = GHom::zero(l.source, l.X);
            return l;
        }
        case Generator::Split: {
            const auto& seq = *g.seq;
            LevelOne l;
            l.source = seq.f.src; // M
            l.target = seq.i.src; // J
            l.corner = &reg.matrix_algebra(l.target, 1, Rep::trivial(l.target->G, 1));
            l.X = seq.f.src;
            // iota: the corner copy of J includes into M via i
            l.iota = GHom(l.corner->alg, l.X, seq.i.mat, false);
            l.sp = GHom::id(l.X);
            l.sm = seq.f.compose_then(seq.s);
            if (reg.fault_mode) std::swap(l.sp, l.sm);
            return l;
        }
    }
    throw Error("chi: unknown generator kind");
}

void LevelOne::validate(Registry& reg, bool deep) const {
    if (corner->base != target) throw Error("level-one: corner does not embed the target");
    if (iota.src != corner->alg || iota.tgt != X) throw Error("level-one: iota has wrong endpoints");
    if (sp.src != source || sp.tgt != X || sm.src != source || sm.tgt != X)
        throw Error("level-one: splits have wrong endpoints");
    if (iota.mat.rank() != iota.src->dim) throw Error("level-one: iota is not injective");
    // sigma+ - sigma- lands in iota(J) on every basis element
    Matrix diff = sp.mat - sm.mat;
    if (!iota.mat.solve(diff)) throw Error("level-one: sigma+ - sigma- does not land in the ideal");
    if (deep) {
        if (!image_is_ideal(iota)) throw Error("level-one: iota image is not a two-sided ideal");
        // build the middle M = iota(J) + (sm (+) id)(A) inside X (+) A and
        // run the split-exactness report on J -> M -> A
        const GAlgebra* A = source;
        const GAlgebra* J = corner->alg;
        int dJ = J->dim, dA = A->dim, dM = dJ + dA;
        auto solve_j = [&](const std::vector<Scalar>& xv) {
            Matrix rhs(X->dim, 1);
            for (int r = 0; r < X->dim; r++) rhs.at(r, 0) = xv[r];
            auto s = iota.mat.solve(rhs);
            if (!s) throw Error("level-one: product leaves the ideal");
            std::vector<Scalar> out(dJ);
            for (int r = 0; r < dJ; r++) out[r] = s->at(r, 0);
            return out;
        };
        GAlgebra M;
        M.name = "[" + X->name + "[]" + A->name + "]";
        while (reg.named.count(M.name)) M.name += "'";
        M.G = X->G;
        M.dim = dM;
        for (int i = 0; i < dJ; i++) M.basis.push_back("j" + std::to_string(i));
        for (int i = 0; i < dA; i++) M.basis.push_back("a" + std::to_string(i));
        M.prod_table.assign(size_t(dM) * dM, {});
        auto set_cell = [&](int i, int j, const std::vector<Scalar>& jpart, const std::vector<Scalar>& apart) {
            auto& cell = M.prod_table[size_t(i) * dM + j];
            for (int k = 0; k < dJ; k++)
                if (!jpart[k].is_zero()) cell.push_back({k, jpart[k]});
            for (int k = 0; k < dA; k++)
                if (!apart[k].is_zero()) cell.push_back({dJ + k, apart[k]});
        };
        std::vector<std::vector<Scalar>> jb, ab, sm_img;
        for (int i = 0; i < dJ; i++) {
            std::vector<Scalar> v(dJ);
            v[i] = Scalar(1);
            jb.push_back(v);
        }
        for (int i = 0; i < dA; i++) {
            std::vector<Scalar> v(dA);
            v[i] = Scalar(1);
            ab.push_back(v);
            sm_img.push_back(sm.apply(v));
        }
        for (int i = 0; i < dJ; i++)
            for (int j = 0; j < dJ; j++)
                set_cell(i, j, J->mul(jb[i], jb[j]), std::vector<Scalar>(dA));
        for (int i = 0; i < dJ; i++)
            for (int j = 0; j < dA; j++) {
                auto prod = X->mul(iota.apply(jb[i]), sm_img[j]);
                set_cell(i, dJ + j, solve_j(prod), std::vector<Scalar>(dA));
                auto prod2 = X->mul(sm_img[j], iota.apply(jb[i]));
                set_cell(dJ + j, i, solve_j(prod2), std::vector<Scalar>(dA));
            }
        for (int i = 0; i < dA; i++)
            for (int j = 0; j < dA; j++) {
                // (sm(a)+a)(sm(b)+b) = (sm(ab)+ab) plus the ideal correction
                auto abv = A->mul(ab[i], ab[j]);
                auto corr = X->mul(sm_img[i], sm_img[j]);
                auto smab = sm.apply(abv);
                for (int r = 0; r < X->dim; r++) corr[r] = corr[r] - smab[r];
                set_cell(dJ + i, dJ + j, solve_j(corr), abv);
            }
        for (int g2 = 0; g2 < M.G->order; g2++) M.action.push_back(J->action[g2].dsum(A->action[g2]));
        M.certified = true;
        const GAlgebra* Malg = reg.install(std::move(M), false);
        Matrix im(dM, dJ), fm(dA, dM), smm(dM, dA);
        for (int i = 0; i < dJ; i++) im.at(i, i) = Scalar(1);
        for (int i = 0; i < dA; i++) fm.at(i, dJ + i) = Scalar(1);
        for (int i = 0; i < dA; i++) smm.at(dJ + i, i) = Scalar(1);
        GHom ih(J, Malg, std::move(im), true);
        GHom fh(Malg, A, std::move(fm), true);
        GHom sh(A, Malg, std::move(smm), true);
        auto srep = check_splitexact(ih, fh, sh);
        if (!srep.ok) {
            std::string why;
            for (auto& x : srep.failures) why += x + "; ";
            throw Error("level-one: middle sequence invalid: " + why);
        }
    }
}

// ---------------------------------------------------------------------------
// to_word

WordPtr to_word(Registry& reg, const S1Element& x0) {
    // pad one trivially-acted coordinate in front when e_11 is not an
    // invariant slot of the representation
    S1Element x = x0;
    bool e11_ok = x.N > 0;
    for (int g = 0; g < x0.B->G->order && e11_ok; g++) {
        for (int i = 1; i < x.N; i++)
            if (!x.rep[g].at(i, 0).is_zero() || !x.rep[g].at(0, i).is_zero()) e11_ok = false;
    }
    if (!e11_ok) {
        S1Element pad = S1Element::zero(reg, x.B);
        pad.N = 1;
        pad.rep = Rep::trivial(x.B->G, 1);
        pad.Pp = AMat(x.Bplus, 1, 1);
        pad.Pm = AMat(x.Bplus, 1, 1);
        x = s1_add(pad, x0);
    }
    const GAlgebra* B = x.B;
    const GAlgebra* Bp = x.Bplus;
    int N = x.N;
    Matrix slot(N, N);
    slot.at(0, 0) = Scalar(1);
    const auto& Jdata = reg.matrix_algebra(B, N, x.rep, slot);
    const GAlgebra* J = Jdata.alg;
    int dB = B->dim, dJ = J->dim;

    // flat matrix over B+ from J coordinates (pure B entries)
    auto flat_of = [&](const std::vector<Scalar>& v) {
        AMat m(Bp, N, N);
        for (int p = 0; p < N; p++)
            for (int q = 0; q < N; q++)
                for (int b = 0; b < dB; b++) {
                    const Scalar& c = v[(p * N + q) * dB + b];
                    if (!c.is_zero()) m.set(p, q, b, c);
                }
        return m;
    };
    auto j_of_flat = [&](const AMat& m) {
        std::vector<Scalar> v(dJ);
        for (int p = 0; p < N; p++)
            for (int q = 0; q < N; q++) {
                const auto& entry = m.at(p, q);
                if (entry.empty()) continue;
                if (!entry[dB].is_zero()) throw Error("to_word: entry has a unitized part");
                for (int b = 0; b < dB; b++) v[(p * N + q) * dB + b] = entry[b];
            }
        return v;
    };

    // middle algebra M = J + C m0 with m0 = (P-, 1)
    int dM = dJ + 1;
    GAlgebra M;
    M.name = "Mid(" + J->name + ")";
    while (reg.named.count(M.name)) M.name += "'";
    M.G = B->G;
    M.dim = dM;
    M.basis = J->basis;
    M.basis.push_back("m0");
    M.prod_table.assign(size_t(dM) * dM, {});
    for (int i = 0; i < dJ; i++)
        for (int j = 0; j < dJ; j++) M.prod_table[size_t(i) * dM + j] = J->table(i, j);
    for (int i = 0; i < dJ; i++) {
        std::vector<Scalar> ei(dJ);
        ei[i] = Scalar(1);
        auto right = j_of_flat(flat_of(ei) * x.Pm); // e_i * m0
        auto left = j_of_flat(x.Pm * flat_of(ei));  // m0 * e_i
        auto& cr = M.prod_table[size_t(i) * dM + dJ];
        for (int k = 0; k < dJ; k++)
            if (!right[k].is_zero()) cr.push_back({k, right[k]});
        auto& cl = M.prod_table[size_t(dJ) * dM + i];
        for (int k = 0; k < dJ; k++)
            if (!left[k].is_zero()) cl.push_back({k, left[k]});
    }
    M.prod_table[size_t(dJ) * dM + dJ] = {{dJ, Scalar(1)}};
    for (int g = 0; g < B->G->order; g++) M.action.push_back(J->action[g].dsum(Matrix::identity(1)));
    M.certified = true;
    const GAlgebra* Malg = reg.install(std::move(M), false);

    const GAlgebra* C = reg.complex_line();
    Matrix im(dM, dJ), fm(1, dM), smv(dM, 1);
    for (int i = 0; i < dJ; i++) im.at(i, i) = Scalar(1);
    fm.at(0, dJ) = Scalar(1);
    smv.at(dJ, 0) = Scalar(1);
    GHom ih(J, Malg, std::move(im), true);
    GHom fh(Malg, C, std::move(fm), true);
    GHom sh(C, Malg, std::move(smv), true);
    auto srep = check_splitexact(ih, fh, sh);
    if (!srep.ok) throw Error("to_word: internal middle sequence invalid");
    auto seq = std::make_shared<SplitSeq>();
    seq->name = "w(" + Malg->name + ")";
    seq->i = ih;
    seq->f = fh;
    seq->s = sh;
    seq->u = *srep.ideal_projection;

    // h+ : C -> M, 1 -> (P+ - P-) + m0
    AMat diff = x.Pp - x.Pm;
    auto jd = j_of_flat(diff);
    Matrix hp(dM, 1);
    for (int i = 0; i < dJ; i++) hp.at(i, 0) = jd[i];
    hp.at(dJ, 0) = Scalar(1);
    GHom hph(C, Malg, std::move(hp), true);

    Generator gh;
    gh.kind = Generator::Hom;
    gh.name = "rep_plus";
    gh.hom = std::move(hph);
    Generator gd;
    gd.kind = Generator::Split;
    gd.name = "delta_" + seq->name;
    gd.seq = seq;
    Generator ge;
    ge.kind = Generator::CornerInv;
    ge.name = "stab_inv";
    ge.corner = &Jdata;
    return Word::make_compose(Word::make_compose(Word::make_gen(gh), Word::make_gen(gd)),
                              Word::make_gen(ge));
}

} // namespace gk
