#include "gkcalc/normalizer.hpp"

namespace gk {

namespace {

AMat scalar_identity(const GAlgebra* Aplus, int n) {
    AMat m(Aplus, n, n);
    for (int i = 0; i < n; i++) m.set(i, i, Aplus->dim - 1, Scalar(1));
    return m;
}

PMat pmat_block2(const PMat& a, const PMat& b, const PMat& c, const PMat& d) {
    int n = a.rows;
    PMat out(a.A, 2 * n, 2 * n);
    for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) {
            out.at(i, j) = a.at(i, j);
            out.at(i, n + j) = b.at(i, j);
            out.at(n + i, j) = c.at(i, j);
            out.at(n + i, n + j) = d.at(i, j);
        }
    return out;
}

PMat pmat_scale(const PMat& m, const PathScalar& s) {
    PMat out = m;
    for (auto& entry : out.e)
        for (auto& t : entry) t = t * s;
    return out;
}

} // namespace

AMat apply_hom_unitized(const AMat& m, const GHom& h, const GAlgebra* tgt_plus) {
    int dsrc = h.src->dim;
    AMat out(tgt_plus, m.rows, m.cols);
    for (int r = 0; r < m.rows; r++)
        for (int c = 0; c < m.cols; c++) {
            const auto& entry = m.at(r, c);
            if (entry.empty()) continue;
            std::vector<Scalar> v(tgt_plus->dim);
            for (int b = 0; b < dsrc; b++) {
                if (entry[b].is_zero()) continue;
                for (int t = 0; t < h.tgt->dim; t++) {
                    const Scalar& hv = h.mat.at(t, b);
                    if (!hv.is_zero()) v[t] += entry[b] * hv;
                }
            }
            v[tgt_plus->dim - 1] += entry[dsrc]; // adjoined unit to adjoined unit
            out.at(r, c) = std::move(v);
        }
    return out;
}

PMat rotation_unitary(const AMat& p) {
    if (!p.is_idempotent()) throw Error("rotation_unitary: p is not idempotent");
    int n = p.rows;
    AMat pperp = scalar_identity(p.A, n) - p;
    PMat pp = lift_path_mat(p), pl = lift_path_mat(pperp);
    PathScalar c = PathScalar::c_var(), s = PathScalar::s_var();
    PMat zero(p.A, n, n);
    PMat U = pmat_block2(pmat_scale(pp, c) + pl, pmat_scale(pp, s),
                         pmat_scale(pp, -s), pmat_scale(pp, c) + pl);
    (void)zero;
    return U;
}

PMat rotation_unitary_inverse(const AMat& p) {
    int n = p.rows;
    AMat pperp = scalar_identity(p.A, n) - p;
    PMat pp = lift_path_mat(p), pl = lift_path_mat(pperp);
    PathScalar c = PathScalar::c_var(), s = PathScalar::s_var();
    return pmat_block2(pmat_scale(pp, c) + pl, pmat_scale(pp, -s),
                       pmat_scale(pp, s), pmat_scale(pp, c) + pl);
}

void verify_certificate_symbolic(const StandardFormCertificate& cert) {
    PMat prod = cert.U * cert.Uinv;
    PMat prod2 = cert.Uinv * cert.U;
    AMat idm = scalar_identity(cert.entry_alg, cert.size);
    PMat idp = lift_path_mat(idm);
    if (!(prod == idp) || !(prod2 == idp))
        throw Error("certificate: U is not invertible in the path ring");
    for (const AMat* v : {&cert.start_plus, &cert.start_minus}) {
        PMat path = cert.U * lift_path_mat(*v) * cert.Uinv;
        if (!(path * path == path))
            throw Error("certificate: conjugated idempotent leaves idempotency along the path");
        AMat e0 = eval_path_mat(path, false);
        AMat e1 = eval_path_mat(path, true);
        const AMat& want0 = v == &cert.start_plus ? cert.start_plus : cert.start_minus;
        const AMat& want1 = v == &cert.start_plus ? cert.end_plus : cert.end_minus;
        if (e0 != want0) throw Error("certificate: endpoint t=0 does not reproduce the input");
        if (e1 != want1) throw Error("certificate: endpoint t=pi/2 does not reproduce the output");
    }
    // the added block is a trivial element: both splits of q nabla q agree
    if (!cert.q.is_idempotent()) throw Error("certificate: added block is not idempotent");
}

FusedPair fuse(Registry& reg, const S1Element& x, const LevelOne& y, bool simplified) {
    if (y.source != x.B)
        throw Error("fuse: level-one element starts at " + y.source->name + " but x lives over " +
                    x.B->name);
    if (simplified && !x.standard)
        throw Error("fuse: the simplified formula needs a standard x");
    FusedPair f;
    f.X = y.X;
    f.Xplus = reg.unitized(y.X).plus;
    f.iota = y.iota;
    f.corner = y.corner;
    f.target = y.target;
    if (simplified) {
        f.n = x.N;
        f.urep = x.rep;
        f.Tp = apply_hom_unitized(x.Pp, y.sp, f.Xplus);
        f.Tm = apply_hom_unitized(x.Pp, y.sm, f.Xplus);
    } else {
        f.n = 2 * x.N;
        std::vector<Matrix> ms;
        for (int g = 0; g < x.B->G->order; g++) ms.push_back(x.rep[g].dsum(x.rep[g]));
        f.urep = Rep(x.B->G, std::move(ms));
        f.Tp = apply_hom_unitized(x.Pp, y.sp, f.Xplus).dsum(apply_hom_unitized(x.Pm, y.sm, f.Xplus));
        f.Tm = apply_hom_unitized(x.Pp, y.sm, f.Xplus).dsum(apply_hom_unitized(x.Pm, y.sp, f.Xplus));
    }
    return f;
}

std::pair<S1Element, StandardFormCertificate> standardize_fused(Registry& reg, const FusedPair& f) {
    int n = f.n;
    const GAlgebra* Xp = f.Xplus;
    const AMat& p = f.Tm;
    AMat idn = scalar_identity(Xp, n);
    AMat pperp = idn - p;

    // v_pm = input (+) trivial block q = p_perp
    AMat zero_n(Xp, n, n);
    AMat vplus = f.Tp.dsum(pperp);
    AMat vminus = p.dsum(pperp);

    // rotated pair per the standard-form formulas
    AMat Ep(Xp, 2 * n, 2 * n);
    {
        AMat a = pperp * f.Tp * pperp;
        AMat b = (pperp * f.Tp * p) * Scalar(-1);
        AMat c = (p * f.Tp * pperp) * Scalar(-1);
        AMat d = p * f.Tp * p + pperp;
        for (int i = 0; i < n; i++)
            for (int j = 0; j < n; j++) {
                Ep.at(i, j) = a.at(i, j);
                Ep.at(i, n + j) = b.at(i, j);
                Ep.at(n + i, j) = c.at(i, j);
                Ep.at(n + i, n + j) = d.at(i, j);
            }
    }
    AMat Em = zero_n.dsum(idn);

    StandardFormCertificate cert;
    cert.entry_alg = Xp;
    cert.size = 2 * n;
    cert.q = pperp;
    cert.U = rotation_unitary(p);
    cert.Uinv = rotation_unitary_inverse(p);
    cert.start_plus = vplus;
    cert.start_minus = vminus;
    cert.end_plus = Ep;
    cert.end_minus = Em;

    // cheap endpoint audit (the full symbolic audit is a separate call)
    AMat U1 = eval_path_mat(cert.U, true);
    AMat U1i = eval_path_mat(cert.Uinv, true);
    if (U1 * vplus * U1i != Ep || U1 * vminus * U1i != Em)
        throw Error("standard form: rotation endpoints disagree with the closed formulas");
    if (eval_path_mat(cert.U, false) != scalar_identity(Xp, 2 * n))
        throw Error("standard form: U_0 is not the identity");

    // pull the entries back through iota into J+ and flatten to B+
    const GAlgebra* J = f.corner->alg;
    const GAlgebra* B = f.target;
    const GAlgebra* Bp = reg.unitized(B).plus;
    int k = f.corner->n;
    int dX = f.X->dim, dJ = J->dim, dB = B->dim;
    int m2 = 2 * n;
    // batch-solve iota j = entry(X part) for all entries
    std::vector<std::pair<int, int>> nz;
    for (int r = 0; r < m2; r++)
        for (int c = 0; c < m2; c++)
            if (!Ep.entry_zero(r, c)) nz.push_back({r, c});
    Matrix rhs(dX, (int)nz.size());
    for (size_t t = 0; t < nz.size(); t++) {
        const auto& entry = Ep.at(nz[t].first, nz[t].second);
        for (int r = 0; r < dX; r++) rhs.at(r, (int)t) = entry[r];
    }
    auto jsol = f.iota.mat.solve(rhs);
    if (!jsol) throw Error("standard form: entries do not lie in the ideal plus scalars");
    if (f.iota.mat * *jsol != rhs)
        throw Error("standard form: ideal pullback is inconsistent");

    S1Element out;
    out.B = B;
    out.Bplus = Bp;
    out.N = m2 * k;
    out.Pp = AMat(Bp, out.N, out.N);
    out.Pm = AMat(Bp, out.N, out.N);
    auto jidx = [&](int p2, int q2, int b) { return (p2 * k + q2) * dB + b; };
    for (size_t t = 0; t < nz.size(); t++) {
        auto [r, c] = nz[t];
        const auto& entry = Ep.at(r, c);
        // J part
        for (int p2 = 0; p2 < k; p2++)
            for (int q2 = 0; q2 < k; q2++)
                for (int b = 0; b < dB; b++) {
                    const Scalar& v = jsol->at(jidx(p2, q2, b), (int)t);
                    if (!v.is_zero()) out.Pp.set(r * k + p2, c * k + q2, b, v);
                }
        // adjoined unit of X+ contributes the unit of J+, i.e. I_k (x) 1_{B+}
        const Scalar& scal = entry[dX];
        if (!scal.is_zero())
            for (int p2 = 0; p2 < k; p2++) {
                auto& cell = out.Pp.at(r * k + p2, c * k + p2);
                if (cell.empty()) cell.assign(Bp->dim, Scalar());
                cell[Bp->dim - 1] += scal;
            }
    }
    for (int r = n; r < m2; r++)
        for (int p2 = 0; p2 < k; p2++) out.Pm.set(r * k + p2, r * k + p2, Bp->dim - 1, Scalar(1));
    std::vector<Matrix> ms;
    for (int g = 0; g < B->G->order; g++)
        ms.push_back(f.urep[g].dsum(f.urep[g]).kron(f.corner->gamma[g]));
    out.rep = Rep(B->G, std::move(ms));
    out.standard = true;
    out.validate();
    return {std::move(out), std::move(cert)};
}

std::pair<S1Element, StandardFormCertificate> standard_form(Registry& reg, const LevelOne& x) {
    const GAlgebra* C = reg.complex_line();
    if (x.source != C) throw Error("standard_form: level-one element must start at C");
    FusedPair f;
    f.X = x.X;
    f.Xplus = reg.unitized(x.X).plus;
    f.n = 1;
    f.urep = Rep::trivial(C->G, 1);
    f.iota = x.iota;
    f.corner = x.corner;
    f.target = x.target;
    f.Tp = AMat(f.Xplus, 1, 1);
    f.Tm = AMat(f.Xplus, 1, 1);
    std::vector<Scalar> one{Scalar(1)};
    auto sp1 = x.sp.apply(one), sm1 = x.sm.apply(one);
    for (int b = 0; b < x.X->dim; b++) {
        if (!sp1[b].is_zero()) f.Tp.set(0, 0, b, sp1[b]);
        if (!sm1[b].is_zero()) f.Tm.set(0, 0, b, sm1[b]);
    }
    return standardize_fused(reg, f);
}

const S1Element& phi_seed(Registry& reg) {
    if (!reg.phi_seed) {
        const GAlgebra* C = reg.complex_line();
        auto seed = std::make_shared<S1Element>();
        seed->B = C;
        seed->Bplus = reg.unitized(C).plus;
        seed->N = 1;
        seed->rep = Rep::trivial(C->G, 1);
        seed->Pp = AMat(seed->Bplus, 1, 1);
        seed->Pp.set(0, 0, 0, Scalar(1)); // the element 1 of C, not the adjoined unit
        seed->Pm = AMat(seed->Bplus, 1, 1);
        seed->standard = true;
        seed->validate();
        reg.phi_seed = seed;
    }
    return *std::static_pointer_cast<S1Element>(reg.phi_seed);
}

ZProductResult z_product(Registry& reg, const S1Element& x, const Generator& a) {
    LevelOne y = chi(reg, a);
    FusedPair f = fuse(reg, x, y, x.standard);
    auto [s1, cert] = standardize_fused(reg, f);
    ZProductResult r{s1_compress(s1), std::move(cert)};
    r.value.validate();
    return r;
}

PhiResult phi(Registry& reg, const SumOfProducts& sop) {
    const GAlgebra* C = reg.complex_line();
    if (sop.src != C) throw Error("phi: word must start at C");
    PhiResult out;
    S1Element acc = S1Element::zero(reg, sop.tgt);
    for (const auto& term : sop.terms) {
        S1Element cur = phi_seed(reg);
        for (const auto& letter : term.letters) {
            ZProductResult z = z_product(reg, cur, letter);
            cur = std::move(z.value);
            out.certs.push_back(std::move(z.cert));
        }
        if (cur.B != sop.tgt) throw Error("phi: fold ended at the wrong object");
        acc = s1_add(acc, term.negative ? s1_negate(cur) : cur);
    }
    out.value = s1_compress(acc);
    out.value.validate();
    return out;
}

PhiResult phi(Registry& reg, const Word& w) { return phi(reg, expand(w)); }

} // namespace gk
