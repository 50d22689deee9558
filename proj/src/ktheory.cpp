#include "gkcalc/ktheory.hpp"

namespace gk {

KClass class_of(Registry& reg, const S1Element& x) {
    KClass k;
    k.B = x.B;
    k.representative = x;
    auto rp = invariant_oracle(reg, x.Pp, x.B, x.rep);
    if (!rp.determinate) {
        k.reason = rp.reason;
        return k;
    }
    auto rm = invariant_oracle(reg, x.Pm, x.B, x.rep);
    if (!rm.determinate) {
        k.reason = rm.reason;
        return k;
    }
    k.determinate = true;
    k.key = rp.value - rm.value;
    return k;
}

EquivResult equiv(Registry& reg, const S1Element& x, const S1Element& y) {
    if (x.B != y.B) throw Error("equiv: elements live over different targets");
    KClass a = class_of(reg, x), b = class_of(reg, y);
    if (!a.determinate) return {Verdict::Indeterminate, a.reason};
    if (!b.determinate) return {Verdict::Indeterminate, b.reason};
    if (a.key == b.key) return {Verdict::Equal, ""};
    return {Verdict::NotEqual, a.key.str() + " != " + b.key.str()};
}

KGroupResult kgroup(Registry& reg, const GAlgebra* B) {
    KGroupResult out;
    if (!B->blocks) {
        out.reason = "algebra " + B->name + " has no semisimple presentation";
        return out;
    }
    const auto& pres = *B->blocks;
    bool trivial_action = B->has_trivial_action();
    if (pres.block_reps.empty() && !trivial_action) {
        out.reason = "algebra " + B->name + " acts nontrivially without inner block representations";
        return out;
    }
    CharTable table;
    try {
        table = reg.chars();
    } catch (const DecomposeFailure& e) {
        out.reason = std::string("character table unavailable: ") + e.what();
        return out;
    }
    const FiniteGroup* G = B->G;
    const GAlgebra* Bp = reg.unitized(B).plus;
    int nblocks = (int)pres.sizes.size();
    out.rank = nblocks * table.size();
    // iso inverse, for assembling elements of B from block coordinates
    auto iso_inv = pres.iso.inverse();
    if (!iso_inv) {
        out.reason = "block presentation is not invertible";
        return out;
    }
    Rep regular = Rep::regular(G);
    int N = G->order;
    for (int k = 0; k < nblocks; k++) {
        int nk = pres.sizes[k];
        Rep block_rep = pres.block_reps.empty() ? Rep::trivial(G, nk) : pres.block_reps[k];
        Rep rho = regular.kron(block_rep);
        std::vector<Irreducible> pieces;
        try {
            pieces = decompose(rho);
        } catch (const DecomposeFailure& e) {
            out.reason = std::string("cannot decompose the regular ambient: ") + e.what();
            out.rank = 0;
            out.generators.clear();
            out.keys.clear();
            return out;
        }
        int off = 0;
        for (int j = 0; j < k; j++) off += pres.sizes[j] * pres.sizes[j];
        for (int i = 0; i < table.size(); i++) {
            const Irreducible* found = nullptr;
            for (const auto& p : pieces)
                if (p.chi == table.chi[i]) { found = &p; break; }
            if (!found) {
                out.reason = "irreducible " + std::to_string(i) + " missing from the regular ambient";
                out.rank = 0;
                out.generators.clear();
                out.keys.clear();
                return out;
            }
            Matrix proj = equivariant_projector(rho, found->basis); // (N*nk)^2
            // assemble P+ in M_N(B): block k of entry (r,c) is the (r,c)
            // block of proj, all other blocks zero
            S1Element gen;
            gen.B = B;
            gen.Bplus = Bp;
            gen.N = N;
            gen.rep = regular;
            gen.Pp = AMat(Bp, N, N);
            gen.Pm = AMat(Bp, N, N);
            for (int r = 0; r < N; r++)
                for (int c = 0; c < N; c++) {
                    std::vector<Scalar> blockco(B->dim);
                    bool nonzero = false;
                    std::vector<Scalar> full(pres.total_rows());
                    for (int u = 0; u < nk; u++)
                        for (int v = 0; v < nk; v++) {
                            const Scalar& s = proj.at(r * nk + u, c * nk + v);
                            if (!s.is_zero()) nonzero = true;
                            full[off + u * nk + v] = s;
                        }
                    if (!nonzero) continue;
                    // b = iso^-1(full)
                    std::vector<Scalar> bvec(B->dim);
                    for (int t = 0; t < B->dim; t++)
                        for (int s2 = 0; s2 < pres.total_rows(); s2++) {
                            if (iso_inv->at(t, s2).is_zero() || full[s2].is_zero()) continue;
                            bvec[t] += iso_inv->at(t, s2) * full[s2];
                        }
                    std::vector<Scalar> entry(Bp->dim);
                    for (int t = 0; t < B->dim; t++) entry[t] = bvec[t];
                    gen.Pp.at(r, c) = std::move(entry);
                }
            gen.standard = true;
            gen.validate();
            auto cls = class_of(reg, gen);
            if (!cls.determinate) {
                out.reason = cls.reason;
                out.rank = 0;
                out.generators.clear();
                out.keys.clear();
                return out;
            }
            out.generators.push_back(std::move(gen));
            out.keys.push_back(cls.key);
        }
    }
    out.determinate = true;
    return out;
}

GroupOps group_ops(Registry& reg, const GAlgebra* B) { return GroupOps{&reg, B}; }

S1Element k_functor(Registry& reg, const GHom& f, const S1Element& x) {
    if (f.src != x.B) throw Error("k_functor: hom does not start at the element's target algebra");
    S1Element out;
    out.B = f.tgt;
    out.Bplus = reg.unitized(f.tgt).plus;
    out.N = x.N;
    out.rep = x.rep;
    out.Pp = apply_hom_unitized(x.Pp, f, out.Bplus);
    out.Pm = apply_hom_unitized(x.Pm, f, out.Bplus);
    out.standard = is_scalar_diag_idempotent(out.Pm);
    out.validate();
    return out;
}

WordPtr psi_inverse(Registry& reg, const S1Element& x) { return to_word(reg, x); }

const Registry::MatrixAlg& averaging_embedding(Registry& reg, const GAlgebra* A) {
    const FiniteGroup* G = A->G;
    int n = G->order;
    Rep regular = Rep::regular(G);
    Matrix avg(n, n);
    for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) avg.at(i, j) = Scalar(mpq_class(1, n));
    return reg.matrix_algebra(A, n, regular, avg);
}

} // namespace gk
