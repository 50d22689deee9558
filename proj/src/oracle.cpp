#include "gkcalc/oracle.hpp"
#include <sstream>

namespace gk {

InvariantVector InvariantVector::operator+(const InvariantVector& o) const {
    InvariantVector r = *this;
    for (size_t b = 0; b < mult.size(); b++)
        for (size_t i = 0; i < mult[b].size(); i++) r.mult[b][i] += o.mult[b][i];
    return r;
}

InvariantVector InvariantVector::operator-(const InvariantVector& o) const {
    InvariantVector r = *this;
    for (size_t b = 0; b < mult.size(); b++)
        for (size_t i = 0; i < mult[b].size(); i++) r.mult[b][i] -= o.mult[b][i];
    return r;
}

std::string InvariantVector::str() const {
    std::ostringstream os;
    os << "[";
    for (size_t b = 0; b < mult.size(); b++) {
        if (b) os << "; ";
        for (size_t i = 0; i < mult[b].size(); i++) {
            if (i) os << ",";
            os << mult[b][i];
        }
    }
    os << "]";
    return os.str();
}

AMat ambient_act(const AMat& p, const Rep& amb_rep, int g) {
    const GAlgebra* Ap = p.A;
    AMat moved(Ap, p.rows, p.cols);
    for (int r = 0; r < p.rows; r++)
        for (int c = 0; c < p.cols; c++) {
            const auto& entry = p.at(r, c);
            if (entry.empty()) continue;
            moved.at(r, c) = Ap->act_vec(g, entry);
        }
    auto inv = amb_rep[g].inverse();
    if (!inv) throw Error("ambient_act: singular ambient matrix");
    return moved.scalar_lmul(amb_rep[g]).scalar_rmul(*inv);
}

bool is_ambient_invariant(const AMat& p, const Rep& amb_rep) {
    for (int g = 0; g < amb_rep.G->order; g++)
        if (ambient_act(p, amb_rep, g) != p) return false;
    return true;
}

Matrix block_image(const AMat& p, const GAlgebra* B, int block) {
    const auto& pres = *B->blocks;
    int nk = pres.sizes[block];
    int off = 0;
    for (int k = 0; k < block; k++) off += pres.sizes[k] * pres.sizes[k];
    int N = p.rows;
    Matrix out(N * nk, N * nk);
    for (int r = 0; r < N; r++)
        for (int c = 0; c < N; c++) {
            const auto& entry = p.at(r, c);
            if (entry.empty()) continue;
            // psi of the B-part
            for (int b = 0; b < B->dim; b++) {
                if (entry[b].is_zero()) continue;
                for (int u = 0; u < nk; u++)
                    for (int v = 0; v < nk; v++) {
                        const Scalar& coef = pres.iso.at(off + u * nk + v, b);
                        if (coef.is_zero()) continue;
                        out.at(r * nk + u, c * nk + v) += entry[b] * coef;
                    }
            }
            // the adjoined unit contributes the block identity
            const Scalar& scal = entry[B->dim];
            if (!scal.is_zero())
                for (int u = 0; u < nk; u++) out.at(r * nk + u, c * nk + u) += scal;
        }
    return out;
}

Matrix scalar_part(const AMat& m) {
    Matrix s(m.rows, m.cols);
    int u = m.A->dim - 1;
    for (int r = 0; r < m.rows; r++)
        for (int c = 0; c < m.cols; c++) s.at(r, c) = m.coeff(r, c, u);
    return s;
}

AMat BlockContext::assemble(int N, const std::vector<Matrix>& blocks, const Matrix& extra) const {
    AMat out(Bplus, N, N);
    int dB = B->dim;
    for (int r = 0; r < N; r++)
        for (int c = 0; c < N; c++) {
            std::vector<Scalar> full(pres->total_rows());
            bool nonzero = false;
            int off = 0;
            for (size_t k = 0; k < pres->sizes.size(); k++) {
                int nk = pres->sizes[k];
                for (int u = 0; u < nk; u++)
                    for (int v = 0; v < nk; v++) {
                        Scalar val = blocks[k].at(r * nk + u, c * nk + v);
                        if (u == v) val = val - extra.at(r, c);
                        if (!val.is_zero()) nonzero = true;
                        full[off + u * nk + v] = val;
                    }
                off += nk * nk;
            }
            if (!nonzero && extra.at(r, c).is_zero()) continue;
            std::vector<Scalar> entry(Bplus->dim);
            for (int t = 0; t < dB; t++) {
                Scalar acc;
                for (int s2 = 0; s2 < pres->total_rows(); s2++) {
                    if (iso_inv.at(t, s2).is_zero() || full[s2].is_zero()) continue;
                    acc += iso_inv.at(t, s2) * full[s2];
                }
                entry[t] = acc;
            }
            entry[Bplus->dim - 1] = extra.at(r, c);
            out.at(r, c) = std::move(entry);
        }
    return out;
}

std::optional<BlockContext> block_context(Registry& reg, const GAlgebra* B) {
    if (!B->blocks || !B->is_unital()) return std::nullopt;
    const auto& pres = *B->blocks;
    if (pres.block_reps.empty() && !B->has_trivial_action()) return std::nullopt;
    auto inv = pres.iso.inverse();
    if (!inv) return std::nullopt;
    BlockContext d;
    d.B = B;
    d.Bplus = reg.unitized(B).plus;
    d.pres = &pres;
    d.iso_inv = std::move(*inv);
    for (size_t k = 0; k < pres.sizes.size(); k++)
        d.block_reps.push_back(pres.block_reps.empty() ? Rep::trivial(B->G, pres.sizes[k])
                                                       : pres.block_reps[k]);
    return d;
}

OracleResult invariant_oracle(Registry& reg, const AMat& p, const GAlgebra* B, const Rep& amb_rep) {
    const GAlgebra* Bplus = reg.unitized(B).plus;
    if (p.A != Bplus) throw Error("invariant_oracle: p must have entries in B+");
    if (p.rows != p.cols) throw Error("invariant_oracle: p must be square");
    if ((int)amb_rep.m.size() != B->G->order || (p.rows > 0 && amb_rep.dim() != p.rows))
        throw Error("invariant_oracle: ambient representation shape mismatch");
    if (!p.is_idempotent()) throw Error("invariant_oracle: p is not idempotent");
    if (!is_ambient_invariant(p, amb_rep)) throw Error("invariant_oracle: p is not invariant");

    if (!B->blocks) return OracleResult::indeterminate("algebra " + B->name + " has no semisimple presentation");
    const auto& pres = *B->blocks;
    bool trivial_action = B->has_trivial_action();
    if (pres.block_reps.empty() && !trivial_action)
        return OracleResult::indeterminate("algebra " + B->name +
                                           " acts nontrivially without inner block representations");
    if (!amb_rep.is_honest())
        return OracleResult::indeterminate("ambient matrix action is not an honest representation");

    CharTable table;
    try {
        table = reg.chars();
    } catch (const DecomposeFailure& e) {
        return OracleResult::indeterminate(std::string("character table unavailable: ") + e.what());
    }

    InvariantVector out;
    for (size_t k = 0; k < pres.sizes.size(); k++) {
        Matrix img = block_image(p, B, (int)k);
        Rep rho = pres.block_reps.empty() ? amb_rep.kron(Rep::trivial(B->G, pres.sizes[k]))
                                          : amb_rep.kron(pres.block_reps[k]);
        std::vector<Scalar> chi = image_character(rho, img);
        auto mult = table.multiplicities(chi);
        if (!mult)
            return OracleResult::indeterminate("image character is not integral over the irreducible characters");
        out.mult.push_back(std::move(*mult));
    }
    OracleResult r;
    r.determinate = true;
    r.value = std::move(out);
    return r;
}

} // namespace gk
