#include "gkcalc/algebra.hpp"
#include <algorithm>
#include <sstream>

namespace gk {

namespace {

std::vector<Scalar> mat_vec(const Matrix& m, const std::vector<Scalar>& v) {
    std::vector<Scalar> out(m.rows);
    for (int i = 0; i < m.rows; i++)
        for (int j = 0; j < m.cols; j++) {
            if (m.at(i, j).is_zero() || v[j].is_zero()) continue;
            out[i] += m.at(i, j) * v[j];
        }
    return out;
}

std::vector<Scalar> unit_vec(int dim, int k) {
    std::vector<Scalar> v(dim);
    v[k] = Scalar(1);
    return v;
}

bool vec_eq(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
    for (size_t i = 0; i < a.size(); i++)
        if (a[i] != b[i]) return false;
    return true;
}

} // namespace

std::vector<Scalar> GAlgebra::act_vec(int g, const std::vector<Scalar>& x) const {
    return mat_vec(action[g], x);
}

bool GAlgebra::has_trivial_action() const {
    for (const auto& m : action)
        if (!m.is_identity()) return false;
    return true;
}

bool GAlgebra::is_quadratik() const {
    if (is_unital()) return true;
    Matrix span(dim, dim * dim);
    for (int i = 0; i < dim; i++)
        for (int j = 0; j < dim; j++)
            for (const auto& [k, c] : table(i, j)) span.at(k, i * dim + j) += c;
    return span.rank() == dim;
}

void GAlgebra::verify(long max_dim) const {
    if (dim <= 0) throw Error("algebra " + name + ": empty basis");
    if (dim > max_dim)
        throw Error("algebra " + name + ": dimension " + std::to_string(dim) +
                    " exceeds cap " + std::to_string(max_dim) + " (GKCALC_MAX_DIM)");
    if ((long)prod_table.size() != (long)dim * dim)
        throw Error("algebra " + name + ": structure constant table has wrong size");
    if ((int)action.size() != G->order)
        throw Error("algebra " + name + ": action must have one matrix per group element");

    // associativity on all basis triples
    std::vector<std::vector<Scalar>> bas;
    for (int i = 0; i < dim; i++) bas.push_back(unit_vec(dim, i));
    for (int i = 0; i < dim; i++)
        for (int j = 0; j < dim; j++) {
            auto ij = mul(bas[i], bas[j]);
            for (int k = 0; k < dim; k++) {
                auto l = mul(ij, bas[k]);
                auto r = mul(bas[i], mul(bas[j], bas[k]));
                if (!vec_eq(l, r))
                    throw Error("algebra " + name + ": associativity fails at basis triple (" +
                                std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")");
            }
        }

    if (unit) {
        for (int i = 0; i < dim; i++) {
            if (!vec_eq(mul(*unit, bas[i]), bas[i]) || !vec_eq(mul(bas[i], *unit), bas[i]))
                throw Error("algebra " + name + ": unit law fails at basis " + std::to_string(i));
        }
    }

    // action: invertible automorphisms forming a group homomorphism
    for (int g = 0; g < G->order; g++) {
        if (action[g].rows != dim || action[g].cols != dim)
            throw Error("algebra " + name + ": action matrix for g=" + std::to_string(g) + " has wrong shape");
        if (!action[g].inverse())
            throw Error("algebra " + name + ": action of g=" + std::to_string(g) + " is singular");
        for (int i = 0; i < dim; i++)
            for (int j = 0; j < dim; j++) {
                auto l = act_vec(g, mul(bas[i], bas[j]));
                auto r = mul(act_vec(g, bas[i]), act_vec(g, bas[j]));
                if (!vec_eq(l, r))
                    throw Error("algebra " + name + ": action of g=" + std::to_string(g) +
                                " is not multiplicative at basis pair (" + std::to_string(i) + "," +
                                std::to_string(j) + ")");
            }
    }
    if (!action[G->identity].is_identity())
        throw Error("algebra " + name + ": action of the identity element is not the identity");
    for (int g = 0; g < G->order; g++)
        for (int h = 0; h < G->order; h++)
            if (action[g] * action[h] != action[G->op(g, h)])
                throw Error("algebra " + name + ": action is not a group homomorphism at (" +
                            std::to_string(g) + "," + std::to_string(h) + ")");

    if (!is_quadratik())
        throw Error("algebra " + name + ": not quadratik (products do not span)");

    // block presentation, when given, must be a verified isomorphism
    if (blocks) {
        const auto& B = *blocks;
        if (B.iso.cols != dim || B.iso.rows != B.total_rows())
            throw Error("algebra " + name + ": block iso has wrong shape");
        if (B.iso.rank() != dim || B.total_rows() != dim)
            throw Error("algebra " + name + ": block iso is not bijective");
        auto block_mul = [&](const std::vector<Scalar>& x, const std::vector<Scalar>& y) {
            std::vector<Scalar> out(B.total_rows());
            int off = 0;
            for (int n : B.sizes) {
                for (int p = 0; p < n; p++)
                    for (int q = 0; q < n; q++)
                        for (int r = 0; r < n; r++)
                            out[off + p * n + q] += x[off + p * n + r] * y[off + r * n + q];
                off += n * n;
            }
            return out;
        };
        for (int i = 0; i < dim; i++)
            for (int j = 0; j < dim; j++) {
                auto lhs = mat_vec(B.iso, mul(bas[i], bas[j]));
                auto rhs = block_mul(mat_vec(B.iso, bas[i]), mat_vec(B.iso, bas[j]));
                if (!vec_eq(lhs, rhs))
                    throw Error("algebra " + name + ": block iso not multiplicative at (" +
                                std::to_string(i) + "," + std::to_string(j) + ")");
            }
        if (!B.block_reps.empty()) {
            if ((int)B.block_reps.size() != (int)B.sizes.size())
                throw Error("algebra " + name + ": one block rep per block required");
            for (size_t k = 0; k < B.sizes.size(); k++) {
                if (B.block_reps[k].dim() != B.sizes[k])
                    throw Error("algebra " + name + ": block rep size mismatch at block " + std::to_string(k));
                if (!B.block_reps[k].is_honest())
                    throw Error("algebra " + name + ": block rep at block " + std::to_string(k) +
                                " is not a representation");
            }
            for (int g = 0; g < G->order; g++) {
                for (int i = 0; i < dim; i++) {
                    auto lhs = mat_vec(B.iso, act_vec(g, bas[i]));
                    auto x = mat_vec(B.iso, bas[i]);
                    std::vector<Scalar> rhs(B.total_rows());
                    int off = 0;
                    for (size_t k = 0; k < B.sizes.size(); k++) {
                        int n = B.sizes[k];
                        Matrix xb(n, n);
                        for (int p = 0; p < n; p++)
                            for (int q = 0; q < n; q++) xb.at(p, q) = x[off + p * n + q];
                        Matrix conj = B.block_reps[k][g] * xb * *B.block_reps[k][g].inverse();
                        for (int p = 0; p < n; p++)
                            for (int q = 0; q < n; q++) rhs[off + p * n + q] = conj.at(p, q);
                        off += n * n;
                    }
                    if (!vec_eq(lhs, rhs))
                        throw Error("algebra " + name + ": block reps do not implement the action at g=" +
                                    std::to_string(g) + ", basis " + std::to_string(i));
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------

GHom::GHom(const GAlgebra* s, const GAlgebra* t, Matrix m, bool check)
    : src(s), tgt(t), mat(std::move(m)) {
    if (mat.rows != tgt->dim || mat.cols != src->dim)
        throw Error("hom " + src->name + "->" + tgt->name + ": matrix shape mismatch");
    if (src->G != tgt->G) throw Error("hom across different groups");
    if (!check) return;
    std::vector<std::vector<Scalar>> img;
    for (int i = 0; i < src->dim; i++) img.push_back(apply(unit_vec(src->dim, i)));
    for (int i = 0; i < src->dim; i++)
        for (int j = 0; j < src->dim; j++) {
            auto lhs = apply(src->mul(unit_vec(src->dim, i), unit_vec(src->dim, j)));
            auto rhs = tgt->mul(img[i], img[j]);
            if (!vec_eq(lhs, rhs))
                throw Error("hom " + src->name + "->" + tgt->name +
                            ": not multiplicative at basis pair (" + std::to_string(i) + "," +
                            std::to_string(j) + ")");
        }
    for (int g = 0; g < src->G->order; g++)
        if (mat * src->action[g] != tgt->action[g] * mat)
            throw Error("hom " + src->name + "->" + tgt->name +
                        ": not equivariant at group element g=" + std::to_string(g));
}

std::vector<Scalar> GHom::apply(const std::vector<Scalar>& x) const { return mat_vec(mat, x); }

GHom GHom::zero(const GAlgebra* s, const GAlgebra* t) {
    return GHom(s, t, Matrix::zero(t->dim, s->dim), false);
}

GHom GHom::id(const GAlgebra* a) { return GHom(a, a, Matrix::identity(a->dim), false); }

GHom GHom::compose_then(const GHom& next) const {
    if (tgt != next.src) throw Error("hom composition: object mismatch");
    return GHom(src, next.tgt, next.mat * mat, false);
}

// ---------------------------------------------------------------------------

GAlgebra make_unitization(const GAlgebra& A) {
    GAlgebra P;
    P.name = A.name + "+";
    P.G = A.G;
    P.dim = A.dim + 1;
    P.basis = A.basis;
    P.basis.push_back("1+");
    P.prod_table.assign(size_t(P.dim) * P.dim, {});
    for (int i = 0; i < A.dim; i++)
        for (int j = 0; j < A.dim; j++) P.prod_table[size_t(i) * P.dim + j] = A.table(i, j);
    for (int i = 0; i < A.dim; i++) {
        P.prod_table[size_t(i) * P.dim + A.dim] = {{i, Scalar(1)}};
        P.prod_table[size_t(A.dim) * P.dim + i] = {{i, Scalar(1)}};
    }
    P.prod_table[size_t(A.dim) * P.dim + A.dim] = {{A.dim, Scalar(1)}};
    P.unit = std::vector<Scalar>(P.dim);
    (*P.unit)[A.dim] = Scalar(1);
    for (int g = 0; g < A.G->order; g++) {
        Matrix m(P.dim, P.dim);
        for (int i = 0; i < A.dim; i++)
            for (int j = 0; j < A.dim; j++) m.at(i, j) = A.action[g].at(i, j);
        m.at(A.dim, A.dim) = Scalar(1);
        P.action.push_back(std::move(m));
    }
    if (A.blocks && !A.blocks->block_reps.empty()) {
        SemisimplePresentation B;
        B.sizes = A.blocks->sizes;
        B.sizes.push_back(1);
        B.iso = Matrix(A.blocks->total_rows() + 1, P.dim);
        for (int r = 0; r < A.blocks->total_rows(); r++)
            for (int c = 0; c < A.dim; c++) B.iso.at(r, c) = A.blocks->iso.at(r, c);
        // the adjoined unit maps to the identity of every block plus the
        // extra one-dimensional block
        int off = 0;
        for (int n : A.blocks->sizes) {
            for (int p = 0; p < n; p++) B.iso.at(off + p * n + p, A.dim) = Scalar(1);
            off += n * n;
        }
        B.iso.at(off, A.dim) = Scalar(1);
        B.block_reps = A.blocks->block_reps;
        B.block_reps.push_back(Rep::trivial(A.G, 1));
        P.blocks = std::move(B);
    }
    P.certified = true;
    return P;
}

const FiniteGroup* Registry::install_group(FiniteGroup g) {
    g.verify();
    groups.push_back(std::make_unique<FiniteGroup>(std::move(g)));
    return groups.back().get();
}

const GAlgebra* Registry::install(GAlgebra a, bool run_verify) {
    if (named.count(a.name)) throw Error("registry: duplicate algebra name " + a.name);
    if (a.action.empty()) a.action.assign(a.G->order, Matrix::identity(a.dim));
    if (run_verify && !a.certified) a.verify(max_dim);
    algebras.push_back(std::make_unique<GAlgebra>(std::move(a)));
    const GAlgebra* p = algebras.back().get();
    named[p->name] = p;
    return p;
}

const GAlgebra* Registry::complex_line() {
    auto it = named.find("C");
    if (it != named.end()) return it->second;
    GAlgebra c;
    c.name = "C";
    c.G = G;
    c.dim = 1;
    c.basis = {"1"};
    c.prod_table = {{{0, Scalar(1)}}};
    c.unit = std::vector<Scalar>{Scalar(1)};
    c.action.assign(G->order, Matrix::identity(1));
    SemisimplePresentation B;
    B.sizes = {1};
    B.iso = Matrix::identity(1);
    B.block_reps = {Rep::trivial(G, 1)};
    c.blocks = std::move(B);
    c.certified = true;
    return install(std::move(c), false);
}

const Registry::Unitized& Registry::unitized(const GAlgebra* A) {
    auto it = unitize_memo.find(A);
    if (it != unitize_memo.end()) return it->second;
    GAlgebra plus = make_unitization(*A);
    while (named.count(plus.name)) plus.name += "'";
    const GAlgebra* p = install(std::move(plus), false);
    Matrix m(p->dim, A->dim);
    for (int i = 0; i < A->dim; i++) m.at(i, i) = Scalar(1);
    GHom iota(A, p, std::move(m), false);
    return unitize_memo.emplace(A, Unitized{p, std::move(iota)}).first->second;
}

const Registry::MatrixAlg& Registry::matrix_algebra(const GAlgebra* A, int n, const Rep& gamma,
                                                    std::optional<Matrix> corner_idem) {
    std::ostringstream key;
    key << A->name << "#" << n;
    for (const auto& m : gamma.m)
        for (const auto& s : m.a) key << "," << s.str();
    if (corner_idem)
        for (const auto& s : corner_idem->a) key << ";" << s.str();
    auto it = matalg_memo.find(key.str());
    if (it != matalg_memo.end()) return it->second;

    if (n < 1) throw Error("matrix_algebra: size must be >= 1");
    if ((int)gamma.m.size() != G->order || gamma.dim() != n)
        throw Error("matrix_algebra: gamma must be one invertible " + std::to_string(n) + "x" +
                    std::to_string(n) + " matrix per group element");
    std::vector<Matrix> gamma_inv;
    for (int g = 0; g < G->order; g++) {
        auto inv = gamma[g].inverse();
        if (!inv)
            throw Error("matrix_algebra: gamma is singular at group element g=" + std::to_string(g));
        gamma_inv.push_back(std::move(*inv));
    }
    // gamma acts by conjugation; ad(gamma) is an action iff
    // gamma_g gamma_h = (scalar) gamma_{gh}
    bool honest = true;
    for (int g = 0; g < G->order; g++)
        for (int h = 0; h < G->order; h++) {
            Matrix prod = gamma[g] * gamma[h];
            if (prod != gamma[G->op(g, h)]) honest = false;
            Matrix defect = gamma_inv[G->op(g, h)] * prod;
            Scalar lambda = defect.at(0, 0);
            if (lambda.is_zero() || defect != Matrix::identity(n) * lambda)
                throw Error("matrix_algebra: ad(gamma) is not a group action at pair g=" +
                            std::to_string(g) + ", h=" + std::to_string(h));
        }

    GAlgebra M;
    M.name = "M" + std::to_string(n) + "(" + A->name + ")";
    while (named.count(M.name)) M.name += "'";
    M.G = G;
    M.dim = n * n * A->dim;
    auto idx = [&](int p, int q, int b) { return (p * n + q) * A->dim + b; };
    for (int p = 0; p < n; p++)
        for (int q = 0; q < n; q++)
            for (int b = 0; b < A->dim; b++)
                M.basis.push_back("e" + std::to_string(p + 1) + std::to_string(q + 1) + "*" + A->basis[b]);
    M.prod_table.assign(size_t(M.dim) * M.dim, {});
    for (int p = 0; p < n; p++)
        for (int q = 0; q < n; q++)
            for (int s = 0; s < n; s++)
                for (int b = 0; b < A->dim; b++)
                    for (int c = 0; c < A->dim; c++) {
                        auto& cell = M.prod_table[size_t(idx(p, q, b)) * M.dim + idx(q, s, c)];
                        for (const auto& [k, coef] : A->table(b, c)) cell.push_back({idx(p, s, k), coef});
                    }
    if (A->is_unital()) {
        std::vector<Scalar> u(M.dim);
        for (int p = 0; p < n; p++)
            for (int b = 0; b < A->dim; b++) u[idx(p, p, b)] = (*A->unit)[b];
        M.unit = std::move(u);
    }
    for (int g = 0; g < G->order; g++) {
        // ad(gamma_g) on M_n in e_pq coordinates is gamma (x) (gamma^-1)^T
        Matrix ad = gamma[g].kron(gamma_inv[g].transpose());
        M.action.push_back(ad.kron(A->action[g]));
    }
    if (A->blocks && !A->blocks->block_reps.empty() && honest) {
        SemisimplePresentation B;
        const auto& Ab = *A->blocks;
        for (int sz : Ab.sizes) B.sizes.push_back(n * sz);
        int total = 0;
        for (int sz : B.sizes) total += sz * sz;
        B.iso = Matrix(total, M.dim);
        int off_in = 0, off_out = 0;
        for (size_t k = 0; k < Ab.sizes.size(); k++) {
            int nk = Ab.sizes[k];
            int N = n * nk;
            for (int p = 0; p < n; p++)
                for (int q = 0; q < n; q++)
                    for (int b = 0; b < A->dim; b++)
                        for (int r = 0; r < nk; r++)
                            for (int s = 0; s < nk; s++) {
                                const Scalar& v = Ab.iso.at(off_in + r * nk + s, b);
                                if (v.is_zero()) continue;
                                B.iso.at(off_out + (p * nk + r) * N + (q * nk + s), idx(p, q, b)) += v;
                            }
            std::vector<Matrix> ms;
            for (int g = 0; g < G->order; g++) ms.push_back(gamma[g].kron(Ab.block_reps[k][g]));
            B.block_reps.push_back(Rep(G, std::move(ms)));
            off_in += nk * nk;
            off_out += N * N;
        }
        M.blocks = std::move(B);
    }
    M.certified = true;
    const GAlgebra* alg = install(std::move(M), false);

    // corner slot: an ad(gamma)-invariant rank-one idempotent of M_n
    auto invariant_under_gamma = [&](const Matrix& p) {
        for (int g = 0; g < G->order; g++)
            if (gamma[g] * p != p * gamma[g]) return false;
        return true;
    };
    std::optional<Matrix> slot = std::move(corner_idem);
    if (slot) {
        if (slot->rows != n || slot->cols != n || !(*slot * *slot == *slot) || slot->rank() != 1)
            throw Error("matrix_algebra: corner slot must be a rank-one idempotent");
        if (!invariant_under_gamma(*slot))
            throw Error("matrix_algebra: corner slot is not gamma-invariant");
    } else {
        Matrix e11(n, n);
        e11.at(0, 0) = Scalar(1);
        if (invariant_under_gamma(e11)) {
            slot = std::move(e11);
        } else {
            Matrix avg(n, n); // averaging projection onto the constant vector
            for (int i = 0; i < n; i++)
                for (int j = 0; j < n; j++) avg.at(i, j) = Scalar(mpq_class(1, n));
            if (invariant_under_gamma(avg)) slot = std::move(avg);
        }
    }
    std::optional<GHom> e;
    if (slot) {
        Matrix corner(alg->dim, A->dim);
        for (int r = 0; r < n; r++)
            for (int s = 0; s < n; s++) {
                if (slot->at(r, s).is_zero()) continue;
                for (int b = 0; b < A->dim; b++) corner.at(idx(r, s, b), b) += slot->at(r, s);
            }
        e = GHom(A, alg, std::move(corner), true);
    }

    MatrixAlg out{alg, n, gamma, A, honest, std::move(slot), std::move(e)};
    return matalg_memo.emplace(key.str(), std::move(out)).first->second;
}

const Registry::DirectSum& Registry::direct_sum(const GAlgebra* A, const GAlgebra* B) {
    auto k = std::make_pair(A, B);
    auto it = dsum_memo.find(k);
    if (it != dsum_memo.end()) return it->second;
    GAlgebra D;
    D.name = A->name + "(+)" + B->name;
    while (named.count(D.name)) D.name += "'";
    D.G = G;
    D.dim = A->dim + B->dim;
    D.basis = A->basis;
    for (const auto& b : B->basis) D.basis.push_back(b + "'");
    D.prod_table.assign(size_t(D.dim) * D.dim, {});
    for (int i = 0; i < A->dim; i++)
        for (int j = 0; j < A->dim; j++) D.prod_table[size_t(i) * D.dim + j] = A->table(i, j);
    for (int i = 0; i < B->dim; i++)
        for (int j = 0; j < B->dim; j++) {
            auto& cell = D.prod_table[size_t(A->dim + i) * D.dim + (A->dim + j)];
            for (const auto& [k2, c] : B->table(i, j)) cell.push_back({A->dim + k2, c});
        }
    if (A->is_unital() && B->is_unital()) {
        std::vector<Scalar> u(D.dim);
        for (int i = 0; i < A->dim; i++) u[i] = (*A->unit)[i];
        for (int i = 0; i < B->dim; i++) u[A->dim + i] = (*B->unit)[i];
        D.unit = std::move(u);
    }
    for (int g = 0; g < G->order; g++) D.action.push_back(A->action[g].dsum(B->action[g]));
    if (A->blocks && B->blocks && !A->blocks->block_reps.empty() && !B->blocks->block_reps.empty()) {
        SemisimplePresentation P;
        P.sizes = A->blocks->sizes;
        for (int s : B->blocks->sizes) P.sizes.push_back(s);
        P.iso = Matrix(A->blocks->total_rows() + B->blocks->total_rows(), D.dim);
        for (int r = 0; r < A->blocks->total_rows(); r++)
            for (int c = 0; c < A->dim; c++) P.iso.at(r, c) = A->blocks->iso.at(r, c);
        for (int r = 0; r < B->blocks->total_rows(); r++)
            for (int c = 0; c < B->dim; c++)
                P.iso.at(A->blocks->total_rows() + r, A->dim + c) = B->blocks->iso.at(r, c);
        P.block_reps = A->blocks->block_reps;
        for (const auto& r : B->blocks->block_reps) P.block_reps.push_back(r);
        D.blocks = std::move(P);
    }
    D.certified = true;
    const GAlgebra* alg = install(std::move(D), false);
    Matrix ia(alg->dim, A->dim), ib(alg->dim, B->dim), pa(A->dim, alg->dim), pb(B->dim, alg->dim);
    for (int i = 0; i < A->dim; i++) { ia.at(i, i) = Scalar(1); pa.at(i, i) = Scalar(1); }
    for (int i = 0; i < B->dim; i++) { ib.at(A->dim + i, i) = Scalar(1); pb.at(i, A->dim + i) = Scalar(1); }
    DirectSum out{alg, GHom(A, alg, std::move(ia), false), GHom(B, alg, std::move(ib), false),
                  GHom(alg, A, std::move(pa), false), GHom(alg, B, std::move(pb), false)};
    return dsum_memo.emplace(k, std::move(out)).first->second;
}

const CharTable& Registry::chars() {
    if (chartable_memo) return *chartable_memo;
    if (chartable_failed) throw DecomposeFailure(chartable_error);
    try {
        chartable_memo = char_table(*G);
    } catch (const DecomposeFailure& e) {
        chartable_failed = true;
        chartable_error = e.what();
        throw;
    }
    return *chartable_memo;
}

GHom unitize_hom(const Registry&, const GHom& phi, const GAlgebra* Aplus, const GAlgebra* Bplus) {
    Matrix m(Bplus->dim, Aplus->dim);
    for (int i = 0; i < phi.mat.rows; i++)
        for (int j = 0; j < phi.mat.cols; j++) m.at(i, j) = phi.mat.at(i, j);
    m.at(Bplus->dim - 1, Aplus->dim - 1) = Scalar(1);
    return GHom(Aplus, Bplus, std::move(m), true);
}

GHom hat_hom(Registry& reg, const GHom& s, int m, int n, const Rep& gamma_m, const Rep& gamma_n) {
    const auto& MmA = reg.matrix_algebra(s.src, m, gamma_m);
    const auto& MmX = reg.matrix_algebra(s.tgt, m, gamma_m);
    const auto& MmAp = reg.unitized(MmA.alg);
    const auto& MmXp = reg.unitized(MmX.alg);
    const auto& dom = reg.matrix_algebra(MmAp.plus, n, gamma_n);
    const auto& rng = reg.matrix_algebra(MmXp.plus, n, gamma_n);
    // (s (x) id_m)+ : M_m(A)+ -> M_m(X)+
    Matrix inner(MmXp.plus->dim, MmAp.plus->dim);
    for (int p = 0; p < m; p++)
        for (int q = 0; q < m; q++)
            for (int b = 0; b < s.src->dim; b++)
                for (int c = 0; c < s.tgt->dim; c++) {
                    const Scalar& v = s.mat.at(c, b);
                    if (v.is_zero()) continue;
                    inner.at((p * m + q) * s.tgt->dim + c, (p * m + q) * s.src->dim + b) += v;
                }
    inner.at(MmXp.plus->dim - 1, MmAp.plus->dim - 1) = Scalar(1);
    // tensor with id_n
    Matrix full(rng.alg->dim, dom.alg->dim);
    for (int p = 0; p < n; p++)
        for (int q = 0; q < n; q++)
            for (int r2 = 0; r2 < inner.rows; r2++)
                for (int c2 = 0; c2 < inner.cols; c2++) {
                    const Scalar& v = inner.at(r2, c2);
                    if (v.is_zero()) continue;
                    full.at((p * n + q) * inner.rows + r2, (p * n + q) * inner.cols + c2) += v;
                }
    return GHom(dom.alg, rng.alg, std::move(full), true);
}

SplitReport check_splitexact(const GHom& i, const GHom& f, const GHom& s) {
    SplitReport rep;
    if (i.tgt != f.src || f.tgt != s.src || s.tgt != i.tgt) {
        rep.failures.push_back("objects not composable as J -> M -> A with split A -> M");
        return rep;
    }
    if (s.compose_then(f).mat != Matrix::identity(f.tgt->dim))
        rep.failures.push_back("split law fails: f o s != id");
    if (i.mat.rank() != i.src->dim) rep.failures.push_back("i is not injective");
    if (!i.compose_then(f).mat.is_zero()) rep.failures.push_back("f o i != 0");
    int ker_f = f.src->dim - f.mat.rank();
    if (i.mat.rank() != ker_f) rep.failures.push_back("exactness fails: image(i) != kernel(f)");
    rep.ok = rep.failures.empty();
    if (rep.ok) {
        // the heuristic linear split u : M -> J with i u = id - s f
        Matrix rhs = Matrix::identity(f.src->dim) - s.mat * f.mat;
        auto u = i.mat.solve(rhs);
        if (!u) {
            rep.ok = false;
            rep.failures.push_back("internal: could not solve for the ideal projection");
        } else {
            rep.ideal_projection = GHom(f.src, i.src, std::move(*u), false);
        }
    }
    return rep;
}

bool image_is_ideal(const GHom& i) {
    const GAlgebra* M = i.tgt;
    Matrix img = i.mat.column_space();
    for (int c = 0; c < img.cols; c++) {
        std::vector<Scalar> v(M->dim);
        for (int r = 0; r < M->dim; r++) v[r] = img.at(r, c);
        for (int b = 0; b < M->dim; b++) {
            std::vector<Scalar> eb(M->dim);
            eb[b] = Scalar(1);
            for (const auto& prod : {M->mul(v, eb), M->mul(eb, v)}) {
                Matrix rhs(M->dim, 1);
                for (int r = 0; r < M->dim; r++) rhs.at(r, 0) = prod[r];
                if (!img.solve(rhs)) return false;
            }
        }
    }
    return true;
}

ColumnActionResult derive_column_action(const GAlgebra& base, int n, const std::vector<Matrix>& Gamma) {
    ColumnActionResult res;
    const FiniteGroup* G = base.G;
    int dA = base.dim;
    int dM = n * n * dA;
    if ((int)Gamma.size() != G->order) { res.error = "one matrix per group element required"; return res; }
    for (const auto& m : Gamma)
        if (m.rows != dM || m.cols != dM) { res.error = "Gamma has wrong shape"; return res; }
    auto idx = [&](int p, int q, int b) { return (p * n + q) * dA + b; };
    // corner invariance: Gamma on e_11 (x) A must agree with the base action
    for (int g = 0; g < G->order; g++)
        for (int b = 0; b < dA; b++) {
            std::vector<Scalar> im(dM);
            for (int r = 0; r < dM; r++) im[r] = Gamma[g].at(r, idx(0, 0, b));
            for (int r = 0; r < dM; r++) {
                bool corner = r < dA; // idx(0,0,*) are the first dA coordinates
                if (!corner && !im[r].is_zero()) {
                    res.error = "upper-left corner is not invariant at g=" + std::to_string(g);
                    return res;
                }
            }
            for (int c = 0; c < dA; c++)
                if (im[idx(0, 0, c)] != base.action[g].at(c, b)) {
                    res.error = "corner embedding is not equivariant at g=" + std::to_string(g);
                    return res;
                }
        }
    // column invariance and extraction of gamma (first column, entries e_r1 (x) a)
    int dC = n * dA;
    auto cidx = [&](int r, int b) { return r * dA + b; };
    std::vector<Matrix> gamma;
    for (int g = 0; g < G->order; g++) {
        Matrix gm(dC, dC);
        for (int r = 0; r < n; r++)
            for (int b = 0; b < dA; b++) {
                std::vector<Scalar> im(dM);
                for (int t = 0; t < dM; t++) im[t] = Gamma[g].at(t, idx(r, 0, b));
                for (int t = 0; t < dM; t++) {
                    int q = (t / dA) % n;
                    if (q != 0 && !im[t].is_zero()) {
                        res.error = "first column is not invariant at g=" + std::to_string(g);
                        return res;
                    }
                }
                for (int r2 = 0; r2 < n; r2++)
                    for (int c2 = 0; c2 < dA; c2++) gm.at(cidx(r2, c2), cidx(r, b)) = im[idx(r2, 0, c2)];
            }
        gamma.push_back(std::move(gm));
    }
    // left multiplication of a basis element of M_n(A) on the column
    auto lmul = [&](int p, int q, int b) {
        Matrix L(dC, dC);
        for (int c = 0; c < dA; c++)
            for (const auto& [k, coef] : base.table(b, c)) L.at(cidx(p, k), cidx(q, c)) += coef;
        return L;
    };
    // Gamma = ad(gamma): L(Gamma_g(m)) = gamma_g L(m) gamma_g^-1
    for (int g = 0; g < G->order; g++) {
        auto gi = gamma[g].inverse();
        if (!gi) { res.error = "column action is singular at g=" + std::to_string(g); return res; }
        for (int p = 0; p < n; p++)
            for (int q = 0; q < n; q++)
                for (int b = 0; b < dA; b++) {
                    Matrix lhs(dC, dC);
                    for (int t = 0; t < dM; t++) {
                        const Scalar& coef = Gamma[g].at(t, idx(p, q, b));
                        if (coef.is_zero()) continue;
                        int pp = t / (n * dA), qq = (t / dA) % n, bb = t % dA;
                        lhs = lhs + lmul(pp, qq, bb) * coef;
                    }
                    Matrix rhs = gamma[g] * lmul(p, q, b) * *gi;
                    if (lhs != rhs) {
                        res.error = "Gamma is not ad(gamma): mismatch at g=" + std::to_string(g) +
                                    ", basis (" + std::to_string(p) + "," + std::to_string(q) + "," +
                                    std::to_string(b) + ")";
                        return res;
                    }
                }
    }
    // uniqueness: the left action is faithful, so ad(gamma) determines Gamma
    Matrix Lmat(dC * dC, dM);
    for (int p = 0; p < n; p++)
        for (int q = 0; q < n; q++)
            for (int b = 0; b < dA; b++) {
                Matrix L = lmul(p, q, b);
                for (int r = 0; r < dC; r++)
                    for (int c = 0; c < dC; c++) Lmat.at(r * dC + c, idx(p, q, b)) = L.at(r, c);
            }
    bool unique = Lmat.rank() == dM;
    for (int g = 0; g < G->order && unique; g++) {
        auto gi = gamma[g].inverse();
        for (int col = 0; col < dM && unique; col++) {
            int p = col / (n * dA), q = (col / dA) % n, b = col % dA;
            Matrix target = gamma[g] * lmul(p, q, b) * *gi;
            Matrix rhs(dC * dC, 1);
            for (int r = 0; r < dC; r++)
                for (int c = 0; c < dC; c++) rhs.at(r * dC + c, 0) = target.at(r, c);
            auto sol = Lmat.solve(rhs);
            if (!sol) { res.error = "internal: reconstruction failed"; return res; }
            for (int t = 0; t < dM; t++)
                if (sol->at(t, 0) != Gamma[g].at(t, col)) {
                    res.error = "reconstructed action differs from Gamma (inconsistent input)";
                    return res;
                }
        }
    }
    res.ok = true;
    res.gamma = std::move(gamma);
    res.reconstruction_unique = unique;
    return res;
}

} // namespace gk
