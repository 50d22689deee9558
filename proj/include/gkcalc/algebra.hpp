#ifndef GKCALC_ALGEBRA_HPP
#define GKCALC_ALGEBRA_HPP

#include "gkcalc/reps.hpp"
#include "gkcalc/pathring.hpp"
#include <map>
#include <memory>
#include <optional>
#include <string>

namespace gk {

struct GAlgebra;

/* user-supplied identification of a semisimple algebra with a direct sum of
 * matrix blocks; verified, never computed.  block_reps, when present, give
 * the inner implementation of the G-action per block and are what makes the
 * idempotent oracle applicable for nontrivial G. */
struct SemisimplePresentation {
    std::vector<int> sizes; // n_k
    Matrix iso;             // (sum n_k^2) x dim, rows indexed by (block; p, q)
    std::vector<Rep> block_reps;

    int total_rows() const {
        int t = 0;
        for (int n : sizes) t += n * n;
        return t;
    }
};

/* finite-dimensional G-algebra: structure constants over Q(i), a verified
 * automorphism action of G, and optional unit / block data */
struct GAlgebra {
    std::string name;
    const FiniteGroup* G = nullptr;
    int dim = 0;
    std::vector<std::string> basis;
    // sparse structure constants: prod_table[i*dim+j] = {(k, c)} meaning
    // e_i e_j = sum c e_k
    std::vector<std::vector<std::pair<int, Scalar>>> prod_table;
    std::optional<std::vector<Scalar>> unit;
    std::vector<Matrix> action; // one dim x dim matrix per group element
    std::optional<SemisimplePresentation> blocks;
    bool certified = false; // built by a verified constructor; skip re-verify

    const std::vector<std::pair<int, Scalar>>& table(int i, int j) const {
        return prod_table[size_t(i) * dim + j];
    }

    template <class T>
    std::vector<T> mul(const std::vector<T>& x, const std::vector<T>& y) const {
        std::vector<T> out(dim);
        for (int i = 0; i < dim; i++) {
            if (x[i].is_zero()) continue;
            for (int j = 0; j < dim; j++) {
                if (y[j].is_zero()) continue;
                T xy = x[i] * y[j];
                for (const auto& [k, c] : table(i, j)) out[k] += xy * T(c);
            }
        }
        return out;
    }

    std::vector<Scalar> act_vec(int g, const std::vector<Scalar>& x) const;

    bool is_unital() const { return unit.has_value(); }
    bool has_trivial_action() const;

    /* full invariant check: associativity on all triples, unit laws, action
     * automorphism + group homomorphism, quadratik, block presentation */
    void verify(long max_dim = 64) const;

    /* span of all products equals the whole algebra (automatic when unital) */
    bool is_quadratik() const;
};

/* verified G-equivariant multiplicative linear map */
struct GHom {
    const GAlgebra* src = nullptr;
    const GAlgebra* tgt = nullptr;
    Matrix mat; // tgt.dim x src.dim

    GHom() = default;
    GHom(const GAlgebra* s, const GAlgebra* t, Matrix m, bool check = true);

    std::vector<Scalar> apply(const std::vector<Scalar>& x) const;
    bool is_zero() const { return mat.is_zero(); }

    static GHom zero(const GAlgebra* s, const GAlgebra* t);
    static GHom id(const GAlgebra* a);
    GHom compose_then(const GHom& next) const; // this first, then next
};

/* entries-in-an-algebra matrix; T is Scalar for ordinary matrices and
 * PathScalar for one-parameter families.  An empty coefficient vector is
 * the zero entry. */
template <class T>
struct AlgMatT {
    const GAlgebra* A = nullptr;
    int rows = 0, cols = 0;
    std::vector<std::vector<T>> e;

    AlgMatT() = default;
    AlgMatT(const GAlgebra* alg, int r, int c)
        : A(alg), rows(r), cols(c), e(size_t(r) * c) {}

    std::vector<T>& at(int r, int c) { return e[size_t(r) * cols + c]; }
    const std::vector<T>& at(int r, int c) const { return e[size_t(r) * cols + c]; }

    bool entry_zero(int r, int c) const {
        for (const auto& t : at(r, c))
            if (!t.is_zero()) return false;
        return true;
    }
    void set(int r, int c, int basis_index, T v) {
        auto& entry = at(r, c);
        if (entry.empty()) entry.assign(A->dim, T());
        entry[basis_index] = std::move(v);
    }
    T coeff(int r, int c, int basis_index) const {
        const auto& entry = at(r, c);
        return entry.empty() ? T() : entry[basis_index];
    }

    bool is_zero() const {
        for (int r = 0; r < rows; r++)
            for (int c = 0; c < cols; c++)
                if (!entry_zero(r, c)) return false;
        return true;
    }

    bool operator==(const AlgMatT& o) const {
        if (rows != o.rows || cols != o.cols || A != o.A) return false;
        for (int r = 0; r < rows; r++)
            for (int c = 0; c < cols; c++) {
                const auto &x = at(r, c), &y = o.at(r, c);
                if (x.empty() && y.empty()) continue;
                for (int b = 0; b < A->dim; b++) {
                    T xv = x.empty() ? T() : x[b];
                    T yv = y.empty() ? T() : y[b];
                    if (!(xv == yv)) return false;
                }
            }
        return true;
    }
    bool operator!=(const AlgMatT& o) const { return !(*this == o); }

    AlgMatT operator+(const AlgMatT& o) const {
        AlgMatT r(A, rows, cols);
        for (size_t k = 0; k < e.size(); k++) {
            if (e[k].empty() && o.e[k].empty()) continue;
            r.e[k].assign(A->dim, T());
            for (int b = 0; b < A->dim; b++) {
                if (!e[k].empty()) r.e[k][b] += e[k][b];
                if (!o.e[k].empty()) r.e[k][b] += o.e[k][b];
            }
        }
        return r;
    }
    AlgMatT operator-(const AlgMatT& o) const { return *this + o * Scalar(-1); }
    AlgMatT operator*(const Scalar& s) const {
        AlgMatT r = *this;
        for (auto& entry : r.e)
            for (auto& t : entry) t = t * T(s);
        return r;
    }

    AlgMatT operator*(const AlgMatT& o) const {
        if (cols != o.rows || A != o.A) throw Error("AlgMat: shape/algebra mismatch in *");
        AlgMatT r(A, rows, o.cols);
        for (int i = 0; i < rows; i++)
            for (int k = 0; k < cols; k++) {
                const auto& x = at(i, k);
                if (x.empty()) continue;
                for (int j = 0; j < o.cols; j++) {
                    const auto& y = o.at(k, j);
                    if (y.empty()) continue;
                    std::vector<T> prod = A->mul(x, y);
                    auto& acc = r.e[size_t(i) * o.cols + j];
                    if (acc.empty()) acc = std::move(prod);
                    else
                        for (int b = 0; b < A->dim; b++) acc[b] += prod[b];
                }
            }
        return r;
    }

    /* left/right multiplication by a scalar matrix */
    AlgMatT scalar_lmul(const Matrix& m) const {
        if (m.cols != rows) throw Error("AlgMat: scalar_lmul shape");
        AlgMatT r(A, m.rows, cols);
        for (int i = 0; i < m.rows; i++)
            for (int k = 0; k < rows; k++) {
                if (m.at(i, k).is_zero()) continue;
                for (int j = 0; j < cols; j++) {
                    const auto& y = at(k, j);
                    if (y.empty()) continue;
                    auto& acc = r.e[size_t(i) * cols + j];
                    if (acc.empty()) acc.assign(A->dim, T());
                    for (int b = 0; b < A->dim; b++) acc[b] += y[b] * T(m.at(i, k));
                }
            }
        return r;
    }
    AlgMatT scalar_rmul(const Matrix& m) const {
        if (cols != m.rows) throw Error("AlgMat: scalar_rmul shape");
        AlgMatT r(A, rows, m.cols);
        for (int i = 0; i < rows; i++)
            for (int k = 0; k < cols; k++) {
                const auto& x = at(i, k);
                if (x.empty()) continue;
                for (int j = 0; j < m.cols; j++) {
                    if (m.at(k, j).is_zero()) continue;
                    auto& acc = r.e[size_t(i) * m.cols + j];
                    if (acc.empty()) acc.assign(A->dim, T());
                    for (int b = 0; b < A->dim; b++) acc[b] += x[b] * T(m.at(k, j));
                }
            }
        return r;
    }

    AlgMatT dsum(const AlgMatT& o) const {
        AlgMatT r(A, rows + o.rows, cols + o.cols);
        for (int i = 0; i < rows; i++)
            for (int j = 0; j < cols; j++) r.at(i, j) = at(i, j);
        for (int i = 0; i < o.rows; i++)
            for (int j = 0; j < o.cols; j++) r.at(rows + i, cols + j) = o.at(i, j);
        return r;
    }

    AlgMatT submatrix(const std::vector<int>& keep) const {
        AlgMatT r(A, (int)keep.size(), (int)keep.size());
        for (size_t i = 0; i < keep.size(); i++)
            for (size_t j = 0; j < keep.size(); j++)
                r.at((int)i, (int)j) = at(keep[i], keep[j]);
        return r;
    }

    bool is_idempotent() const { return (*this) * (*this) == *this; }
};

using AMat = AlgMatT<Scalar>;
using PMat = AlgMatT<PathScalar>;

/* the registry: owns groups/algebras, memoizes derived constructions, and
 * is the concrete realization of the paper's ambient category of workspace
 * objects */
struct Registry {
    const FiniteGroup* G = nullptr;
    std::vector<std::unique_ptr<FiniteGroup>> groups;
    std::vector<std::unique_ptr<GAlgebra>> algebras;
    std::map<std::string, const GAlgebra*> named;
    long max_dim = 64;

    const FiniteGroup* install_group(FiniteGroup g);
    const GAlgebra* install(GAlgebra a, bool run_verify = true);

    const GAlgebra* complex_line(); // the algebra C with trivial action

    struct Unitized {
        const GAlgebra* plus;
        GHom iota;
    };
    const Unitized& unitized(const GAlgebra* A);

    struct MatrixAlg {
        const GAlgebra* alg; // M_n(C) (x) A
        int n;
        Rep gamma;
        const GAlgebra* base;
        bool honest;                      // gamma is an honest representation
        std::optional<Matrix> corner_idem; // invariant rank-1 slot p
        std::optional<GHom> corner;        // a -> p (x) a, when p exists
    };
    /* very special corner data: builds (M_n(C), ad gamma) (x) (A, alpha) and
     * attaches the corner embedding a -> p (x) a for an ad(gamma)-invariant
     * rank-one idempotent slot p (e_11 by default, the averaging projection
     * as a fallback).  Rejects gamma that is not an automorphism action,
     * naming the group element. */
    const MatrixAlg& matrix_algebra(const GAlgebra* A, int n, const Rep& gamma,
                                    std::optional<Matrix> corner_idem = std::nullopt);

    struct DirectSum {
        const GAlgebra* alg;
        GHom inj_a, inj_b;   // A -> A(+)B, B -> A(+)B
        GHom proj_a, proj_b; // A(+)B -> A, A(+)B -> B
    };
    const DirectSum& direct_sum(const GAlgebra* A, const GAlgebra* B);

    const CharTable& chars(); // Q(i)-irreducible characters of G (memo)

    /* cached normal-form seed chi(1_C), set by the normalizer */
    std::shared_ptr<void> phi_seed;

    /* test-mode switch: deliberately corrupts the split translation so the
     * differential harness can prove it detects a wrong fusion formula */
    bool fault_mode = false;

private:
    std::map<const GAlgebra*, Unitized> unitize_memo;
    std::map<std::string, MatrixAlg> matalg_memo;
    std::map<std::pair<const GAlgebra*, const GAlgebra*>, DirectSum> dsum_memo;
    std::optional<CharTable> chartable_memo;
    bool chartable_failed = false;
    std::string chartable_error;
};

/* unitization: A -> A+ with the adjoined unit as the last basis vector */
GAlgebra make_unitization(const GAlgebra& A);

/* canonical extension phi+ : A+ -> B+ of phi : A -> B */
GHom unitize_hom(const Registry& reg, const GHom& phi, const GAlgebra* Aplus, const GAlgebra* Bplus);

/* amplification \hat s = (s (x) id_m)+ (x) id_n as a verified GHom between
 * M_n(M_m(A)+) and M_n(M_m(X)+); gamma_m / gamma_n supply the matrix-factor
 * actions on both sides */
GHom hat_hom(Registry& reg, const GHom& s, int m, int n, const Rep& gamma_m, const Rep& gamma_n);

/* split-exactness validity report for  J -i-> M -f-> A  with split s */
struct SplitReport {
    bool ok = false;
    std::vector<std::string> failures;
    std::optional<GHom> ideal_projection; // the linear split u : M -> J
};
SplitReport check_splitexact(const GHom& i, const GHom& f, const GHom& s);

/* is the image of i a two-sided ideal of its target? */
bool image_is_ideal(const GHom& i);

/* Lemma "column action": extracts the module action on the first column of
 * M_n(A) from an action Gamma with invariant upper-left corner, certifies
 * Gamma = ad(gamma) and the uniqueness of the reconstruction. */
struct ColumnActionResult {
    bool ok = false;
    std::string error;
    std::vector<Matrix> gamma; // action on A^n, per group element
    bool reconstruction_unique = false;
};
ColumnActionResult derive_column_action(const GAlgebra& base, int n, const std::vector<Matrix>& Gamma);

} // namespace gk

#endif
