#ifndef GKCALC_REPS_HPP
#define GKCALC_REPS_HPP

#include "gkcalc/group.hpp"
#include "gkcalc/rng.hpp"
#include <optional>
#include <vector>

namespace gk {

/* A linear representation: one invertible matrix per group element.
 * "Honest" means rho(g) rho(h) = rho(gh) on the nose (not just up to
 * scalars); the idempotent oracle requires honesty. */
struct Rep {
    const FiniteGroup* G = nullptr;
    std::vector<Matrix> m;

    Rep() = default;
    Rep(const FiniteGroup* g, std::vector<Matrix> mats) : G(g), m(std::move(mats)) {}

    int dim() const { return m.empty() ? 0 : m[0].rows; }
    const Matrix& operator[](int g) const { return m[g]; }

    bool is_honest() const;
    bool is_trivial() const;

    static Rep trivial(const FiniteGroup* G, int n);
    static Rep regular(const FiniteGroup* G);

    Rep dsum(const Rep& o) const;
    Rep kron(const Rep& o) const;

    /* character as a vector over conjugacy classes */
    std::vector<Scalar> character() const;
};

/* thrown when the brute-force splitter cannot certify a decomposition;
 * callers turn this into an Indeterminate verdict */
struct DecomposeFailure : Error {
    explicit DecomposeFailure(const std::string& m) : Error(m) {}
};

/* one irreducible constituent: basis of the subspace (columns), its
 * character over classes, and the dimension of its endomorphism algebra */
struct Irreducible {
    Matrix basis;
    std::vector<Scalar> chi;
    int endo_dim = 1;
    int dim() const { return basis.cols; }
};

/* Splits a representation into irreducible invariant subspaces over Q(i).
 * Fully certified for abelian groups via the hardcoded factorizations of
 * x^n - 1 over Q(i); best effort for nonabelian groups (throws
 * DecomposeFailure when a split cannot be certified). */
std::vector<Irreducible> decompose(const Rep& rho);

/* The Q(i)-irreducible characters of G, obtained by decomposing the
 * regular representation. */
struct CharTable {
    const FiniteGroup* G = nullptr;
    std::vector<std::vector<Scalar>> chi; // r x num_classes
    std::vector<int> dim;                 // d_i
    std::vector<int> endo;                // t_i = dim End_G
    int size() const { return (int)chi.size(); }

    /* multiplicity vector of a virtual character; nullopt if kappa is not
     * an integral combination of the irreducible characters */
    std::optional<std::vector<long>> multiplicities(const std::vector<Scalar>& kappa) const;
};

CharTable char_table(const FiniteGroup& G);

/* bilinear pairing (1/|G|) sum_g a(g) b(g^-1) on class functions */
Scalar char_pairing(const FiniteGroup& G, const std::vector<Scalar>& a, const std::vector<Scalar>& b);

/* character of the subrepresentation on the image of an invariant
 * idempotent: g -> trace(rho(g) p) */
std::vector<Scalar> image_character(const Rep& rho, const Matrix& p);

/* equivariant idempotent with prescribed invariant image W (Maschke) */
Matrix equivariant_projector(const Rep& rho, const Matrix& W);

/* smallest invariant subspace containing the given columns */
Matrix invariant_span(const Rep& rho, const Matrix& vectors);

/* G-commuting invertible v with v p v^-1 = q, for invariant idempotents of
 * equal image character (averaged random construction, seeded retries;
 * nullopt only if the characters genuinely differ). */
std::optional<Matrix> equivariant_conjugator(const Rep& rho, const Matrix& p, const Matrix& q, Rng& rng);

} // namespace gk

#endif
