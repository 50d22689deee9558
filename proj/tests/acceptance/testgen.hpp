#ifndef GKCALC_TESTGEN_HPP
#define GKCALC_TESTGEN_HPP

#include "gkcalc/fuzz.hpp"

namespace gk {

/* seeded random elements over a decidable unital target: invariant
 * idempotent pairs built from scalar patterns, ideal idempotents and
 * unipotent invariant conjugations */
struct ElementGen {
    Registry& reg;
    const GAlgebra* B;
    BlockContext ctx;
    Rng& rng;

    ElementGen(Registry& r, const GAlgebra* b, Rng& rn);

    /* a direct sum of atoms (one-dimensional irreducibles and possibly the
     * regular representation); boundaries records the atom sizes */
    Rep random_rep(int max_size, std::vector<int>& boundaries);
    /* 0/1 diagonal pattern constant on each atom, so it commutes with rep */
    Matrix random_pattern(const std::vector<int>& boundaries);
    /* invariant idempotent with entries in B, orthogonal to the pattern D */
    AMat random_ideal_idempotent(const Rep& rep, const Matrix& D);
    /* w = 1 + n with n invariant in M_N(B); returns (w, w^-1) */
    std::pair<AMat, AMat> random_unipotent(const Rep& rep);

    S1Element random_s1(int max_n);
    LevelOne random_levelone(); // source C, target B
    GHom random_conjugated_hom(const GHom& base);
};

} // namespace gk

#endif
