#ifndef GKCALC_LEVELONE_HPP
#define GKCALC_LEVELONE_HPP

#include "gkcalc/words.hpp"

namespace gk {

/* A very special level-one diagram:  B -e-> J -iota-> X [] A <- sigma+-.
 * J is M_k(C) (x) B via the corner data; both splits map into X and agree
 * modulo iota(J). */
struct LevelOne {
    const GAlgebra* source = nullptr; // A
    const GAlgebra* target = nullptr; // B
    const Registry::MatrixAlg* corner = nullptr; // J and its matrix action
    const GAlgebra* X = nullptr;
    GHom iota;    // J -> X, injective with ideal image
    GHom sp, sm;  // sigma_+, sigma_- : A -> X

    /* invariant checks; `deep` additionally builds the middle subalgebra
     * M = iota(J) + (sm (+) id)(A) and runs the split-exactness report */
    void validate(Registry& reg, bool deep = false) const;
};

/* Standard-shape K-theory data over B: a pair of invariant idempotents over
 * B+ in a finite stabilization with matrix-part representation `rep`.
 * `standard` records that Pm is a diagonal scalar 0/1 idempotent. */
struct S1Element {
    const GAlgebra* B = nullptr;
    const GAlgebra* Bplus = nullptr;
    int N = 0;
    Rep rep;  // N x N per group element
    AMat Pp, Pm;
    bool standard = false;

    void validate() const;
    bool difference_in_ideal() const; // P+ - P- has entries in B
    static S1Element zero(Registry& reg, const GAlgebra* B);
};

/* scalar 0/1 diagonal test used for the standard flag */
bool is_scalar_diag_idempotent(const AMat& m);

/* one-parameter family of S1 data over the path ring; both endpoint
 * evaluations must be valid S1Elements */
struct S1Homotopy {
    const GAlgebra* B = nullptr;
    const GAlgebra* Bplus = nullptr;
    int N = 0;
    Rep rep;
    PMat Pp, Pm;

    void validate() const; // symbolic idempotency, invariance, ideal condition
    std::pair<S1Element, S1Element> endpoints() const;
};

/* entrywise algebra action extended to path-ring entries */
PMat path_ambient_act(const PMat& p, const Rep& amb_rep, int g);
AMat eval_path_mat(const PMat& p, bool at_one);
PMat lift_path_mat(const AMat& p);

/* the translation chi of generators into level-one form */
LevelOne chi(Registry& reg, const Generator& g);

/* direct sum / split swap on S1 data */
S1Element s1_add(const S1Element& x, const S1Element& y);
S1Element s1_negate(const S1Element& x);

/* strips decoupled components on which both idempotents agree (removal of a
 * trivial summand); class-preserving, deterministic */
S1Element s1_compress(const S1Element& x);

/* rep-block partition of the coordinates (finest block structure of rep) */
std::vector<std::vector<int>> rep_blocks(const Rep& rep, const AMat& Pp, const AMat& Pm);

/* coordinates of the decoupled components on which P+ and P- agree */
std::vector<int> compressible_coords(const S1Element& x);

/* the three-letter word (sigma+ (+) id) . Delta . e^-1 representing x; the
 * middle subalgebra, sequence and corner are minted into the registry */
WordPtr to_word(Registry& reg, const S1Element& x);

} // namespace gk

#endif
