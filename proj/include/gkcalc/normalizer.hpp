#ifndef GKCALC_NORMALIZER_HPP
#define GKCALC_NORMALIZER_HPP

#include "gkcalc/levelone.hpp"

namespace gk {

/* the rotation family of invertible operators attached to an idempotent p
 * in a unital ambient: block 2x2, U_0 = 1, U_{pi/2} = [[p',p],[-p,p']] */
PMat rotation_unitary(const AMat& p);
PMat rotation_unitary_inverse(const AMat& p);

/* witness that the standard form was reached by adding a trivial element
 * and rotating: endpoints of the conjugation path reproduce input/output */
struct StandardFormCertificate {
    const GAlgebra* entry_alg = nullptr; // coefficient algebra of the ambient
    int size = 0;                        // 2n
    AMat q;                              // the added trivial block p_perp
    PMat U, Uinv;
    AMat start_plus, start_minus; // v_pm at t=0 (input (+) trivial)
    AMat end_plus, end_minus;     // t_pm at t=pi/2 (the standard pair)
};

/* full symbolic audit: U Uinv = 1 in the path ring, conjugated idempotents
 * stay idempotent along the path, endpoint evaluations are bit-exact */
void verify_certificate_symbolic(const StandardFormCertificate& c);

/* a fused-but-not-yet-standardized pair over the unitized ambient X+ of a
 * level-one element, together with the corner data of the target */
struct FusedPair {
    const GAlgebra* X = nullptr;
    const GAlgebra* Xplus = nullptr;
    int n = 0;   // matrix size over X+
    Rep urep;    // matrix-part representation
    AMat Tp, Tm; // n x n over X+
    GHom iota;   // J -> X
    const Registry::MatrixAlg* corner = nullptr; // J = M_k(C) (x) B
    const GAlgebra* target = nullptr;            // B
};

/* fusion product of an S1 element with a level-one element over the same
 * object (x over A, y : A -> B).  `simplified` selects the short formula
 * t_pm = \hat s_pm o p_+ (valid when x is standard); otherwise the general
 * two-block formula t_pm = \hat s_pm o p_+ (+) \hat s_mp o p_- is used. */
FusedPair fuse(Registry& reg, const S1Element& x, const LevelOne& y, bool simplified);

/* rotation to standard form in M_{2n}(X+), then pullback of the entries
 * into J+ and flattening to a standard S1 element over the target */
std::pair<S1Element, StandardFormCertificate> standardize_fused(Registry& reg, const FusedPair& f);

/* standard form of a level-one element with source C (the spec-level S) */
std::pair<S1Element, StandardFormCertificate> standard_form(Registry& reg, const LevelOne& x);

/* the step product Z: x (.) a = S(P(x, chi(a))), compressed */
struct ZProductResult {
    S1Element value;
    StandardFormCertificate cert;
};
ZProductResult z_product(Registry& reg, const S1Element& x, const Generator& a);

/* the full pipeline Phi = F o beta: expand, fold each signed product from
 * the cached chi(1_C) seed, and add up the term results */
struct PhiResult {
    S1Element value;
    std::vector<StandardFormCertificate> certs; // one per z_product step, in fold order
};
PhiResult phi(Registry& reg, const Word& w);
PhiResult phi(Registry& reg, const SumOfProducts& sop);

/* the cached seed chi(1_C) in standard form */
const S1Element& phi_seed(Registry& reg);

/* entrywise unitized application of a homomorphism to a matrix over src+ */
AMat apply_hom_unitized(const AMat& m, const GHom& h, const GAlgebra* tgt_plus);

} // namespace gk

#endif
