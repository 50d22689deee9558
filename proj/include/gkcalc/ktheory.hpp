#ifndef GKCALC_KTHEORY_HPP
#define GKCALC_KTHEORY_HPP

#include "gkcalc/normalizer.hpp"
#include "gkcalc/oracle.hpp"

namespace gk {

/* a class of Def-4.2 type: canonical key = oracle(P+) - oracle(P-) when the
 * target is decidable, plus a stored representative */
struct KClass {
    const GAlgebra* B = nullptr;
    bool determinate = false;
    InvariantVector key;
    std::string reason; // set when indeterminate
    S1Element representative;

    bool is_zero() const { return determinate && key.is_zero(); }
};

KClass class_of(Registry& reg, const S1Element& x);

enum class Verdict { Equal, NotEqual, Indeterminate };

struct EquivResult {
    Verdict verdict = Verdict::Indeterminate;
    std::string reason;
};

/* class equality via the independent oracle keys */
EquivResult equiv(Registry& reg, const S1Element& x, const S1Element& y);

/* free abelian presentation of K^G(B): one generator per (block, irreducible)
 * pair, realized as explicit standard S1 elements over the regular ambient */
struct KGroupResult {
    bool determinate = false;
    std::string reason;
    int rank = 0;
    std::vector<S1Element> generators;
    std::vector<InvariantVector> keys; // oracle keys of the generators
};
KGroupResult kgroup(Registry& reg, const GAlgebra* B);

/* the abelian group structure of K^G(B) on representatives */
struct GroupOps {
    Registry* reg = nullptr;
    const GAlgebra* B = nullptr;

    S1Element zero() const { return S1Element::zero(*reg, B); }
    S1Element add(const S1Element& x, const S1Element& y) const { return s1_add(x, y); }
    S1Element neg(const S1Element& x) const { return s1_negate(x); }
    /* needs a decidable B; Indeterminate propagates as an exception-free
     * nullopt */
    std::optional<bool> is_zero(const S1Element& x) const {
        KClass k = class_of(*reg, x);
        if (!k.determinate) return std::nullopt;
        return k.key.is_zero();
    }
};
GroupOps group_ops(Registry& reg, const GAlgebra* B);

/* functoriality K^G(f): apply \hat f to both idempotents */
S1Element k_functor(Registry& reg, const GHom& f, const S1Element& x);

/* Psi^-1 is induced by the identical embedding S1 -> L */
WordPtr psi_inverse(Registry& reg, const S1Element& x);

/* the averaging corner embedding A -> End(l^2(G)) (x) A with the regular
 * representation action and the projection onto constants as the slot */
const Registry::MatrixAlg& averaging_embedding(Registry& reg, const GAlgebra* A);

} // namespace gk

#endif
