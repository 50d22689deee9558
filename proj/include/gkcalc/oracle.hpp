#ifndef GKCALC_ORACLE_HPP
#define GKCALC_ORACLE_HPP

#include "gkcalc/algebra.hpp"
#include <string>

namespace gk {

/* per-block virtual multiplicities against the Q(i)-irreducible characters
 * of G; for trivial G this is one rank per block */
struct InvariantVector {
    std::vector<std::vector<long>> mult; // blocks x irreducibles

    bool operator==(const InvariantVector& o) const { return mult == o.mult; }
    bool operator!=(const InvariantVector& o) const { return !(*this == o); }
    bool is_zero() const {
        for (const auto& b : mult)
            for (long v : b)
                if (v) return false;
        return true;
    }
    InvariantVector operator+(const InvariantVector& o) const;
    InvariantVector operator-(const InvariantVector& o) const;
    std::string str() const;
};

struct OracleResult {
    bool determinate = false;
    InvariantVector value;
    std::string reason; // why Indeterminate / why rejected

    static OracleResult indeterminate(std::string why) {
        OracleResult r;
        r.reason = std::move(why);
        return r;
    }
};

/* The independent decision procedure behind class equality: given an
 * idempotent N x N matrix p over B+ that is invariant under the ambient
 * action ad(amb_rep) composed with the entrywise action of B+, computes per
 * simple block of B the character of the subrepresentation cut out by p and
 * returns its multiplicities against the irreducible characters.
 *
 * Requirements for a determinate answer: B carries a verified semisimple
 * presentation with honest block representations, and amb_rep is honest.
 * Everything else yields Indeterminate (a value, not an error).
 * An input that is not an invariant idempotent is an error. */
OracleResult invariant_oracle(Registry& reg, const AMat& p, const GAlgebra* B, const Rep& amb_rep);

/* the scalar image of p in block k of the presentation (entry b maps to
 * psi(b); the adjoined unit maps to the block identity) */
Matrix block_image(const AMat& p, const GAlgebra* B, int block);

/* entrywise ambient action g . p = amb_rep_g (beta+ p) amb_rep_g^-1 */
AMat ambient_act(const AMat& p, const Rep& amb_rep, int g);
bool is_ambient_invariant(const AMat& p, const Rep& amb_rep);

/* working context for blockwise constructions over a decidable unital
 * target: per-block representations and the inverse of the presentation
 * iso, with assembly of matrices over B+ from per-block scalar data */
struct BlockContext {
    const GAlgebra* B = nullptr;
    const GAlgebra* Bplus = nullptr;
    const SemisimplePresentation* pres = nullptr;
    Matrix iso_inv;
    std::vector<Rep> block_reps;

    Matrix block_of(const AMat& m, int k) const { return block_image(m, B, k); }
    /* blocks[k] has size N n_k; extra is the N x N scalar part */
    AMat assemble(int N, const std::vector<Matrix>& blocks, const Matrix& extra) const;
};
std::optional<BlockContext> block_context(Registry& reg, const GAlgebra* B);

/* the unit-coefficient matrix of m */
Matrix scalar_part(const AMat& m);

} // namespace gk

#endif
