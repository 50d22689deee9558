#ifndef GKCALC_WITNESS_HPP
#define GKCALC_WITNESS_HPP

#include "gkcalc/ktheory.hpp"

namespace gk {

/* Elementary moves of a constructive equivalence chain.  Each move is a
 * legitimate step for the class relation:
 *  - TrivialAdd / TrivialRemove: direct summand u nabla u (both idempotents
 *    equal), inserted at an end or removed from a decoupled coordinate set;
 *  - Transvection: conjugation by 1 + X with X^2 = 0 and X invariant, along
 *    the straight-line path 1 + sin(t) X in the path ring.  One-sided
 *    variants move a single idempotent of the pair and require the scalar
 *    part of the moved component to stay fixed ([X_s, P_s] = 0). */
enum class MoveSide { Both, PlusOnly, MinusOnly };

struct WitnessMove {
    enum Kind { TrivialAdd, TrivialRemove, Transvection } kind;
    S1Element summand;       // TrivialAdd / TrivialRemove content
    std::vector<int> coords; // summand coordinate positions (sorted); for an
                             // add these index into the state after the move
    AMat X;                  // Transvection
    MoveSide side = MoveSide::Both;
};

struct HomotopyWitness {
    S1Element start, end;
    std::vector<WitnessMove> moves;
};

/* Replays the chain move by move, verifying every premise exactly; with
 * `symbolic_paths` the conjugation paths are additionally expanded in the
 * path ring and checked idempotent/invariant pointwise.  Throws on any
 * mismatch; the final state must reproduce `end` bit-exactly. */
void replay_witness(const HomotopyWitness& w, bool symbolic_paths = false);

/* Constructs a witness for a pair with equal oracle keys over a decidable
 * unital target.  Returns nullopt when the pair is out of scope or the keys
 * differ (the bounded refusal used for NotEqual spot checks). */
std::optional<HomotopyWitness> build_witness(Registry& reg, const S1Element& x, const S1Element& y,
                                             Rng& rng);

} // namespace gk

#endif
