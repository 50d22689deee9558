#ifndef GKCALC_FUZZ_HPP
#define GKCALC_FUZZ_HPP

#include "gkcalc/workspace.hpp"

namespace gk {

/* differential relation testing: random well-typed words, every applicable
 * single-step rewrite, classes compared through the oracle */
struct FuzzOptions {
    uint64_t seed = 1;
    int count = 200;
    int max_len = 6;
    bool inject_fault = false; // harness sanity: corrupt the fusion formula
    bool collect_elements = false; // keep (element, element) pairs of equal verdicts
};

struct FuzzReport {
    int words = 0;
    int rewrites = 0;
    int mismatches = 0;
    std::vector<std::string> lines; // deterministic, byte-stable under a fixed seed
    std::string reproducer;         // minimized first failure, empty when ok
    std::vector<std::pair<S1Element, S1Element>> equal_pairs; // when collect_elements

    bool ok() const { return mismatches == 0; }
    std::string text() const;
};

FuzzReport fuzz_relations(Workspace& ws, const FuzzOptions& opt);

/* random well-typed word from C, biased toward split and corner letters */
WordPtr random_word(Workspace& ws, Rng& rng, int max_len);

} // namespace gk

#endif
