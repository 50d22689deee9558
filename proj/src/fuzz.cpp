#include "gkcalc/fuzz.hpp"
#include <algorithm>
#include <sstream>

namespace gk {

namespace {

/* letters indexed by source object, with weights biased toward the
 * relation-rich split and corner-inverse letters */
struct LetterTable {
    std::map<const GAlgebra*, std::vector<const Generator*>> by_source;

    explicit LetterTable(const GeneratorPool& pool) {
        std::vector<const Generator*> sorted;
        for (const auto& g : pool.gens) sorted.push_back(&g);
        std::sort(sorted.begin(), sorted.end(),
                  [](const Generator* a, const Generator* b) { return a->name < b->name; });
        for (const Generator* gp : sorted) {
            const Generator& g = *gp;
            int w = 2;
            if (g.kind == Generator::Split || g.kind == Generator::CornerInv) w = 4;
            if (g.kind == Generator::Identity) w = 1;
            for (int t = 0; t < w; t++) by_source[g.source()].push_back(&g);
        }
    }

    const Generator* pick(const GAlgebra* from, Rng& rng) const {
        auto it = by_source.find(from);
        if (it == by_source.end() || it->second.empty()) return nullptr;
        return it->second[rng.below(it->second.size())];
    }
};

WordPtr random_product(Workspace& ws, const LetterTable& table, Rng& rng, int len,
                       const GAlgebra* want_target = nullptr) {
    const GAlgebra* C = ws.reg.complex_line();
    for (int attempt = 0; attempt < 24; attempt++) {
        const GAlgebra* cur = C;
        WordPtr w;
        for (int i = 0; i < len; i++) {
            const Generator* g = table.pick(cur, rng);
            if (!g) break;
            WordPtr letter = Word::make_gen(*g);
            w = w ? Word::make_compose(w, letter) : letter;
            cur = g->target();
        }
        if (!w) continue;
        if (want_target && w->tgt != want_target) continue;
        return w;
    }
    return nullptr;
}

} // namespace

WordPtr random_word(Workspace& ws, Rng& rng, int max_len) {
    LetterTable table(ws.pool);
    for (int attempt = 0; attempt < 64; attempt++) {
        int len = (int)rng.range(1, max_len);
        WordPtr w = random_product(ws, table, rng, len);
        if (!w) continue;
        if (rng.chance(1, 4)) {
            // try a two-term sum over the same endpoints
            WordPtr second = random_product(ws, table, rng, (int)rng.range(1, max_len), w->tgt);
            if (second) {
                if (rng.chance(1, 3)) second = Word::make_neg(second);
                w = Word::make_plus({w, second});
            }
        }
        return w;
    }
    throw Error("random_word: no well-typed word found; pool has no letters from C");
}

std::string FuzzReport::text() const {
    std::ostringstream os;
    for (const auto& l : lines) os << l << "\n";
    os << "words=" << words << " rewrites=" << rewrites << " mismatches=" << mismatches << "\n";
    if (!reproducer.empty()) os << "reproducer: " << reproducer << "\n";
    return os.str();
}

FuzzReport fuzz_relations(Workspace& ws, const FuzzOptions& opt) {
    FuzzReport rep;
    Rng rng(opt.seed);
    ws.reg.fault_mode = opt.inject_fault;
    auto key_str = [&](const KClass& k) { return k.determinate ? k.key.str() : "indeterminate"; };

    auto minimize = [&](const SumOfProducts& sop, const RewriteSite& site) -> std::string {
        // try the failing term alone, then shorter trailing truncations
        SumOfProducts best = sop;
        RewriteSite best_site = site;
        auto mismatch_at = [&](const SumOfProducts& s, const RewriteSite& st) -> bool {
            try {
                SumOfProducts s2 = rewrite_one(s, ws.pool, st);
                KClass a = class_of(ws.reg, phi(ws.reg, s).value);
                KClass b = class_of(ws.reg, phi(ws.reg, s2).value);
                return a.determinate && b.determinate && !(a.key == b.key);
            } catch (const Error&) {
                return true;
            }
        };
        if (best.terms.size() > 1) {
            SumOfProducts single;
            single.src = best.src;
            single.tgt = best.tgt;
            single.terms = {best.terms[site.term]};
            RewriteSite st = site;
            st.term = 0;
            if (mismatch_at(single, st)) {
                best = single;
                best_site = st;
            }
        }
        while (best.terms[best_site.term].letters.size() > 1) {
            SumOfProducts shorter = best;
            auto& L = shorter.terms[best_site.term].letters;
            if ((int)L.size() - 1 <= best_site.pos + 1) break;
            L.pop_back();
            shorter.tgt = L.back().target();
            bool all_match = true;
            for (auto& t : shorter.terms)
                if (t.letters.back().target() != shorter.tgt) all_match = false;
            if (!all_match || !mismatch_at(shorter, best_site)) break;
            best = shorter;
        }
        return best.str() + "  [" + best_site.describe() + "]";
    };

    for (int k = 0; k < opt.count; k++) {
        WordPtr w = random_word(ws, rng, opt.max_len);
        SumOfProducts sop = expand(*w);
        rep.words++;
        std::ostringstream line;
        line << "word " << k << ": " << sop.str();
        KClass base;
        S1Element base_elem;
        bool base_failed = false;
        std::string base_err;
        try {
            base_elem = phi(ws.reg, sop).value;
            base = class_of(ws.reg, base_elem);
        } catch (const Error& e) {
            base_failed = true;
            base_err = e.what();
        }
        if (base_failed || !base.determinate) {
            rep.mismatches++;
            line << " | PIPELINE FAILURE: " << (base_failed ? base_err : base.reason);
            rep.lines.push_back(line.str());
            if (rep.reproducer.empty()) rep.reproducer = sop.str() + "  [pipeline]";
            continue;
        }
        line << " | key " << base.key.str();
        auto sites = rewrite_sites(sop, ws.pool);
        int ok_count = 0;
        for (const auto& site : sites) {
            rep.rewrites++;
            bool bad = false;
            std::string why;
            try {
                SumOfProducts s2 = rewrite_one(sop, ws.pool, site);
                PhiResult r2 = phi(ws.reg, s2);
                KClass other = class_of(ws.reg, r2.value);
                if (!other.determinate) {
                    bad = true;
                    why = "indeterminate after rewrite";
                } else if (!(other.key == base.key)) {
                    bad = true;
                    why = "key " + other.key.str();
                } else {
                    ok_count++;
                    if (opt.collect_elements) rep.equal_pairs.push_back({base_elem, r2.value});
                }
            } catch (const Error& e) {
                bad = true;
                why = e.what();
            }
            if (bad) {
                rep.mismatches++;
                line << " | MISMATCH " << site.describe() << ": " << why;
                if (rep.reproducer.empty()) rep.reproducer = minimize(sop, site);
            }
        }
        line << " | " << ok_count << "/" << sites.size() << " rewrites ok";
        rep.lines.push_back(line.str());
    }
    ws.reg.fault_mode = false;
    return rep;
}

} // namespace gk
