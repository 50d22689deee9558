#ifndef GKCALC_WORDS_HPP
#define GKCALC_WORDS_HPP

#include "gkcalc/algebra.hpp"
#include <memory>
#include <variant>

namespace gk {

/* a registered split-exact sequence  0 -> J -> M -> A -> 0  with split s
 * and the linear ideal projection u computed at registration */
struct SplitSeq {
    std::string name;
    GHom i, f, s;
    GHom u; // linear projection M -> J
};

/* a registered one-parameter family of homomorphisms A -> B[t] in the
 * trigonometric path model; both endpoint evaluations are GHoms */
struct PathHom {
    std::string name;
    const GAlgebra* src = nullptr;
    const GAlgebra* tgt = nullptr;
    std::vector<std::vector<PathScalar>> mat; // tgt.dim x src.dim
    void validate() const;                    // multiplicative + equivariant over the path ring
    GHom eval0() const;
    GHom eval1() const;
};

/* letters of the generator set: homomorphisms, synthetic corner inverses,
 * synthetic splits, identities */
struct Generator {
    enum Kind { Hom, CornerInv, Split, Identity } kind;
    std::string name;           // display name
    GHom hom;                   // Kind::Hom
    const Registry::MatrixAlg* corner = nullptr; // Kind::CornerInv
    std::shared_ptr<SplitSeq> seq;               // Kind::Split
    const GAlgebra* id_obj = nullptr;            // Kind::Identity

    const GAlgebra* source() const;
    const GAlgebra* target() const;
};

/* expression tree over the generators; composition is written left to
 * right: "f . g" means f first, then g */
struct Word;
using WordPtr = std::shared_ptr<const Word>;

struct Word {
    enum Kind { Gen, Compose, Plus, Neg } kind;
    Generator gen;             // Gen
    WordPtr left, right;       // Compose
    std::vector<WordPtr> terms; // Plus
    WordPtr child;             // Neg
    const GAlgebra* src = nullptr;
    const GAlgebra* tgt = nullptr;

    static WordPtr make_gen(Generator g);
    static WordPtr make_compose(WordPtr l, WordPtr r);
    static WordPtr make_plus(std::vector<WordPtr> ts);
    static WordPtr make_neg(WordPtr c);
    std::string str() const;
};

/* bracket-free signed products; the beta of the expansion step */
struct SumOfProducts {
    struct Term {
        bool negative = false;
        std::vector<Generator> letters; // left-to-right composition order
    };
    std::vector<Term> terms;
    const GAlgebra* src = nullptr;
    const GAlgebra* tgt = nullptr;

    std::string str() const;
    bool same_shape(const SumOfProducts& o) const;
};

/* expansion by distributivity/associativity; deterministic term order
 * (document order), idempotent */
SumOfProducts expand(const Word& w);

/* the generator pool a parser resolves names against */
struct GeneratorPool {
    std::vector<Generator> gens;
    std::vector<std::shared_ptr<SplitSeq>> seqs;
    std::vector<PathHom> homotopies;

    const Generator* find(const std::string& name) const;
    void add_hom(const std::string& name, GHom h);
    void add_corner(const std::string& name, const Registry::MatrixAlg* m);
    void add_seq(const std::string& name, GHom i, GHom f, GHom s);
    void add_identity(const GAlgebra* a, const std::string& name = ""); // default letter "id_<name>"
    void add_homotopy(PathHom h);         // letters "<name>_0" / "<name>_1"
};

/* DSL:  word := term (('+'|'-') term)* ; term := factor ('.' factor)* ;
 * factor := ident | '(' word ')' | '-' factor.  Errors carry positions. */
WordPtr parse_word(const std::string& text, const GeneratorPool& pool);

/* single-step relation rewriting for differential testing */
enum class RuleKind {
    ComposeHoms,   // adjacent hom letters fuse to their composition     (b)
    DropIdentity,  // delete an identity letter                          (c)
    InsertIdentity,// insert an identity letter at a boundary            (c)
    CancelCorner,  // e . e_inv -> id  /  e_inv . e -> id                (d)
    SplitIdentityM,// id_M -> Delta.i + f.s                              (f)
    SplitIdentityJ,// id_J -> i.Delta  (and contraction i.Delta -> id_J) (f)
    ContractSplitJ,
    HomotopySwap   // phi_0 <-> phi_1 for a registered homotopy          (g)
};

struct RewriteSite {
    RuleKind rule;
    int term = 0;     // index into terms
    int pos = 0;      // letter position
    int aux = -1;     // which sequence / homotopy / identity variant
    std::string describe() const;
};

/* all applicable single-step rewrites of w against the pool */
std::vector<RewriteSite> rewrite_sites(const SumOfProducts& w, const GeneratorPool& pool);

/* apply one; throws if the rule does not match at the site */
SumOfProducts rewrite_one(const SumOfProducts& w, const GeneratorPool& pool, const RewriteSite& site);

/* endpoint evaluation of a path homomorphism (relation (g) data) */
std::pair<GHom, GHom> homotopy_endpoints(const PathHom& h);

} // namespace gk

#endif
