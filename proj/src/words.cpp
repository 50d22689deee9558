#include "gkcalc/words.hpp"
#include <cctype>
#include <sstream>

namespace gk {

// ---------------------------------------------------------------------------
// path homs

void PathHom::validate() const {
    if ((int)mat.size() != tgt->dim) throw Error("path hom " + name + ": wrong shape");
    for (const auto& row : mat)
        if ((int)row.size() != src->dim) throw Error("path hom " + name + ": wrong shape");
    auto col = [&](int j) {
        std::vector<PathScalar> v(tgt->dim);
        for (int i = 0; i < tgt->dim; i++) v[i] = mat[i][j];
        return v;
    };
    auto apply = [&](const std::vector<Scalar>& x) {
        std::vector<PathScalar> out(tgt->dim);
        for (int j = 0; j < src->dim; j++) {
            if (x[j].is_zero()) continue;
            for (int i = 0; i < tgt->dim; i++) out[i] += mat[i][j] * PathScalar(x[j]);
        }
        return out;
    };
    for (int i = 0; i < src->dim; i++)
        for (int j = 0; j < src->dim; j++) {
            std::vector<Scalar> ei(src->dim), ej(src->dim);
            ei[i] = Scalar(1);
            ej[j] = Scalar(1);
            auto lhs = apply(src->mul(ei, ej));
            auto rhs = tgt->mul(col(i), col(j));
            for (int k = 0; k < tgt->dim; k++)
                if (!(lhs[k] == rhs[k]))
                    throw Error("path hom " + name + ": not multiplicative at basis pair (" +
                                std::to_string(i) + "," + std::to_string(j) + ")");
        }
    // equivariance: the path coordinate carries the trivial action
    for (int g = 0; g < src->G->order; g++)
        for (int j = 0; j < src->dim; j++) {
            std::vector<Scalar> aej(src->dim);
            for (int i = 0; i < src->dim; i++) aej[i] = src->action[g].at(i, j);
            auto lhs = apply(aej);
            auto rhs_in = col(j);
            std::vector<PathScalar> rhs(tgt->dim);
            for (int r = 0; r < tgt->dim; r++)
                for (int c = 0; c < tgt->dim; c++) {
                    if (tgt->action[g].at(r, c).is_zero()) continue;
                    rhs[r] += rhs_in[c] * PathScalar(tgt->action[g].at(r, c));
                }
            for (int k = 0; k < tgt->dim; k++)
                if (!(lhs[k] == rhs[k]))
                    throw Error("path hom " + name + ": not equivariant at g=" + std::to_string(g));
        }
}

GHom PathHom::eval0() const {
    Matrix m(tgt->dim, src->dim);
    for (int i = 0; i < tgt->dim; i++)
        for (int j = 0; j < src->dim; j++) m.at(i, j) = mat[i][j].eval0();
    return GHom(src, tgt, std::move(m), true);
}

GHom PathHom::eval1() const {
    Matrix m(tgt->dim, src->dim);
    for (int i = 0; i < tgt->dim; i++)
        for (int j = 0; j < src->dim; j++) m.at(i, j) = mat[i][j].eval1();
    return GHom(src, tgt, std::move(m), true);
}

std::pair<GHom, GHom> homotopy_endpoints(const PathHom& h) {
    h.validate();
    return {h.eval0(), h.eval1()};
}

// ---------------------------------------------------------------------------
// generators and words

const GAlgebra* Generator::source() const {
    switch (kind) {
        case Hom: return hom.src;
        case CornerInv: return corner->alg;
        case Split: return seq->f.src;
        case Identity: return id_obj;
    }
    return nullptr;
}

const GAlgebra* Generator::target() const {
    switch (kind) {
        case Hom: return hom.tgt;
        case CornerInv: return corner->base;
        case Split: return seq->i.src;
        case Identity: return id_obj;
    }
    return nullptr;
}

WordPtr Word::make_gen(Generator g) {
    auto w = std::make_shared<Word>();
    w->kind = Gen;
    w->src = g.source();
    w->tgt = g.target();
    w->gen = std::move(g);
    return w;
}

WordPtr Word::make_compose(WordPtr l, WordPtr r) {
    if (l->tgt != r->src)
        throw Error("type mismatch at composition: " + l->str() + " ends at " + l->tgt->name +
                    " but " + r->str() + " starts at " + r->src->name);
    auto w = std::make_shared<Word>();
    w->kind = Compose;
    w->src = l->src;
    w->tgt = r->tgt;
    w->left = std::move(l);
    w->right = std::move(r);
    return w;
}

WordPtr Word::make_plus(std::vector<WordPtr> ts) {
    if (ts.empty()) throw Error("empty sum");
    for (const auto& t : ts)
        if (t->src != ts[0]->src || t->tgt != ts[0]->tgt)
            throw Error("sum of morphisms with different endpoints");
    if (ts.size() == 1) return ts[0];
    auto w = std::make_shared<Word>();
    w->kind = Plus;
    w->src = ts[0]->src;
    w->tgt = ts[0]->tgt;
    w->terms = std::move(ts);
    return w;
}

WordPtr Word::make_neg(WordPtr c) {
    auto w = std::make_shared<Word>();
    w->kind = Neg;
    w->src = c->src;
    w->tgt = c->tgt;
    w->child = std::move(c);
    return w;
}

std::string Word::str() const {
    switch (kind) {
        case Gen: return gen.name;
        case Compose: return left->str() + " . " + right->str();
        case Plus: {
            std::string s = "(";
            for (size_t i = 0; i < terms.size(); i++) {
                if (i) s += " + ";
                s += terms[i]->str();
            }
            return s + ")";
        }
        case Neg: return "-(" + child->str() + ")";
    }
    return "?";
}

std::string SumOfProducts::str() const {
    std::string s;
    for (size_t i = 0; i < terms.size(); i++) {
        if (i || terms[i].negative) s += terms[i].negative ? " - " : " + ";
        for (size_t j = 0; j < terms[i].letters.size(); j++) {
            if (j) s += ".";
            s += terms[i].letters[j].name;
        }
    }
    return s.empty() ? "0" : s;
}

namespace {

bool gen_equal(const Generator& a, const Generator& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case Generator::Hom:
            return a.hom.src == b.hom.src && a.hom.tgt == b.hom.tgt && a.hom.mat == b.hom.mat;
        case Generator::CornerInv: return a.corner == b.corner;
        case Generator::Split: return a.seq == b.seq;
        case Generator::Identity: return a.id_obj == b.id_obj;
    }
    return false;
}

} // namespace

bool SumOfProducts::same_shape(const SumOfProducts& o) const {
    if (terms.size() != o.terms.size()) return false;
    for (size_t t = 0; t < terms.size(); t++) {
        if (terms[t].negative != o.terms[t].negative) return false;
        if (terms[t].letters.size() != o.terms[t].letters.size()) return false;
        for (size_t j = 0; j < terms[t].letters.size(); j++)
            if (!gen_equal(terms[t].letters[j], o.terms[t].letters[j])) return false;
    }
    return true;
}

SumOfProducts expand(const Word& w) {
    SumOfProducts out;
    out.src = w.src;
    out.tgt = w.tgt;
    switch (w.kind) {
        case Word::Gen:
            out.terms.push_back({false, {w.gen}});
            break;
        case Word::Compose: {
            SumOfProducts l = expand(*w.left), r = expand(*w.right);
            for (const auto& lt : l.terms)
                for (const auto& rt : r.terms) {
                    SumOfProducts::Term t;
                    t.negative = lt.negative != rt.negative;
                    t.letters = lt.letters;
                    t.letters.insert(t.letters.end(), rt.letters.begin(), rt.letters.end());
                    out.terms.push_back(std::move(t));
                }
            break;
        }
        case Word::Plus:
            for (const auto& c : w.terms) {
                SumOfProducts s = expand(*c);
                for (auto& t : s.terms) out.terms.push_back(std::move(t));
            }
            break;
        case Word::Neg: {
            SumOfProducts s = expand(*w.child);
            for (auto& t : s.terms) {
                t.negative = !t.negative;
                out.terms.push_back(std::move(t));
            }
            break;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// generator pool

const Generator* GeneratorPool::find(const std::string& name) const {
    for (const auto& g : gens)
        if (g.name == name) return &g;
    return nullptr;
}

void GeneratorPool::add_hom(const std::string& name, GHom h) {
    Generator g;
    g.kind = Generator::Hom;
    g.name = name;
    g.hom = std::move(h);
    gens.push_back(std::move(g));
}

void GeneratorPool::add_corner(const std::string& name, const Registry::MatrixAlg* m) {
    if (!m->corner) throw Error("corner " + name + ": no invariant corner slot available");
    add_hom(name, *m->corner);
    Generator g;
    g.kind = Generator::CornerInv;
    g.name = name + "_inv";
    g.corner = m;
    gens.push_back(std::move(g));
}

void GeneratorPool::add_seq(const std::string& name, GHom i, GHom f, GHom s) {
    auto rep = check_splitexact(i, f, s);
    if (!rep.ok) {
        std::string why;
        for (const auto& x : rep.failures) why += (why.empty() ? "" : "; ") + x;
        throw Error("sequence " + name + ": " + why);
    }
    if (!image_is_ideal(i)) throw Error("sequence " + name + ": image of i is not a two-sided ideal");
    auto seq = std::make_shared<SplitSeq>();
    seq->name = name;
    seq->i = i;
    seq->f = f;
    seq->s = s;
    seq->u = *rep.ideal_projection;
    seqs.push_back(seq);
    Generator g;
    g.kind = Generator::Split;
    g.name = "delta_" + name;
    g.seq = seq;
    gens.push_back(std::move(g));
    add_hom(name + "_i", seq->i);
    add_hom(name + "_f", seq->f);
    add_hom(name + "_s", seq->s);
}

void GeneratorPool::add_identity(const GAlgebra* a, const std::string& name) {
    Generator g;
    g.kind = Generator::Identity;
    g.name = name.empty() ? "id_" + a->name : name;
    g.id_obj = a;
    gens.push_back(std::move(g));
}

void GeneratorPool::add_homotopy(PathHom h) {
    h.validate();
    add_hom(h.name + "_0", h.eval0());
    add_hom(h.name + "_1", h.eval1());
    homotopies.push_back(std::move(h));
}

// ---------------------------------------------------------------------------
// parser

namespace {

struct Token {
    enum Kind { Ident, Dot, Plus, Minus, LParen, RParen, End } kind;
    std::string text;
    size_t pos;
};

std::vector<Token> lex(const std::string& s) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace((unsigned char)c)) { i++; continue; }
        if (std::isalpha((unsigned char)c) || c == '_') {
            size_t j = i;
            while (j < s.size() && (std::isalnum((unsigned char)s[j]) || s[j] == '_')) j++;
            out.push_back({Token::Ident, s.substr(i, j - i), i});
            i = j;
        } else if (c == '.') {
            out.push_back({Token::Dot, ".", i});
            i++;
        } else if (c == '+') {
            out.push_back({Token::Plus, "+", i});
            i++;
        } else if (c == '-') {
            out.push_back({Token::Minus, "-", i});
            i++;
        } else if (c == '(') {
            out.push_back({Token::LParen, "(", i});
            i++;
        } else if (c == ')') {
            out.push_back({Token::RParen, ")", i});
            i++;
        } else {
            throw Error("parse error at position " + std::to_string(i) + ": unexpected character '" +
                        std::string(1, c) + "'");
        }
    }
    out.push_back({Token::End, "", s.size()});
    return out;
}

struct Parser {
    const std::vector<Token>& toks;
    const GeneratorPool& pool;
    size_t at = 0;

    const Token& cur() const { return toks[at]; }
    void advance() { at++; }

    [[noreturn]] void fail(const std::string& msg) const {
        throw Error("parse error at position " + std::to_string(cur().pos) + ": " + msg);
    }

    WordPtr factor() {
        if (cur().kind == Token::Minus) {
            advance();
            return Word::make_neg(factor());
        }
        if (cur().kind == Token::LParen) {
            advance();
            WordPtr w = sum();
            if (cur().kind != Token::RParen) fail("expected ')'");
            advance();
            return w;
        }
        if (cur().kind == Token::Ident) {
            const Generator* g = pool.find(cur().text);
            if (!g) fail("unknown identifier '" + cur().text + "'");
            advance();
            return Word::make_gen(*g);
        }
        fail("expected a generator, '(' or '-'");
    }

    WordPtr product() {
        WordPtr w = factor();
        while (cur().kind == Token::Dot) {
            size_t dot_pos = cur().pos;
            advance();
            WordPtr r = factor();
            try {
                w = Word::make_compose(std::move(w), std::move(r));
            } catch (const Error& e) {
                throw Error("at position " + std::to_string(dot_pos) + ": " + e.what());
            }
        }
        return w;
    }

    WordPtr sum() {
        std::vector<WordPtr> terms;
        terms.push_back(product());
        while (cur().kind == Token::Plus || cur().kind == Token::Minus) {
            bool neg = cur().kind == Token::Minus;
            advance();
            WordPtr t = product();
            terms.push_back(neg ? Word::make_neg(std::move(t)) : std::move(t));
        }
        return Word::make_plus(std::move(terms));
    }
};

} // namespace

WordPtr parse_word(const std::string& text, const GeneratorPool& pool) {
    auto toks = lex(text);
    Parser p{toks, pool};
    WordPtr w = p.sum();
    if (p.cur().kind != Token::End) p.fail("trailing input");
    return w;
}

// ---------------------------------------------------------------------------
// rewriting

std::string RewriteSite::describe() const {
    static const char* names[] = {"compose-homs", "drop-identity",  "insert-identity",
                                  "cancel-corner", "split-identity-M", "split-identity-J",
                                  "contract-split-J", "homotopy-swap"};
    std::ostringstream os;
    os << names[(int)rule] << "@term" << term << ",pos" << pos;
    if (aux >= 0) os << ",aux" << aux;
    return os.str();
}

std::vector<RewriteSite> rewrite_sites(const SumOfProducts& w, const GeneratorPool& pool) {
    std::vector<RewriteSite> out;
    for (int t = 0; t < (int)w.terms.size(); t++) {
        const auto& L = w.terms[t].letters;
        for (int p = 0; p < (int)L.size(); p++) {
            // (c) drop identities (keep nonempty products)
            if (L[p].kind == Generator::Identity && L.size() > 1)
                out.push_back({RuleKind::DropIdentity, t, p, -1});
            // (f) identity expansions against every matching sequence
            if (L[p].kind == Generator::Identity) {
                for (int q = 0; q < (int)pool.seqs.size(); q++) {
                    if (pool.seqs[q]->f.src == L[p].id_obj)
                        out.push_back({RuleKind::SplitIdentityM, t, p, q});
                    if (pool.seqs[q]->i.src == L[p].id_obj)
                        out.push_back({RuleKind::SplitIdentityJ, t, p, q});
                }
            }
            // (g) homotopy endpoint swaps
            if (L[p].kind == Generator::Hom) {
                for (int q = 0; q < (int)pool.homotopies.size(); q++) {
                    const auto& H = pool.homotopies[q];
                    if (H.src != L[p].hom.src || H.tgt != L[p].hom.tgt) continue;
                    if (H.eval0().mat == L[p].hom.mat) out.push_back({RuleKind::HomotopySwap, t, p, 2 * q});
                    if (H.eval1().mat == L[p].hom.mat)
                        out.push_back({RuleKind::HomotopySwap, t, p, 2 * q + 1});
                }
            }
            if (p + 1 >= (int)L.size()) continue;
            // (b) adjacent homomorphisms compose
            if (L[p].kind == Generator::Hom && L[p + 1].kind == Generator::Hom)
                out.push_back({RuleKind::ComposeHoms, t, p, -1});
            // (d) corner cancellations
            if (L[p].kind == Generator::Hom && L[p + 1].kind == Generator::CornerInv &&
                L[p + 1].corner->corner && L[p].hom.mat == L[p + 1].corner->corner->mat &&
                L[p].hom.src == L[p + 1].corner->base)
                out.push_back({RuleKind::CancelCorner, t, p, 0});
            if (L[p].kind == Generator::CornerInv && L[p + 1].kind == Generator::Hom &&
                L[p].corner->corner && L[p + 1].hom.mat == L[p].corner->corner->mat &&
                L[p + 1].hom.src == L[p].corner->base)
                out.push_back({RuleKind::CancelCorner, t, p, 1});
            // (f) contraction i . Delta -> id_J
            if (L[p].kind == Generator::Hom && L[p + 1].kind == Generator::Split &&
                L[p].hom.src == L[p + 1].seq->i.src && L[p].hom.tgt == L[p + 1].seq->i.tgt &&
                L[p].hom.mat == L[p + 1].seq->i.mat)
                out.push_back({RuleKind::ContractSplitJ, t, p, -1});
        }
        // (c) identity insertions at every boundary
        for (int p = 0; p <= (int)L.size(); p++)
            out.push_back({RuleKind::InsertIdentity, t, p, -1});
    }
    return out;
}

SumOfProducts rewrite_one(const SumOfProducts& w, const GeneratorPool& pool, const RewriteSite& site) {
    if (site.term < 0 || site.term >= (int)w.terms.size()) throw Error("rewrite: bad term index");
    SumOfProducts out;
    out.src = w.src;
    out.tgt = w.tgt;
    auto mk_id = [&](const GAlgebra* a) {
        Generator g;
        g.kind = Generator::Identity;
        g.name = "id_" + a->name;
        g.id_obj = a;
        return g;
    };
    auto mk_hom = [&](const std::string& n, GHom h) {
        Generator g;
        g.kind = Generator::Hom;
        g.name = n;
        g.hom = std::move(h);
        return g;
    };
    for (int t = 0; t < (int)w.terms.size(); t++) {
        if (t != site.term) {
            out.terms.push_back(w.terms[t]);
            continue;
        }
        const auto& L = w.terms[t].letters;
        bool neg = w.terms[t].negative;
        int p = site.pos;
        auto slice = [&](int from, int to) {
            return std::vector<Generator>(L.begin() + from, L.begin() + to);
        };
        switch (site.rule) {
            case RuleKind::ComposeHoms: {
                if (p + 1 >= (int)L.size() || L[p].kind != Generator::Hom ||
                    L[p + 1].kind != Generator::Hom)
                    throw Error("rewrite: compose-homs does not match at site");
                auto letters = slice(0, p);
                letters.push_back(mk_hom(L[p].name + L[p + 1].name, L[p].hom.compose_then(L[p + 1].hom)));
                auto rest = slice(p + 2, (int)L.size());
                letters.insert(letters.end(), rest.begin(), rest.end());
                out.terms.push_back({neg, std::move(letters)});
                break;
            }
            case RuleKind::DropIdentity: {
                if (L[p].kind != Generator::Identity || L.size() <= 1)
                    throw Error("rewrite: drop-identity does not match at site");
                auto letters = slice(0, p);
                auto rest = slice(p + 1, (int)L.size());
                letters.insert(letters.end(), rest.begin(), rest.end());
                out.terms.push_back({neg, std::move(letters)});
                break;
            }
            case RuleKind::InsertIdentity: {
                if (p < 0 || p > (int)L.size()) throw Error("rewrite: bad insertion point");
                const GAlgebra* obj = p < (int)L.size() ? L[p].source() : L.back().target();
                auto letters = slice(0, p);
                letters.push_back(mk_id(obj));
                auto rest = slice(p, (int)L.size());
                letters.insert(letters.end(), rest.begin(), rest.end());
                out.terms.push_back({neg, std::move(letters)});
                break;
            }
            case RuleKind::CancelCorner: {
                if (p + 1 >= (int)L.size()) throw Error("rewrite: cancel-corner does not match");
                const GAlgebra* obj;
                if (site.aux == 0) obj = L[p].hom.src;  // e . e_inv -> id_A
                else obj = L[p].corner->alg;            // e_inv . e -> id_J
                auto letters = slice(0, p);
                letters.push_back(mk_id(obj));
                auto rest = slice(p + 2, (int)L.size());
                letters.insert(letters.end(), rest.begin(), rest.end());
                out.terms.push_back({neg, std::move(letters)});
                break;
            }
            case RuleKind::SplitIdentityM: {
                const auto& seq = pool.seqs.at(site.aux);
                if (L[p].kind != Generator::Identity || L[p].id_obj != seq->f.src)
                    throw Error("rewrite: split-identity-M does not match at site");
                Generator delta;
                delta.kind = Generator::Split;
                delta.name = "delta_" + seq->name;
                delta.seq = seq;
                auto rest = slice(p + 1, (int)L.size());
                auto first = slice(0, p);
                first.push_back(delta);
                first.push_back(mk_hom(seq->name + "_i", seq->i));
                first.insert(first.end(), rest.begin(), rest.end());
                auto second = slice(0, p);
                second.push_back(mk_hom(seq->name + "_f", seq->f));
                second.push_back(mk_hom(seq->name + "_s", seq->s));
                second.insert(second.end(), rest.begin(), rest.end());
                out.terms.push_back({neg, std::move(first)});
                out.terms.push_back({neg, std::move(second)});
                break;
            }
            case RuleKind::SplitIdentityJ: {
                const auto& seq = pool.seqs.at(site.aux);
                if (L[p].kind != Generator::Identity || L[p].id_obj != seq->i.src)
                    throw Error("rewrite: split-identity-J does not match at site");
                auto letters = slice(0, p);
                letters.push_back(mk_hom(seq->name + "_i", seq->i));
                Generator delta;
                delta.kind = Generator::Split;
                delta.name = "delta_" + seq->name;
                delta.seq = seq;
                letters.push_back(delta);
                auto rest = slice(p + 1, (int)L.size());
                letters.insert(letters.end(), rest.begin(), rest.end());
                out.terms.push_back({neg, std::move(letters)});
                break;
            }
            case RuleKind::ContractSplitJ: {
                if (p + 1 >= (int)L.size() || L[p].kind != Generator::Hom ||
                    L[p + 1].kind != Generator::Split || L[p].hom.mat != L[p + 1].seq->i.mat)
                    throw Error("rewrite: contract-split-J does not match at site");
                auto letters = slice(0, p);
                letters.push_back(mk_id(L[p].hom.src));
                auto rest = slice(p + 2, (int)L.size());
                letters.insert(letters.end(), rest.begin(), rest.end());
                out.terms.push_back({neg, std::move(letters)});
                break;
            }
            case RuleKind::HomotopySwap: {
                const auto& H = pool.homotopies.at(site.aux / 2);
                bool from0 = site.aux % 2 == 0;
                GHom expect = from0 ? H.eval0() : H.eval1();
                if (L[p].kind != Generator::Hom || L[p].hom.mat != expect.mat)
                    throw Error("rewrite: homotopy-swap does not match at site");
                auto letters = slice(0, p);
                letters.push_back(mk_hom(H.name + (from0 ? "_1" : "_0"), from0 ? H.eval1() : H.eval0()));
                auto rest = slice(p + 1, (int)L.size());
                letters.insert(letters.end(), rest.begin(), rest.end());
                out.terms.push_back({neg, std::move(letters)});
                break;
            }
        }
    }
    return out;
}

} // namespace gk
