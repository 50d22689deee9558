#include "gkcalc/workspace.hpp"
#include <cctype>
#include <fstream>

using nlohmann::json;

namespace gk {

const GAlgebra* Workspace::algebra(const std::string& name) const {
    auto it = algebras.find(name);
    if (it == algebras.end()) throw Error("workspace: unknown algebra " + name);
    return it->second;
}

// ---------------------------------------------------------------------------
// serialization helpers

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows; i++) {
        json row = json::array();
        for (int j = 0; j < m.cols; j++) row.push_back(m.at(i, j).str());
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const json& j) {
    if (!j.is_array()) throw Error("schema: matrix must be an array of rows");
    int rows = (int)j.size();
    int cols = rows ? (int)j[0].size() : 0;
    Matrix m(rows, cols);
    for (int i = 0; i < rows; i++) {
        if ((int)j[i].size() != cols) throw Error("schema: ragged matrix");
        for (int c = 0; c < cols; c++) m.at(i, c) = Scalar::parse(j[i][c].get<std::string>());
    }
    return m;
}

json amat_to_json(const AMat& m) {
    json out;
    out["rows"] = m.rows;
    out["cols"] = m.cols;
    out["algebra"] = m.A->name;
    json entries = json::array();
    for (int r = 0; r < m.rows; r++)
        for (int c = 0; c < m.cols; c++) {
            if (m.entry_zero(r, c)) continue;
            json e;
            e["r"] = r;
            e["c"] = c;
            json coeffs = json::array();
            for (int b = 0; b < m.A->dim; b++) coeffs.push_back(m.at(r, c)[b].str());
            e["v"] = std::move(coeffs);
            entries.push_back(std::move(e));
        }
    out["entries"] = std::move(entries);
    return out;
}

static json pathscalar_to_json(const PathScalar& p) {
    json a = json::array(), b = json::array();
    for (const auto& s : p.a.c) a.push_back(s.str());
    for (const auto& s : p.b.c) b.push_back(s.str());
    return json{{"a", a}, {"b", b}};
}

static PathScalar pathscalar_from_json(const json& j) {
    Poly a, b;
    for (const auto& s : j.at("a")) a.c.push_back(Scalar::parse(s.get<std::string>()));
    for (const auto& s : j.at("b")) b.c.push_back(Scalar::parse(s.get<std::string>()));
    a.trim();
    b.trim();
    return PathScalar(std::move(a), std::move(b));
}

json pmat_to_json(const PMat& m) {
    json out;
    out["rows"] = m.rows;
    out["cols"] = m.cols;
    out["algebra"] = m.A->name;
    json entries = json::array();
    for (int r = 0; r < m.rows; r++)
        for (int c = 0; c < m.cols; c++) {
            if (m.entry_zero(r, c)) continue;
            json e;
            e["r"] = r;
            e["c"] = c;
            json coeffs = json::array();
            for (int b = 0; b < m.A->dim; b++) coeffs.push_back(pathscalar_to_json(m.at(r, c)[b]));
            e["v"] = std::move(coeffs);
            entries.push_back(std::move(e));
        }
    out["entries"] = std::move(entries);
    return out;
}

json cert_to_json(const StandardFormCertificate& c) {
    json out;
    out["ambient"] = c.entry_alg->name;
    out["size"] = c.size;
    out["q"] = amat_to_json(c.q);
    out["U"] = pmat_to_json(c.U);
    out["U_inverse"] = pmat_to_json(c.Uinv);
    out["start_plus"] = amat_to_json(c.start_plus);
    out["start_minus"] = amat_to_json(c.start_minus);
    out["end_plus"] = amat_to_json(c.end_plus);
    out["end_minus"] = amat_to_json(c.end_minus);
    return out;
}

json key_to_json(const InvariantVector& v) {
    json blocks = json::array();
    for (const auto& b : v.mult) blocks.push_back(b);
    return blocks;
}

json word_ast_to_json(const Word& w) {
    json out;
    out["source"] = w.src->name;
    out["target"] = w.tgt->name;
    switch (w.kind) {
        case Word::Gen: {
            out["kind"] = "gen";
            out["name"] = w.gen.name;
            static const char* kinds[] = {"hom", "corner_inv", "split", "identity"};
            out["gen_kind"] = kinds[(int)w.gen.kind];
            break;
        }
        case Word::Compose:
            out["kind"] = "compose";
            out["left"] = word_ast_to_json(*w.left);
            out["right"] = word_ast_to_json(*w.right);
            break;
        case Word::Plus: {
            out["kind"] = "plus";
            json ts = json::array();
            for (const auto& t : w.terms) ts.push_back(word_ast_to_json(*t));
            out["terms"] = std::move(ts);
            break;
        }
        case Word::Neg:
            out["kind"] = "neg";
            out["child"] = word_ast_to_json(*w.child);
            break;
    }
    return out;
}

// ---------------------------------------------------------------------------
// loading

namespace {

void check_name(const std::string& n) {
    if (n.empty() || !(std::isalpha((unsigned char)n[0]) || n[0] == '_'))
        throw Error("schema: name '" + n + "' must start with a letter");
    for (char c : n)
        if (!(std::isalnum((unsigned char)c) || c == '_'))
            throw Error("schema: name '" + n + "' contains an invalid character");
}

Rep rep_from_json(const FiniteGroup* G, const json& j) {
    if ((int)j.size() != G->order) throw Error("schema: representation needs one matrix per element");
    std::vector<Matrix> ms;
    for (const auto& m : j) ms.push_back(matrix_from_json(m));
    return Rep(G, std::move(ms));
}

json rep_to_json(const Rep& r) {
    json out = json::array();
    for (const auto& m : r.m) out.push_back(matrix_to_json(m));
    return out;
}

} // namespace

std::unique_ptr<Workspace> load_workspace(const json& doc) {
    auto ws = std::make_unique<Workspace>();
    Registry& reg = ws->reg;
    if (const char* cap = std::getenv("GKCALC_MAX_DIM")) reg.max_dim = std::atol(cap);

    if (doc.contains("meta")) ws->meta = doc.at("meta");

    // group
    FiniteGroup g;
    if (doc.contains("group")) {
        const auto& gj = doc.at("group");
        g.name = gj.value("name", "G");
        g.mul = gj.at("mul").get<std::vector<std::vector<int>>>();
        g.order = (int)g.mul.size();
    } else {
        g = FiniteGroup::trivial();
    }
    reg.G = reg.install_group(std::move(g));
    const GAlgebra* C = reg.complex_line();
    ws->algebras["C"] = C;
    ws->pool.add_identity(C, "id_C");

    // algebras
    if (doc.contains("algebras"))
        for (const auto& [name, aj] : doc.at("algebras").items()) {
            check_name(name);
            GAlgebra a;
            a.name = name;
            a.G = reg.G;
            a.basis = aj.at("basis").get<std::vector<std::string>>();
            a.dim = (int)a.basis.size();
            a.prod_table.assign(size_t(a.dim) * a.dim, {});
            for (const auto& t : aj.at("structure")) {
                int i = t.at(0).get<int>(), j2 = t.at(1).get<int>(), k = t.at(2).get<int>();
                if (i < 0 || i >= a.dim || j2 < 0 || j2 >= a.dim || k < 0 || k >= a.dim)
                    throw Error("algebra " + name + ": structure index out of range");
                a.prod_table[size_t(i) * a.dim + j2].push_back(
                    {k, Scalar::parse(t.at(3).get<std::string>())});
            }
            if (aj.contains("unit")) {
                std::vector<Scalar> u;
                for (const auto& s : aj.at("unit")) u.push_back(Scalar::parse(s.get<std::string>()));
                if ((int)u.size() != a.dim) throw Error("algebra " + name + ": unit has wrong length");
                a.unit = std::move(u);
            }
            if (aj.contains("action")) {
                for (const auto& m : aj.at("action")) a.action.push_back(matrix_from_json(m));
            }
            if (aj.contains("blocks")) {
                const auto& bj = aj.at("blocks");
                SemisimplePresentation p;
                p.sizes = bj.at("sizes").get<std::vector<int>>();
                p.iso = matrix_from_json(bj.at("iso"));
                if (bj.contains("reps"))
                    for (const auto& r : bj.at("reps")) p.block_reps.push_back(rep_from_json(reg.G, r));
                a.blocks = std::move(p);
            }
            const GAlgebra* installed = reg.install(std::move(a), true);
            ws->algebras[name] = installed;
            ws->pool.add_identity(installed, "id_" + name);
        }

    // corners (may alias their derived matrix algebra)
    if (doc.contains("corners"))
        for (const auto& [name, cj] : doc.at("corners").items()) {
            check_name(name);
            const GAlgebra* base = ws->algebra(cj.at("base").get<std::string>());
            int n = cj.at("n").get<int>();
            Rep gamma = cj.contains("rep") ? rep_from_json(reg.G, cj.at("rep")) : Rep::trivial(reg.G, n);
            std::optional<Matrix> slot;
            if (cj.contains("slot")) slot = matrix_from_json(cj.at("slot"));
            const auto& ma = reg.matrix_algebra(base, n, gamma, slot);
            ws->corners[name] = &ma;
            ws->pool.add_corner(name, &ma);
            std::string alias = cj.value("target_name", "");
            if (!alias.empty()) {
                check_name(alias);
                if (ws->algebras.count(alias)) throw Error("workspace: duplicate algebra alias " + alias);
                ws->algebras[alias] = ma.alg;
                ws->pool.add_identity(ma.alg, "id_" + alias);
            }
        }

    // homs
    if (doc.contains("homs"))
        for (const auto& [name, hj] : doc.at("homs").items()) {
            check_name(name);
            const GAlgebra* s = ws->algebra(hj.at("source").get<std::string>());
            const GAlgebra* t = ws->algebra(hj.at("target").get<std::string>());
            GHom h(s, t, matrix_from_json(hj.at("matrix")), true);
            ws->pool.add_hom(name, std::move(h));
        }

    // split-exact sequences reference homs by name
    if (doc.contains("sequences"))
        for (const auto& [name, sj] : doc.at("sequences").items()) {
            check_name(name);
            auto hom_of = [&](const json& spec) {
                if (spec.is_string()) {
                    const Generator* g2 = ws->pool.find(spec.get<std::string>());
                    if (!g2 || g2->kind != Generator::Hom)
                        throw Error("sequence " + name + ": unknown hom " + spec.get<std::string>());
                    return g2->hom;
                }
                const GAlgebra* s2 = ws->algebra(spec.at("source").get<std::string>());
                const GAlgebra* t2 = ws->algebra(spec.at("target").get<std::string>());
                return GHom(s2, t2, matrix_from_json(spec.at("matrix")), true);
            };
            ws->pool.add_seq(name, hom_of(sj.at("i")), hom_of(sj.at("f")), hom_of(sj.at("s")));
        }

    // homotopies
    if (doc.contains("homotopies"))
        for (const auto& [name, hj] : doc.at("homotopies").items()) {
            check_name(name);
            PathHom h;
            h.name = name;
            h.src = ws->algebra(hj.at("source").get<std::string>());
            h.tgt = ws->algebra(hj.at("target").get<std::string>());
            const auto& mj = hj.at("matrix");
            for (const auto& row : mj) {
                std::vector<PathScalar> r;
                for (const auto& e : row) r.push_back(pathscalar_from_json(e));
                h.mat.push_back(std::move(r));
            }
            ws->pool.add_homotopy(std::move(h));
        }

    // words are parsed now so a bad workspace fails at load time
    if (doc.contains("words"))
        for (const auto& [name, wj] : doc.at("words").items()) {
            check_name(name);
            std::string text = wj.get<std::string>();
            parse_word(text, ws->pool);
            ws->words[name] = text;
        }

    return ws;
}

std::unique_ptr<Workspace> load_workspace_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open workspace file " + path);
    json doc;
    try {
        in >> doc;
    } catch (const std::exception& e) {
        throw Error("workspace " + path + ": invalid JSON: " + e.what());
    }
    return load_workspace(doc);
}

// ---------------------------------------------------------------------------
// saving (canonical form: sorted keys, scalars in lowest terms)

nlohmann::json save_workspace(const Workspace& ws) {
    json doc;
    if (!ws.meta.is_null()) doc["meta"] = ws.meta;
    doc["group"]["name"] = ws.reg.G->name;
    doc["group"]["mul"] = ws.reg.G->mul;
    // algebras are referenced by their workspace alias, not the registry name
    std::map<const GAlgebra*, std::string> alias;
    for (const auto& [n, a] : ws.algebras)
        if (!alias.count(a)) alias[a] = n;
    auto name_of = [&](const GAlgebra* a) {
        auto it = alias.find(a);
        if (it == alias.end())
            throw Error("save: algebra " + a->name + " has no workspace alias");
        return it->second;
    };
    json algs;
    for (const auto& [name, a] : ws.algebras) {
        if (name == "C") continue;
        bool is_corner_target = false;
        for (const auto& [cn, c] : ws.corners)
            if (c->alg == a) is_corner_target = true;
        if (is_corner_target) continue;
        json aj;
        aj["basis"] = a->basis;
        json st = json::array();
        for (int i = 0; i < a->dim; i++)
            for (int j = 0; j < a->dim; j++)
                for (const auto& [k, c] : a->table(i, j)) st.push_back(json::array({i, j, k, c.str()}));
        aj["structure"] = std::move(st);
        if (a->unit) {
            json u = json::array();
            for (const auto& s : *a->unit) u.push_back(s.str());
            aj["unit"] = std::move(u);
        }
        if (!a->has_trivial_action()) {
            json act = json::array();
            for (const auto& m : a->action) act.push_back(matrix_to_json(m));
            aj["action"] = std::move(act);
        }
        if (a->blocks) {
            json bj;
            bj["sizes"] = a->blocks->sizes;
            bj["iso"] = matrix_to_json(a->blocks->iso);
            if (!a->blocks->block_reps.empty()) {
                json reps = json::array();
                for (const auto& r : a->blocks->block_reps) reps.push_back(rep_to_json(r));
                bj["reps"] = std::move(reps);
            }
            aj["blocks"] = std::move(bj);
        }
        algs[name] = std::move(aj);
    }
    doc["algebras"] = std::move(algs);
    json corners;
    for (const auto& [name, c] : ws.corners) {
        json cj;
        cj["base"] = name_of(c->base);
        cj["n"] = c->n;
        cj["rep"] = rep_to_json(c->gamma);
        if (c->corner_idem) cj["slot"] = matrix_to_json(*c->corner_idem);
        for (const auto& [an, alg] : ws.algebras)
            if (alg == c->alg && an != c->alg->name) cj["target_name"] = an;
        corners[name] = std::move(cj);
    }
    doc["corners"] = std::move(corners);
    json homs;
    for (const auto& g : ws.pool.gens) {
        if (g.kind != Generator::Hom) continue;
        // skip derived letters (corner embeddings and sequence members are
        // reconstructed from their own sections; identities are implicit)
        bool derived = false;
        for (const auto& [cn, c] : ws.corners)
            if (g.name == cn) derived = true;
        for (const auto& sq : ws.pool.seqs)
            if (g.name == sq->name + "_i" || g.name == sq->name + "_f" || g.name == sq->name + "_s")
                derived = true;
        for (const auto& h : ws.pool.homotopies)
            if (g.name == h.name + "_0" || g.name == h.name + "_1") derived = true;
        if (derived) continue;
        json hj;
        hj["source"] = name_of(g.hom.src);
        hj["target"] = name_of(g.hom.tgt);
        hj["matrix"] = matrix_to_json(g.hom.mat);
        homs[g.name] = std::move(hj);
    }
    doc["homs"] = std::move(homs);
    json seqs;
    for (const auto& sq : ws.pool.seqs) {
        json sj;
        auto hom_json = [&](const GHom& h) {
            json hj;
            hj["source"] = name_of(h.src);
            hj["target"] = name_of(h.tgt);
            hj["matrix"] = matrix_to_json(h.mat);
            return hj;
        };
        sj["i"] = hom_json(sq->i);
        sj["f"] = hom_json(sq->f);
        sj["s"] = hom_json(sq->s);
        seqs[sq->name] = std::move(sj);
    }
    doc["sequences"] = std::move(seqs);
    json hmt;
    for (const auto& h : ws.pool.homotopies) {
        json hj;
        hj["source"] = name_of(h.src);
        hj["target"] = name_of(h.tgt);
        json rows = json::array();
        for (const auto& row : h.mat) {
            json r = json::array();
            for (const auto& e : row) r.push_back(pathscalar_to_json(e));
            rows.push_back(std::move(r));
        }
        hj["matrix"] = std::move(rows);
        hmt[h.name] = std::move(hj);
    }
    doc["homotopies"] = std::move(hmt);
    json wds;
    for (const auto& [n, t] : ws.words) wds[n] = t;
    doc["words"] = std::move(wds);
    return doc;
}

// ---------------------------------------------------------------------------
// fixtures

namespace {

void export_algebra(Workspace& ws, const std::string& alias, const GAlgebra* a) {
    ws.algebras[alias] = a;
    ws.pool.add_identity(a, "id_" + alias);
}

std::unique_ptr<Workspace> fixture_trivial() {
    auto ws = std::make_unique<Workspace>();
    Registry& reg = ws->reg;
    reg.G = reg.install_group(FiniteGroup::trivial());
    const GAlgebra* C = reg.complex_line();
    ws->algebras["C"] = C;
    ws->pool.add_identity(C, "id_C");
    const auto& m2 = reg.matrix_algebra(C, 2, Rep::trivial(reg.G, 2));
    ws->corners["e2"] = &m2;
    ws->pool.add_corner("e2", &m2);
    export_algebra(*ws, "M2", m2.alg);
    const auto& d = reg.direct_sum(C, m2.alg);
    export_algebra(*ws, "D", d.alg);

    Matrix p1(4, 1);
    p1.at(0, 0) = Scalar(1);
    ws->pool.add_hom("p1", GHom(C, m2.alg, std::move(p1)));
    Matrix p2(4, 1);
    p2.at(3, 0) = Scalar(1);
    ws->pool.add_hom("p2", GHom(C, m2.alg, std::move(p2)));
    Matrix un(4, 1);
    un.at(0, 0) = Scalar(1);
    un.at(3, 0) = Scalar(1);
    ws->pool.add_hom("unit2", GHom(C, m2.alg, std::move(un)));
    ws->pool.add_hom("zero2", GHom::zero(C, m2.alg));
    ws->pool.add_hom("ia", d.inj_a);
    ws->pool.add_hom("ib", d.inj_b);
    ws->pool.add_hom("fa", d.proj_a);
    ws->pool.add_hom("fb", d.proj_b);
    ws->pool.add_seq("sq", d.inj_a, d.proj_b, d.inj_b);

    // rotation homotopy between p1 and p2
    PathScalar c = PathScalar::c_var(), s = PathScalar::s_var();
    PathHom rot;
    rot.name = "rot";
    rot.src = C;
    rot.tgt = m2.alg;
    rot.mat.assign(4, std::vector<PathScalar>(1));
    rot.mat[0][0] = c * c;
    rot.mat[1][0] = c * s;
    rot.mat[2][0] = c * s;
    rot.mat[3][0] = s * s;
    ws->pool.add_homotopy(std::move(rot));

    ws->words["gen"] = "p1";
    ws->words["roundtrip"] = "p1 . e2_inv . e2";
    ws->words["cancel"] = "p1 - p1";
    return ws;
}

std::unique_ptr<Workspace> fixture_z2() {
    auto ws = std::make_unique<Workspace>();
    Registry& reg = ws->reg;
    reg.G = reg.install_group(FiniteGroup::cyclic(2));
    const GAlgebra* C = reg.complex_line();
    ws->algebras["C"] = C;
    ws->pool.add_identity(C, "id_C");
    // inner action ad(diag(1,-1)) on M2
    Matrix dpm = Matrix::identity(2);
    dpm.at(1, 1) = Scalar(-1);
    Rep pm(reg.G, {Matrix::identity(2), dpm});
    const auto& m2 = reg.matrix_algebra(C, 2, pm);
    ws->corners["e2"] = &m2;
    ws->pool.add_corner("e2", &m2);
    export_algebra(*ws, "M2", m2.alg);
    const auto& avg = averaging_embedding(reg, C);
    ws->corners["eavg"] = &avg;
    ws->pool.add_corner("eavg", &avg);
    export_algebra(*ws, "R2", avg.alg);
    const auto& d = reg.direct_sum(C, m2.alg);
    export_algebra(*ws, "D", d.alg);

    Matrix p1(4, 1);
    p1.at(0, 0) = Scalar(1);
    ws->pool.add_hom("p1", GHom(C, m2.alg, std::move(p1)));
    Matrix p2(4, 1);
    p2.at(3, 0) = Scalar(1);
    ws->pool.add_hom("p2", GHom(C, m2.alg, std::move(p2)));
    Matrix un(4, 1);
    un.at(0, 0) = Scalar(1);
    un.at(3, 0) = Scalar(1);
    ws->pool.add_hom("unit2", GHom(C, m2.alg, std::move(un)));
    ws->pool.add_hom("ia", d.inj_a);
    ws->pool.add_hom("ib", d.inj_b);
    ws->pool.add_hom("fa", d.proj_a);
    ws->pool.add_hom("fb", d.proj_b);
    ws->pool.add_seq("sq", d.inj_a, d.proj_b, d.inj_b);
    ws->words["gen"] = "p1";
    ws->words["avg_trip"] = "p1 . e2_inv . eavg . eavg_inv . e2";
    return ws;
}

std::unique_ptr<Workspace> fixture_z3() {
    auto ws = std::make_unique<Workspace>();
    Registry& reg = ws->reg;
    reg.G = reg.install_group(FiniteGroup::cyclic(3));
    const GAlgebra* C = reg.complex_line();
    ws->algebras["C"] = C;
    ws->pool.add_identity(C, "id_C");
    const auto& avg = averaging_embedding(reg, C);
    ws->corners["eavg"] = &avg;
    ws->pool.add_corner("eavg", &avg);
    export_algebra(*ws, "R3", avg.alg);
    const auto& d = reg.direct_sum(C, C);
    export_algebra(*ws, "CC", d.alg);
    ws->pool.add_hom("ia", d.inj_a);
    ws->pool.add_hom("ib", d.inj_b);
    ws->pool.add_hom("fa", d.proj_a);
    ws->pool.add_hom("fb", d.proj_b);
    ws->pool.add_seq("sq", d.inj_a, d.proj_b, d.inj_b);
    ws->words["gen"] = "ia";
    return ws;
}

std::unique_ptr<Workspace> fixture_cswap() {
    auto ws = std::make_unique<Workspace>();
    Registry& reg = ws->reg;
    reg.G = reg.install_group(FiniteGroup::cyclic(2));
    const GAlgebra* C = reg.complex_line();
    ws->algebras["C"] = C;
    ws->pool.add_identity(C, "id_C");
    GAlgebra a;
    a.name = "Cswap";
    a.G = reg.G;
    a.dim = 2;
    a.basis = {"x", "y"};
    a.prod_table.assign(4, {});
    a.prod_table[0] = {{0, Scalar(1)}};
    a.prod_table[3] = {{1, Scalar(1)}};
    a.unit = std::vector<Scalar>{Scalar(1), Scalar(1)};
    Matrix sw(2, 2);
    sw.at(0, 1) = Scalar(1);
    sw.at(1, 0) = Scalar(1);
    a.action = {Matrix::identity(2), sw};
    SemisimplePresentation pres;
    pres.sizes = {1, 1};
    pres.iso = Matrix::identity(2);
    a.blocks = std::move(pres);
    const GAlgebra* A = reg.install(std::move(a), true);
    export_algebra(*ws, "Cswap", A);
    // the diagonal embedding C -> Cswap is equivariant
    Matrix dg(2, 1);
    dg.at(0, 0) = Scalar(1);
    dg.at(1, 0) = Scalar(1);
    ws->pool.add_hom("diag", GHom(C, A, std::move(dg)));
    ws->words["gen"] = "diag";
    return ws;
}

} // namespace

std::unique_ptr<Workspace> make_fixture(const std::string& kind) {
    if (kind == "trivial") return fixture_trivial();
    if (kind == "z2") return fixture_z2();
    if (kind == "z3") return fixture_z3();
    if (kind == "cswap") return fixture_cswap();
    throw Error("unknown fixture kind " + kind);
}

} // namespace gk
