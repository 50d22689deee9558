// gkcalc: batch front end for the K-theory normalization engine.
// Exit codes: 0 success, 1 an Indeterminate verdict where a decision was
// required, 2 validation failure, 3 internal invariant breach.

#include "CLI11.hpp"
#include "gkcalc/fuzz.hpp"
#include <fstream>
#include <iostream>

using namespace gk;
using nlohmann::json;

namespace {

constexpr int EXIT_INDETERMINATE = 1;
constexpr int EXIT_VALIDATION = 2;
constexpr int EXIT_INTERNAL = 3;

struct CommonOpts {
    std::string workspace;
    std::string fixture;
    std::string format = "text";
};

std::unique_ptr<Workspace> open_workspace(const CommonOpts& o) {
    if (!o.fixture.empty()) return make_fixture(o.fixture);
    if (o.workspace.empty()) throw Error("no workspace given (use --workspace or --fixture)");
    return load_workspace_file(o.workspace);
}

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--workspace", o.workspace, "workspace file (JSON interchange format)");
    cmd->add_option("--fixture", o.fixture, "built-in fixture: trivial, z2, z3, cswap");
    cmd->add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "machine"}));
}

void emit(const CommonOpts& o, const std::string& text, const json& machine) {
    if (o.format == "machine")
        std::cout << machine.dump(2) << "\n";
    else
        std::cout << text;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"gkcalc: normalization and classification in equivariant K-theory workspaces"};
    app.require_subcommand(1);

    CommonOpts vo, ko, po, fo, eo;
    std::string kgroup_algebra;
    std::string product_word, product_word_name, product_word_file;
    bool dump_ast = false, emit_cert = false;
    uint64_t fuzz_seed = 1;
    int fuzz_count = 200, fuzz_maxlen = 6;
    bool inject_fault = false;
    std::string emit_kind = "trivial", emit_out;

    auto* validate = app.add_subcommand("validate", "load a workspace and run every invariant");
    add_common(validate, vo);

    auto* kgroupc = app.add_subcommand("kgroup", "free abelian presentation of K^G(algebra)");
    add_common(kgroupc, ko);
    kgroupc->add_option("--algebra", kgroup_algebra, "algebra name")->required();

    auto* product = app.add_subcommand("product", "normalize a morphism word to a class report");
    add_common(product, po);
    product->add_option("--word", product_word, "word text in the DSL");
    product->add_option("--word-name", product_word_name, "named word from the workspace");
    product->add_option("--word-file", product_word_file, "file containing a DSL word");
    product->add_flag("--dump-ast", dump_ast, "emit the typed expression tree and stop");
    product->add_flag("--emit-certificate", emit_cert, "serialize the standard-form certificates");

    auto* fuzz = app.add_subcommand("fuzz-relations", "differential test of the defining relations");
    add_common(fuzz, fo);
    fuzz->add_option("--seed", fuzz_seed, "random seed");
    fuzz->add_option("--count", fuzz_count, "number of random words");
    fuzz->add_option("--max-len", fuzz_maxlen, "maximum letters per product");
    fuzz->add_flag("--inject-fault", inject_fault, "corrupt the split translation (harness sanity)");

    auto* emitfx = app.add_subcommand("emit-fixture", "write a built-in fixture as a workspace file");
    add_common(emitfx, eo);
    emitfx->add_option("--kind", emit_kind, "fixture kind");
    emitfx->add_option("--out", emit_out, "output path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) {
            std::unique_ptr<Workspace> ws;
            try {
                ws = open_workspace(vo);
            } catch (const Error& e) {
                std::cerr << "validation failure: " << e.what() << "\n";
                return EXIT_VALIDATION;
            }
            json m;
            m["ok"] = true;
            m["algebras"] = json::array();
            for (const auto& [n, a] : ws->algebras) m["algebras"].push_back(n);
            std::ostringstream os;
            os << "workspace ok: " << ws->algebras.size() << " algebras, " << ws->pool.gens.size()
               << " generator letters, " << ws->pool.seqs.size() << " sequences, "
               << ws->pool.homotopies.size() << " homotopies\n";
            emit(vo, os.str(), m);
            return 0;
        }

        if (kgroupc->parsed()) {
            auto ws = open_workspace(ko);
            const GAlgebra* B = ws->algebra(kgroup_algebra);
            KGroupResult r = kgroup(ws->reg, B);
            if (!r.determinate) {
                emit(ko, "Indeterminate: " + r.reason + "\n", json{{"indeterminate", true}, {"reason", r.reason}});
                return EXIT_INDETERMINATE;
            }
            std::ostringstream os;
            os << "K^G(" << kgroup_algebra << ") = Z^" << r.rank << "\n";
            json m;
            m["rank"] = r.rank;
            m["generators"] = json::array();
            for (size_t i = 0; i < r.generators.size(); i++) {
                os << "  generator " << i << ": key " << r.keys[i].str() << ", stabilization "
                   << r.generators[i].N << "\n";
                json g;
                g["key"] = key_to_json(r.keys[i]);
                g["N"] = r.generators[i].N;
                g["P_plus"] = amat_to_json(r.generators[i].Pp);
                g["P_minus"] = amat_to_json(r.generators[i].Pm);
                m["generators"].push_back(std::move(g));
            }
            emit(ko, os.str(), m);
            return 0;
        }

        if (product->parsed()) {
            auto ws = open_workspace(po);
            std::string text = product_word;
            if (text.empty() && !product_word_file.empty()) {
                std::ifstream in(product_word_file);
                if (!in) throw Error("cannot open word file " + product_word_file);
                std::string line;
                while (std::getline(in, line)) {
                    if (!text.empty()) text += " ";
                    text += line;
                }
            }
            if (text.empty()) {
                auto it = ws->words.find(product_word_name);
                if (it == ws->words.end())
                    throw Error("no word given (--word, --word-file or --word-name)");
                text = it->second;
            }
            WordPtr w;
            try {
                w = parse_word(text, ws->pool);
            } catch (const Error& e) {
                std::cerr << "validation failure: " << e.what() << "\n";
                return EXIT_VALIDATION;
            }
            if (dump_ast) {
                emit(po, word_ast_to_json(*w).dump(2) + "\n", word_ast_to_json(*w));
                return 0;
            }
            PhiResult r = phi(ws->reg, *w);
            KClass k = class_of(ws->reg, r.value);
            json m;
            m["word"] = text;
            m["target"] = r.value.B->name;
            m["stabilization"] = r.value.N;
            std::ostringstream os;
            if (!k.determinate) {
                os << "class: Indeterminate (" << k.reason << ")\n";
                m["indeterminate"] = true;
                m["reason"] = k.reason;
                emit(po, os.str(), m);
                return EXIT_INDETERMINATE;
            }
            os << "word: " << text << "\n";
            os << "target: " << r.value.B->name << "\n";
            os << "class key: " << k.key.str() << "\n";
            m["key"] = key_to_json(k.key);
            if (emit_cert) {
                json cs = json::array();
                for (const auto& c : r.certs) cs.push_back(cert_to_json(c));
                m["certificates"] = std::move(cs);
                os << "certificates: " << r.certs.size() << " (machine format carries the path matrices)\n";
            }
            emit(po, os.str(), m);
            return 0;
        }

        if (fuzz->parsed()) {
            auto ws = open_workspace(fo);
            FuzzOptions opt;
            opt.seed = fuzz_seed;
            opt.count = fuzz_count;
            opt.max_len = fuzz_maxlen;
            opt.inject_fault = inject_fault;
            FuzzReport r = fuzz_relations(*ws, opt);
            json m;
            m["words"] = r.words;
            m["rewrites"] = r.rewrites;
            m["mismatches"] = r.mismatches;
            m["lines"] = r.lines;
            if (!r.reproducer.empty()) m["reproducer"] = r.reproducer;
            emit(fo, r.text(), m);
            return r.ok() ? 0 : EXIT_VALIDATION;
        }

        if (emitfx->parsed()) {
            auto ws = make_fixture(emit_kind);
            json doc = save_workspace(*ws);
            if (emit_out.empty()) {
                std::cout << doc.dump(2) << "\n";
            } else {
                std::ofstream out(emit_out);
                out << doc.dump(2) << "\n";
            }
            return 0;
        }
    } catch (const DecomposeFailure& e) {
        std::cerr << "Indeterminate: " << e.what() << "\n";
        return EXIT_INDETERMINATE;
    } catch (const Error& e) {
        std::cerr << "internal invariant breach: " << e.what() << "\n";
        return EXIT_INTERNAL;
    }
    return 0;
}
