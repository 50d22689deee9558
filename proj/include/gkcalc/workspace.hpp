#ifndef GKCALC_WORKSPACE_HPP
#define GKCALC_WORKSPACE_HPP

#include "gkcalc/witness.hpp"
#include "json.hpp"

namespace gk {

/* A loaded workspace: the registry of objects plus the generator pool the
 * DSL resolves against.  All validation happens at load time. */
struct Workspace {
    Registry reg;
    GeneratorPool pool;
    std::map<std::string, const GAlgebra*> algebras; // user names and aliases
    std::map<std::string, const Registry::MatrixAlg*> corners;
    std::map<std::string, std::string> words;
    nlohmann::json meta; // provenance, carried through load/save untouched

    Workspace() = default;
    Workspace(const Workspace&) = delete;
    Workspace& operator=(const Workspace&) = delete;
    Workspace(Workspace&&) = default;

    const GAlgebra* algebra(const std::string& name) const;
};

/* interchange format */
std::unique_ptr<Workspace> load_workspace(const nlohmann::json& doc);
std::unique_ptr<Workspace> load_workspace_file(const std::string& path);
nlohmann::json save_workspace(const Workspace& ws);

/* built-in fixture corpora (also used by the acceptance suite):
 * "trivial"  - trivial group, C / M2 / C(+)M2 with homs, corner, sequence,
 *              and a rotation homotopy
 * "z2"       - Z/2 with an inner matrix action, the averaging corner, a
 *              direct-sum sequence
 * "z3"       - Z/3 with the averaging corner and a direct-sum sequence
 * "cswap"    - Z/2 permuting the two summands of C(+)C: valid objects whose
 *              classes are outside the oracle scope (Indeterminate) */
std::unique_ptr<Workspace> make_fixture(const std::string& kind);

/* serialization helpers shared by reports */
nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);
nlohmann::json amat_to_json(const AMat& m);
nlohmann::json pmat_to_json(const PMat& m);
nlohmann::json cert_to_json(const StandardFormCertificate& c);
nlohmann::json key_to_json(const InvariantVector& v);
nlohmann::json word_ast_to_json(const Word& w);

} // namespace gk

#endif
