#pragma once

// JSON interchange: matrix, ideal and chain inputs; reports and results as
// output. Rationals are always strings.

#include <string>
#include <vector>

#include "json.hpp"

#include "determina/closure.hpp"
#include "determina/determinacy.hpp"
#include "determina/dvr.hpp"
#include "determina/matrix.hpp"

namespace determina {

using Json = nlohmann::ordered_json;

struct MatrixInput {
    std::vector<std::string> vars;
    PolyMatrix matrix;
};

struct IdealInput {
    std::vector<std::string> vars;
    Ideal ideal;
    std::optional<Ideal> group_ideal;
};

struct ChainInput {
    std::vector<std::string> vars;
    std::vector<PolyMatrix> maps;
};

// Throws ParseError / ShapeError / StructureError.
Json parse_json_text(const std::string &text);
std::vector<std::string> parse_vars(const Json &j);
PolyMatrix parse_matrix(const Json &j, const std::vector<std::string> &vars);
MatrixInput parse_matrix_input(const Json &j);
IdealInput parse_ideal_input(const Json &j);
ChainInput parse_chain_input(const Json &j);

Json to_json(const PolyMatrix &a, const std::vector<std::string> &vars);
Json to_json(const Ideal &i, const std::vector<std::string> &vars);
Json to_json(const CertifiedBool &b, const std::vector<std::string> &vars);
Json to_json(const LoewyLength &ll, const std::vector<std::string> &vars);
Json to_json(const NewtonPolyhedron &poly);
Json to_json(const DeterminacyReport &r, const std::vector<std::string> &vars);
Json to_json(const SmithForm &s, const std::vector<std::string> &vars);
Json to_json(const SymCanonicalForm &s, const std::vector<std::string> &vars);
Json to_json(const SkewCanonicalForm &s, const std::vector<std::string> &vars);

// Human-readable rendering of a report.
std::string render_text(const DeterminacyReport &r, const std::vector<std::string> &vars);

} // namespace determina
