#include "determina/io.hpp"

#include <cctype>
#include <set>
#include <sstream>

#include "determina/errors.hpp"

namespace determina {

namespace {

std::string strip_position(const std::string &what) {
    const auto at = what.rfind(" at position ");
    return at == std::string::npos ? what : what.substr(0, at);
}

Poly parse_entry(const Json &j, const std::vector<std::string> &vars, const std::string &where) {
    std::string text;
    if (j.is_string()) text = j.get<std::string>();
    else if (j.is_number_integer()) text = std::to_string(j.get<long long>());
    else throw InputError(where + ": expected a polynomial string");
    try {
        return parse_poly(text, vars);
    } catch (const ParseError &e) {
        throw ParseError(where + ": " + strip_position(e.what()), e.position());
    }
}

const Json &field(const Json &j, const char *name) {
    if (!j.is_object()) throw InputError("expected a JSON object");
    auto it = j.find(name);
    if (it == j.end()) throw InputError(std::string("missing field \"") + name + "\"");
    return *it;
}

std::vector<std::size_t> parse_sizes(const Json &j, const char *what) {
    if (!j.is_array()) throw InputError(std::string("blocks.") + what + " must be an array");
    std::vector<std::size_t> out;
    for (const auto &v : j) {
        if (!v.is_number_unsigned() || v.get<std::size_t>() == 0)
            throw InputError(std::string("blocks.") + what + " must hold positive integers");
        out.push_back(v.get<std::size_t>());
    }
    return out;
}

Ideal parse_ideal_array(const Json &j, const std::vector<std::string> &vars, const std::string &name) {
    if (!j.is_array()) throw InputError("\"" + name + "\" must be an array of polynomial strings");
    std::vector<Poly> gens;
    for (std::size_t k = 0; k < j.size(); ++k)
        gens.push_back(parse_entry(j[k], vars, name + " generator " + std::to_string(k + 1)));
    return Ideal(vars.size(), std::move(gens));
}

Json string_array(const std::vector<std::string> &v) {
    Json a = Json::array();
    for (const auto &s : v) a.push_back(s);
    return a;
}

Json optional_number(const std::optional<std::uint32_t> &v) { return v ? Json(*v) : Json(nullptr); }

} // namespace

Json parse_json_text(const std::string &text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw ParseError("malformed JSON", e.byte);
    }
}

std::vector<std::string> parse_vars(const Json &j) {
    const Json &v = field(j, "vars");
    if (!v.is_array() || v.empty()) throw InputError("\"vars\" must be a non-empty array of names");
    std::vector<std::string> vars;
    std::set<std::string> seen;
    for (const auto &name : v) {
        if (!name.is_string()) throw InputError("variable names must be strings");
        const auto s = name.get<std::string>();
        if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
            throw InputError("invalid variable name \"" + s + "\"");
        for (char c : s)
            if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
                throw InputError("invalid variable name \"" + s + "\"");
        if (!seen.insert(s).second) throw InputError("duplicate variable name \"" + s + "\"");
        vars.push_back(s);
    }
    return vars;
}

PolyMatrix parse_matrix(const Json &j, const std::vector<std::string> &vars) {
    const Json &rows = j.is_array() ? j : field(j, "matrix");
    if (!rows.is_array() || rows.empty()) throw ShapeError("\"matrix\" must be a non-empty array of rows");
    std::vector<std::vector<Poly>> entries;
    std::size_t cols = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!rows[i].is_array() || rows[i].empty()) throw ShapeError("row " + std::to_string(i + 1) + " is not a non-empty array");
        if (i == 0) cols = rows[i].size();
        if (rows[i].size() != cols)
            throw ShapeError("row " + std::to_string(i + 1) + " has " + std::to_string(rows[i].size()) +
                             " entries, expected " + std::to_string(cols));
        std::vector<Poly> row;
        for (std::size_t c = 0; c < cols; ++c)
            row.push_back(parse_entry(rows[i][c], vars,
                                      "entry (" + std::to_string(i + 1) + "," + std::to_string(c + 1) + ")"));
        entries.push_back(std::move(row));
    }
    Structure st;
    if (j.is_object() && j.contains("structure")) {
        const auto &s = j["structure"];
        if (!s.is_string()) throw InputError("\"structure\" must be a string");
        const auto name = s.get<std::string>();
        if (name == "general") st = Structure::general();
        else if (name == "sym") st = Structure::symmetric();
        else if (name == "skew") st = Structure::skew();
        else if (name == "upper") {
            const Json &b = field(j, "blocks");
            st = Structure::upper(parse_sizes(field(b, "rows"), "rows"), parse_sizes(field(b, "cols"), "cols"));
        } else throw InputError("unknown structure \"" + name + "\"");
    }
    return PolyMatrix(vars.size(), std::move(entries), st);
}

MatrixInput parse_matrix_input(const Json &j) {
    MatrixInput in;
    in.vars = parse_vars(j);
    in.matrix = parse_matrix(j, in.vars);
    return in;
}

IdealInput parse_ideal_input(const Json &j) {
    IdealInput in;
    in.vars = parse_vars(j);
    in.ideal = parse_ideal_array(field(j, "ideal"), in.vars, "ideal");
    if (j.contains("group_ideal")) in.group_ideal = parse_ideal_array(j["group_ideal"], in.vars, "group_ideal");
    return in;
}

ChainInput parse_chain_input(const Json &j) {
    ChainInput in;
    in.vars = parse_vars(j);
    const Json &c = field(j, "chain");
    if (!c.is_array() || c.empty()) throw InputError("\"chain\" must be a non-empty array of matrices");
    for (const auto &m : c) in.maps.push_back(parse_matrix(m, in.vars));
    return in;
}

// ---------------------------------------------------------------------------

Json to_json(const PolyMatrix &a, const std::vector<std::string> &vars) {
    Json j;
    j["vars"] = string_array(vars);
    Json rows = Json::array();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t c = 0; c < a.cols(); ++c) row.push_back(a(i, c).to_string(vars));
        rows.push_back(std::move(row));
    }
    j["matrix"] = std::move(rows);
    j["structure"] = to_string(a.structure().kind);
    if (a.structure().kind == StructureKind::UpperBlock)
        j["blocks"] = {{"rows", a.structure().row_blocks}, {"cols", a.structure().col_blocks}};
    return j;
}

Json to_json(const Ideal &i, const std::vector<std::string> &vars) { return string_array(i.to_strings(vars)); }

Json to_json(const CertifiedBool &b, const std::vector<std::string> &vars) {
    Json j;
    j["value"] = b.value;
    j["truncation"] = b.truncation;
    j["exact"] = b.exact;
    j["certificate"] = b.certificate;
    if (b.witness) {
        Json w = Json::array();
        for (const auto &f : *b.witness) w.push_back(f.to_string(vars));
        j["witness"] = std::move(w);
    }
    return j;
}

Json to_json(const LoewyLength &ll, const std::vector<std::string> &vars) {
    Json j;
    j["loewy_length"] = optional_number(ll.value);
    j["budget"] = ll.budget;
    Json certs = Json::array();
    for (const auto &c : ll.certificates) certs.push_back(to_json(c, vars));
    j["certificates"] = std::move(certs);
    return j;
}

Json to_json(const NewtonPolyhedron &poly) {
    Json j;
    Json src = Json::array();
    for (const auto &s : poly.sources) src.push_back(std::vector<std::uint32_t>(s.exponents().begin(), s.exponents().end()));
    j["sources"] = std::move(src);
    Json facets = Json::array();
    for (const auto &f : poly.facets) {
        Json normal = Json::array();
        for (const auto &x : f.normal) normal.push_back(scalar_to_string(x));
        facets.push_back({{"normal", std::move(normal)}, {"offset", scalar_to_string(f.offset)}});
    }
    j["facets"] = std::move(facets);
    Json verts = Json::array();
    for (const auto &v : poly.vertices()) verts.push_back(std::vector<std::uint32_t>(v.exponents().begin(), v.exponents().end()));
    j["vertices"] = std::move(verts);
    return j;
}

Json to_json(const DeterminacyReport &r, const std::vector<std::string> &vars) {
    Json input;
    input["vars"] = string_array(vars);
    input["matrix"] = to_json(r.matrix, vars);
    input["group"] = to_string(r.group.kind);
    input["unipotent"] = r.group.unipotent;
    input["sigma"] = to_string(r.sigma.base);
    if (r.sigma.shift) input["sigma_ideal"] = to_json(*r.sigma.shift, vars);
    if (r.group_ideal) input["group_ideal"] = to_json(*r.group_ideal, vars);
    input["p"] = r.nvars;
    input["nmax"] = r.budget;

    Json j;
    j["input"] = std::move(input);
    j["verdict"] = to_string(r.verdict);
    if (r.verdict == Verdict::NotFinitelyDetermined) j["reason"] = r.reason;
    j["lower"] = optional_number(r.lower);
    j["upper"] = optional_number(r.upper);
    Json certs = Json::array();
    std::set<std::uint32_t> truncations;
    for (const auto &c : r.certificates) {
        Json cj;
        cj["role"] = c.role;
        cj["test"] = c.test;
        cj["loewy_length"] = optional_number(c.loewy);
        cj["budget"] = c.budget;
        cj["truncation"] = c.truncation;
        cj["exact"] = c.exact;
        if (c.ideal) cj["ideal"] = to_json(*c.ideal, vars);
        if (!c.detail.empty()) cj["detail"] = c.detail;
        if (c.truncation > 0) truncations.insert(c.truncation);
        certs.push_back(std::move(cj));
    }
    j["certificates"] = std::move(certs);
    j["truncations"] = truncations;
    j["truncation_policy"] = "each test starts at D = N + 1 + max generator degree and escalates D until the "
                             "Nakayama certificate closes";
    j["model"] = "formal power series ring; finite determinacy is decided in k[[x]] only, smooth germs are not "
                 "modeled";
    j["notes"] = string_array(r.notes);
    return j;
}

Json to_json(const SmithForm &s, const std::vector<std::string> &vars) {
    Json j;
    j["valuations"] = s.valuations;
    j["truncation"] = s.truncation;
    j["U"] = to_json(s.left, vars);
    j["diag"] = to_json(s.diag, vars);
    j["V"] = to_json(s.right, vars);
    return j;
}

Json to_json(const SymCanonicalForm &s, const std::vector<std::string> &vars) {
    Json j;
    j["valuations"] = s.valuations;
    Json c = Json::array();
    for (const auto &x : s.coefficients) c.push_back(scalar_to_string(x));
    j["coefficients"] = std::move(c);
    j["truncation"] = s.truncation;
    j["U"] = to_json(s.transform, vars);
    j["form"] = to_json(s.form, vars);
    return j;
}

Json to_json(const SkewCanonicalForm &s, const std::vector<std::string> &vars) {
    Json j;
    j["pair_valuations"] = s.pair_valuations;
    j["zero_block"] = s.zero_block;
    j["truncation"] = s.truncation;
    j["U"] = to_json(s.transform, vars);
    j["form"] = to_json(s.form, vars);
    return j;
}

std::string render_text(const DeterminacyReport &r, const std::vector<std::string> &vars) {
    std::ostringstream out;
    out << "group " << to_string(r.group.kind) << (r.group.unipotent ? " (unipotent)" : "") << ", sigma "
        << to_string(r.sigma.base);
    if (r.sigma.shift) out << " shifted by (" << to_json(*r.sigma.shift, vars).dump() << ")";
    out << ", p = " << r.nvars << ", N_max = " << r.budget << "\n";
    auto num = [](const std::optional<std::uint32_t> &v) { return v ? std::to_string(*v) : std::string("?"); };
    switch (r.verdict) {
    case Verdict::NotFinitelyDetermined: out << "not finitely determined: " << r.reason << "\n"; break;
    case Verdict::Bounds: out << num(r.lower) << " <= ord <= " << num(r.upper) << "\n"; break;
    case Verdict::Inconclusive: out << "inconclusive: " << num(r.lower) << " <= ord, upper bound unknown\n"; break;
    }
    for (const auto &c : r.certificates) {
        out << "  [" << c.role << "] " << c.test << ": ";
        out << (c.loewy ? "ll = " + std::to_string(*c.loewy) : "ll > " + std::to_string(c.budget));
        if (c.truncation) out << " (D <= " << c.truncation << (c.exact ? "" : ", not certified") << ")";
        if (c.ideal) out << " ideal " << to_json(*c.ideal, vars).dump();
        out << "\n";
    }
    for (const auto &n : r.notes) out << "  note: " << n << "\n";
    return out.str();
}

} // namespace determina
