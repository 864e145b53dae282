#include "determina/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"

#include "determina/closure.hpp"
#include "determina/determinacy.hpp"
#include "determina/dvr.hpp"
#include "determina/errors.hpp"
#include "determina/io.hpp"
#include "determina/tangent.hpp"

namespace determina::cli {

namespace {

struct Options {
    std::string command;
    std::string input;
    std::string group;
    std::string sigma;
    std::optional<std::uint32_t> nmax;
    std::optional<std::uint32_t> truncation;
    std::string relative_j;
    bool unipotent = false;
    bool strict = false;
    bool pretty = false;
};

const std::map<std::string, GroupKind> groups = {
    {"gr", GroupKind::Gr},         {"gl", GroupKind::Gl},       {"glr", GroupKind::Glr},
    {"congr", GroupKind::Gcongr},  {"conj", GroupKind::Gconj},  {"gr-up", GroupKind::GrUp},
    {"glr-up", GroupKind::GlrUp},
};

const std::map<std::string, SigmaKind> sigmas = {
    {"full", SigmaKind::Full}, {"sym", SigmaKind::Sym}, {"skew", SigmaKind::Skew}, {"upper", SigmaKind::Upper}};

Json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_json_text(buf.str());
}

std::uint32_t budget(const Options &o) {
    if (o.nmax) return *o.nmax;
    if (const char *env = std::getenv("DETERMINA_NMAX")) {
        char *end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v < 0) throw InputError("DETERMINA_NMAX must be a non-negative integer");
        return static_cast<std::uint32_t>(v);
    }
    return default_nmax;
}

void validate(const Options &o) {
    static const std::map<std::string, std::vector<std::string>> allowed = {
        {"ideals", {"nmax"}},
        {"closure", {"nmax"}},
        {"anncoker", {"nmax"}},
        {"pfaffian", {}},
        {"t1", {"group", "sigma", "truncation", "unipotent", "nmax"}},
        {"determinacy", {"group", "sigma", "nmax", "unipotent", "strict"}},
        {"relative", {"group", "sigma", "nmax", "unipotent", "strict", "relative-j"}},
        {"smith", {"truncation"}},
        {"chain", {"nmax"}},
        {"loewy", {"nmax"}},
    };
    auto it = allowed.find(o.command);
    if (it == allowed.end()) throw InputError("unknown command \"" + o.command + "\"");
    auto permit = [&](const std::string &flag, bool given) {
        if (!given) return;
        const auto &ok = it->second;
        if (std::find(ok.begin(), ok.end(), flag) == ok.end())
            throw InputError("--" + flag + " does not apply to \"" + o.command + "\"");
    };
    permit("group", !o.group.empty());
    permit("sigma", !o.sigma.empty());
    permit("nmax", o.nmax.has_value());
    permit("truncation", o.truncation.has_value());
    permit("relative-j", !o.relative_j.empty());
    permit("unipotent", o.unipotent);
    permit("strict", o.strict);
    if (!o.group.empty() && !groups.count(o.group)) throw InputError("unknown group \"" + o.group + "\"");
    if (!o.sigma.empty() && !sigmas.count(o.sigma)) throw InputError("unknown sigma \"" + o.sigma + "\"");
    if (o.command == "relative" && o.relative_j.empty()) throw InputError("relative needs --relative-j FILE");
    if (o.truncation && *o.truncation == 0) throw InputError("--truncation must be positive");
}

GroupAction group_of(const Options &o) {
    return {o.group.empty() ? GroupKind::Gr : groups.at(o.group), o.unipotent};
}

SigmaKind sigma_of(const Options &o, const PolyMatrix &a) {
    if (!o.sigma.empty()) return sigmas.at(o.sigma);
    switch (a.structure().kind) {
    case StructureKind::Symmetric: return SigmaKind::Sym;
    case StructureKind::SkewSymmetric: return SigmaKind::Skew;
    case StructureKind::UpperBlock: return SigmaKind::Upper;
    case StructureKind::General: break;
    }
    return SigmaKind::Full;
}

struct Output {
    Json json;
    std::string text; // used with --pretty when set
    bool inconclusive = false;
};

Output cmd_ideals(const Options &o) {
    const auto in = parse_matrix_input(read_json_file(o.input));
    const auto &a = in.matrix;
    Output out;
    out.json["vars"] = in.vars;
    Json list = Json::array();
    for (int j = 1; j <= static_cast<int>(std::min(a.rows(), a.cols())); ++j) {
        const Ideal ideal = determinantal_ideal(a, j);
        Json e;
        e["j"] = j;
        e["generators"] = to_json(ideal, in.vars);
        e["monomial"] = ideal.is_monomial();
        if (ideal.is_monomial() && !ideal.is_zero() && !ideal.is_unit()) e["height"] = monomial_height(ideal);
        e["loewy"] = to_json(loewy_length(ideal, budget(o)), in.vars);
        list.push_back(std::move(e));
    }
    out.json["determinantal_ideals"] = std::move(list);
    return out;
}

Output cmd_closure(const Options &o) {
    const auto in = parse_ideal_input(read_json_file(o.input));
    if (!in.ideal.is_monomial()) throw StructureError("closure needs a monomial ideal");
    Output out;
    const Ideal closure = integral_closure(in.ideal);
    out.json["vars"] = in.vars;
    out.json["ideal"] = to_json(in.ideal, in.vars);
    out.json["newton_polyhedron"] = to_json(newton_polyhedron(in.ideal));
    out.json["closure"] = to_json(closure, in.vars);
    out.json["closure_loewy"] = to_json(loewy_length(closure, budget(o)), in.vars);
    return out;
}

Output cmd_loewy(const Options &o) {
    const auto in = parse_ideal_input(read_json_file(o.input));
    Output out;
    out.json["vars"] = in.vars;
    out.json["ideal"] = to_json(in.ideal, in.vars);
    const auto ll = loewy_length(in.ideal, budget(o));
    out.json["loewy"] = to_json(ll, in.vars);
    out.inconclusive = !ll.finite();
    return out;
}

Output cmd_anncoker(const Options &o) {
    const auto in = parse_matrix_input(read_json_file(o.input));
    const auto n_max = budget(o);
    Output out;
    out.json["vars"] = in.vars;
    for (bool restricted : {false, true}) {
        const auto ll = minimal_power(
            [&](std::uint32_t n) { return ann_coker_contains_power(in.matrix, n, restricted); }, n_max);
        out.json[restricted ? "restricted" : "ann_coker"] = to_json(ll, in.vars);
        out.inconclusive = out.inconclusive || !ll.finite();
    }
    return out;
}

Output cmd_pfaffian(const Options &o) {
    const auto in = parse_matrix_input(read_json_file(o.input));
    auto a = in.matrix;
    if (a.structure().kind != StructureKind::SkewSymmetric) a.with_structure(Structure::skew());
    Output out;
    out.json["vars"] = in.vars;
    if (a.rows() % 2 == 0) {
        out.json["pfaffian"] = pfaffian(a).to_string(in.vars);
        out.json["adjugate"] = to_json(pfaffian_adjugate(a), in.vars);
        out.text = pfaffian(a).to_string(in.vars) + "\n";
    } else {
        const Ideal sub = a.rows() >= 3 ? pfaffian_sub_ideal(a) : Ideal::zero(a.nvars());
        out.json["sub_pfaffian_ideal"] = to_json(sub, in.vars);
    }
    return out;
}

Output cmd_t1(const Options &o) {
    const auto in = parse_matrix_input(read_json_file(o.input));
    const auto &a = in.matrix;
    const GroupAction g = group_of(o);
    const SigmaSpace s{sigma_of(o, a), std::nullopt};
    const std::uint32_t d = o.truncation.value_or(a.max_degree() + 4);
    const JetContext ctx(a.nvars(), d, in.vars);
    Output out;
    out.json["vars"] = in.vars;
    out.json["group"] = to_string(g.kind);
    out.json["unipotent"] = g.unipotent;
    out.json["sigma"] = to_string(s.base);
    out.json["truncation"] = d;
    out.json["t1_jet_dimension"] = t1_jet_dimension(a, g, s, ctx);
    const auto ann = t1_ann_jet(a, g, s, ctx);
    Json basis = Json::array();
    for (std::size_t i = 0; i < ann.dimension(); ++i) basis.push_back(ann.row_element(i).front().to_string(in.vars));
    out.json["annihilator_jet"] = std::move(basis);
    const auto ll = minimal_power([&](std::uint32_t n) { return t1_contains_power(a, g, s, n); }, budget(o));
    out.json["annihilator_loewy"] = to_json(ll, in.vars);
    return out;
}

Output report_output(const DeterminacyReport &r, const std::vector<std::string> &vars) {
    Output out;
    out.json = to_json(r, vars);
    out.text = render_text(r, vars);
    out.inconclusive = r.verdict == Verdict::Inconclusive;
    return out;
}

Output cmd_determinacy(const Options &o) {
    const auto in = parse_matrix_input(read_json_file(o.input));
    const SigmaSpace s{sigma_of(o, in.matrix), std::nullopt};
    return report_output(report(in.matrix, group_of(o), s, budget(o)), in.vars);
}

Output cmd_relative(const Options &o) {
    const auto in = parse_matrix_input(read_json_file(o.input));
    const auto jin = parse_ideal_input(read_json_file(o.relative_j));
    if (jin.vars != in.vars) throw ShapeError("--relative-j file must use the matrix variables");
    const Ideal grp = jin.group_ideal.value_or(Ideal::unit(in.matrix.nvars()));
    return report_output(relative_report(in.matrix, group_of(o), sigma_of(o, in.matrix), jin.ideal, grp, budget(o)),
                         in.vars);
}

Output cmd_smith(const Options &o) {
    const auto in = parse_matrix_input(read_json_file(o.input));
    const std::uint32_t d = o.truncation.value_or(12);
    Output out;
    out.json["vars"] = in.vars;
    out.json["smith"] = to_json(smith_normal_form(in.matrix, d), in.vars);
    if (in.matrix.structure().kind == StructureKind::Symmetric)
        out.json["symmetric"] = to_json(sym_canonical_dvr(in.matrix, d), in.vars);
    if (in.matrix.structure().kind == StructureKind::SkewSymmetric)
        out.json["skew"] = to_json(skew_canonical_dvr(in.matrix, d), in.vars);
    return out;
}

Output cmd_chain(const Options &o) {
    const auto in = parse_chain_input(read_json_file(o.input));
    const auto bounds = chain_bounds(in.maps);
    const auto ll = minimal_power(bounds.lower, budget(o));
    Output out;
    out.json["vars"] = in.vars;
    out.json["lower_test"] = to_json(ll, in.vars);
    out.json["upper_ideal"] = bounds.upper ? to_json(*bounds.upper, in.vars) : Json(nullptr);
    if (!bounds.upper_note.empty()) out.json["upper_note"] = bounds.upper_note;
    out.inconclusive = !ll.finite();
    return out;
}

Output dispatch(const Options &o) {
    if (o.command == "ideals") return cmd_ideals(o);
    if (o.command == "closure") return cmd_closure(o);
    if (o.command == "anncoker") return cmd_anncoker(o);
    if (o.command == "pfaffian") return cmd_pfaffian(o);
    if (o.command == "t1") return cmd_t1(o);
    if (o.command == "determinacy") return cmd_determinacy(o);
    if (o.command == "relative") return cmd_relative(o);
    if (o.command == "smith") return cmd_smith(o);
    if (o.command == "chain") return cmd_chain(o);
    return cmd_loewy(o);
}

} // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    Options o;
    CLI::App app{"Finite determinacy of matrices over k[[x]]", "determina"};
    app.add_option("command", o.command,
                   "ideals | closure | anncoker | pfaffian | t1 | determinacy | relative | smith | chain | loewy")
        ->required();
    app.add_option("input", o.input, "input JSON file")->required();
    app.add_option("--group", o.group, "gr, gl, glr, congr, conj, gr-up, glr-up");
    app.add_option("--sigma", o.sigma, "full, sym, skew, upper");
    app.add_option("--nmax", o.nmax, "search budget (default 16, or DETERMINA_NMAX)");
    app.add_option("--truncation", o.truncation, "jet truncation D");
    app.add_option("--relative-j", o.relative_j, "ideal JSON file for relative determinacy");
    app.add_flag("--unipotent", o.unipotent, "use the unipotent subgroup G^(m)");
    app.add_flag("--strict", o.strict, "exit 3 when the result is inconclusive");
    app.add_flag("--pretty", o.pretty, "human-readable output");
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError &e) {
        err << "determina: " << e.what() << "\n";
        return 2;
    }
    try {
        validate(o);
        const Output result = dispatch(o);
        std::string text;
        if (o.pretty) text = result.text.empty() ? result.json.dump(2) + "\n" : result.text;
        else text = result.json.dump() + "\n";
        out << text << std::flush;
        return o.strict && result.inconclusive ? 3 : 0;
    } catch (const InputError &e) {
        err << "determina: " << e.what() << "\n";
        return 2;
    } catch (const TruncationError &e) {
        err << "determina: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception &e) {
        err << "determina: invalid input: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        err << "determina: internal error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace determina::cli
