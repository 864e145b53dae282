#include "determina/ideal.hpp"

#include <algorithm>

#include "determina/errors.hpp"

namespace determina {

namespace {

std::vector<Monomial> minimalize(std::vector<Monomial> gens) {
    std::sort(gens.begin(), gens.end(), GradedLex{});
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    std::vector<Monomial> out;
    for (const auto &g : gens) {
        // Sorted by degree, so any divisor of g is already in `out`.
        bool redundant = std::any_of(out.begin(), out.end(), [&](const Monomial &h) { return h.divides(g); });
        if (!redundant) out.push_back(g);
    }
    return out;
}

} // namespace

Ideal::Ideal(std::size_t nvars, std::vector<Poly> generators) : nvars_(nvars) {
    std::vector<Poly> gens;
    for (auto &g : generators) {
        if (g.is_zero()) continue;
        if (g.nvars() != nvars) throw ShapeError("ideal generator has the wrong variable count");
        if (g.is_unit()) {
            gens_ = {Poly::constant(nvars, 1)};
            monomial_ = true;
            return;
        }
        gens.push_back(std::move(g));
    }
    monomial_ = std::all_of(gens.begin(), gens.end(), [](const Poly &g) { return g.is_term(); });
    if (monomial_) {
        std::vector<Monomial> ms;
        for (const auto &g : gens) ms.push_back(g.terms().begin()->first);
        for (const auto &m : minimalize(std::move(ms))) gens_.push_back(Poly::term(m));
        return;
    }
    for (auto &g : gens) {
        g *= Scalar(1 / g.terms().begin()->second);
        if (std::find(gens_.begin(), gens_.end(), g) == gens_.end()) gens_.push_back(std::move(g));
    }
}

Ideal Ideal::unit(std::size_t nvars) { return Ideal(nvars, {Poly::constant(nvars, 1)}); }

Ideal Ideal::from_monomials(std::size_t nvars, const std::vector<Monomial> &gens) {
    std::vector<Poly> ps;
    for (const auto &m : gens) ps.push_back(Poly::term(m));
    return Ideal(nvars, std::move(ps));
}

bool Ideal::is_unit() const { return gens_.size() == 1 && gens_.front().is_unit(); }

bool Ideal::is_homogeneous() const {
    return std::all_of(gens_.begin(), gens_.end(), [](const Poly &g) { return g.is_homogeneous(); });
}

std::uint32_t Ideal::max_generator_degree() const {
    std::uint32_t d = 0;
    for (const auto &g : gens_) d = std::max(d, g.degree());
    return d;
}

std::vector<Monomial> Ideal::monomial_generators() const {
    if (!monomial_) throw StructureError("ideal is not monomial");
    std::vector<Monomial> out;
    for (const auto &g : gens_) out.push_back(g.terms().begin()->first);
    return out;
}

std::vector<std::string> Ideal::to_strings(std::span<const std::string> names) const {
    std::vector<std::string> out;
    for (const auto &g : gens_) out.push_back(g.to_string(names));
    return out;
}

// ---------------------------------------------------------------------------

CertifiedBool certify_containment(const ContainmentQuery &q) {
    std::vector<ModuleVec> tested = q.tested;
    if (q.full_power) {
        tested.clear();
        for (const auto &m : monomials_of_degree(q.nvars, *q.full_power))
            for (std::size_t i = 0; i < q.rank; ++i)
                tested.push_back(times_monomial(unit_vector(q.nvars, q.rank, i), m));
    }
    std::erase_if(tested, [](const ModuleVec &v) { return order_of(v) == SIZE_MAX; });

    CertifiedBool out;
    out.truncation = q.truncation;
    if (tested.empty()) {
        out.value = true;
        out.certificate = "tested module is zero";
        return out;
    }

    std::uint32_t max_tested = 0;
    bool homogeneous = true;
    for (const auto &v : tested) {
        max_tested = std::max(max_tested, degree_of(v));
        homogeneous = homogeneous && is_homogeneous(v);
    }
    for (const auto &v : q.target) homogeneous = homogeneous && is_homogeneous(v);

    std::uint32_t d = q.truncation;
    if (q.full_power) d = std::max(d, *q.full_power + 1);
    if (homogeneous) d = std::max(d, max_tested + 1);

    for (std::uint32_t step = 0; step <= q.escalation; ++step, ++d) {
        JetContext ctx(q.nvars, d);
        const auto target = span(q.target, ctx, q.rank);
        out.truncation = d;
        for (const auto &g : tested) {
            if (!target.contains(g)) {
                out.value = false;
                out.exact = true;
                out.certificate = "generator fails membership modulo m^" + std::to_string(d);
                out.witness = g;
                return out;
            }
        }
        out.value = true;
        if (q.full_power) {
            out.certificate = "Nakayama: m^" + std::to_string(*q.full_power) + "F inside L + m^" +
                              std::to_string(d) + "F";
            return out;
        }
        if (homogeneous) {
            out.certificate = "graded membership below degree " + std::to_string(d);
            return out;
        }
        // m^D F ⊆ L + m M, checked modulo m^{D+1}.
        std::vector<ModuleVec> k_gens = q.target;
        for (const auto &g : tested)
            for (std::size_t v = 0; v < q.nvars; ++v)
                k_gens.push_back(times_monomial(g, Monomial::variable(q.nvars, v)));
        JetContext wider(q.nvars, d + 1);
        const auto k_span = span(k_gens, wider, q.rank);
        bool covered = true;
        for (const auto &m : monomials_of_degree(q.nvars, d)) {
            for (std::size_t i = 0; i < q.rank && covered; ++i)
                covered = k_span.contains(times_monomial(unit_vector(q.nvars, q.rank, i), m));
            if (!covered) break;
        }
        if (covered) {
            out.certificate = "Nakayama: M inside L + m^" + std::to_string(d) + "F and m^" + std::to_string(d) +
                              "F inside L + mM";
            return out;
        }
    }
    out.truncation = d - 1;
    out.exact = false;
    out.certificate = "jet containment holds but m^D F inside L + mM was not certified up to D=" +
                      std::to_string(d - 1);
    return out;
}

// ---------------------------------------------------------------------------

Ideal ideal_sum(const Ideal &a, const Ideal &b) {
    if (a.nvars() != b.nvars()) throw ShapeError("variable-count mismatch");
    auto gens = a.generators();
    gens.insert(gens.end(), b.generators().begin(), b.generators().end());
    return Ideal(a.nvars(), std::move(gens));
}

Ideal ideal_product(const Ideal &a, const Ideal &b) {
    if (a.nvars() != b.nvars()) throw ShapeError("variable-count mismatch");
    std::vector<Poly> gens;
    for (const auto &f : a.generators())
        for (const auto &g : b.generators()) gens.push_back(f * g);
    return Ideal(a.nvars(), std::move(gens));
}

Ideal ideal_power(const Ideal &a, std::uint32_t k) {
    Ideal r = Ideal::unit(a.nvars());
    for (std::uint32_t i = 0; i < k; ++i) r = ideal_product(r, a);
    return r;
}

Ideal maximal_power(std::size_t nvars, std::uint32_t k) {
    return Ideal::from_monomials(nvars, monomials_of_degree(nvars, k));
}

Ideal ideal_intersection(const Ideal &a, const Ideal &b) {
    if (!a.is_monomial() || !b.is_monomial()) throw StructureError("intersection needs monomial ideals");
    std::vector<Monomial> gens;
    for (const auto &f : a.monomial_generators())
        for (const auto &g : b.monomial_generators()) gens.push_back(f.lcm(g));
    return Ideal::from_monomials(a.nvars(), gens);
}

static std::vector<ModuleVec> as_vectors(const std::vector<Poly> &gens) {
    std::vector<ModuleVec> out;
    for (const auto &g : gens) out.push_back({g});
    return out;
}

CertifiedBool contains_power(const Ideal &ideal, std::uint32_t n) {
    ContainmentQuery q;
    q.nvars = ideal.nvars();
    q.rank = 1;
    q.target = as_vectors(ideal.generators());
    q.full_power = n;
    q.truncation = n + 1;
    return certify_containment(q);
}

LoewyLength loewy_length(const Ideal &ideal, std::uint32_t n_max) {
    if (ideal.is_zero()) {
        LoewyLength out;
        out.budget = n_max;
        return out;
    }
    return minimal_power([&](std::uint32_t n) { return contains_power(ideal, n); }, n_max);
}

Ideal colon_monomial(const Ideal &i, const Ideal &j) {
    if (!i.is_monomial() || !j.is_monomial()) throw StructureError("colon_monomial needs monomial ideals");
    if (i.nvars() != j.nvars()) throw ShapeError("variable-count mismatch");
    const auto p = i.nvars();
    Ideal result = Ideal::unit(p);
    for (const auto &u : j.monomial_generators()) {
        std::vector<Monomial> gens;
        for (const auto &g : i.monomial_generators()) gens.push_back(g.saturating_quotient(u));
        const Ideal quotient = Ideal::from_monomials(p, gens);
        result = ideal_intersection(result, quotient);
    }
    return result;
}

CertifiedBool colon_contains_power(const Ideal &i, const Ideal &j, std::uint32_t n) {
    if (i.nvars() != j.nvars()) throw ShapeError("variable-count mismatch");
    ContainmentQuery q;
    q.nvars = i.nvars();
    q.rank = 1;
    q.target = as_vectors(i.generators());
    for (const auto &m : monomials_of_degree(q.nvars, n))
        for (const auto &g : j.generators()) q.tested.push_back({g.times_monomial(m)});
    q.truncation = n + 1 + j.max_generator_degree();
    return certify_containment(q);
}

std::uint32_t monomial_height(const Ideal &ideal) {
    if (!ideal.is_monomial()) throw StructureError("monomial_height needs a monomial ideal");
    if (ideal.is_zero() || ideal.is_unit()) throw StructureError("height of the zero or unit ideal");
    const auto p = ideal.nvars();
    std::vector<std::uint64_t> supports;
    for (const auto &g : ideal.monomial_generators()) {
        std::uint64_t s = 0;
        for (std::size_t v = 0; v < p; ++v)
            if (g[v] > 0) s |= std::uint64_t{1} << v;
        supports.push_back(s);
    }
    std::uint32_t best = static_cast<std::uint32_t>(p);
    for (std::uint64_t cover = 0; cover < (std::uint64_t{1} << p); ++cover) {
        const auto size = static_cast<std::uint32_t>(__builtin_popcountll(cover));
        if (size >= best) continue;
        if (std::all_of(supports.begin(), supports.end(), [&](std::uint64_t s) { return (s & cover) != 0; }))
            best = size;
    }
    return best;
}

bool monomial_member(const Monomial &u, const Ideal &ideal) {
    if (!ideal.is_monomial()) throw StructureError("monomial_member needs a monomial ideal");
    for (const auto &g : ideal.monomial_generators())
        if (g.divides(u)) return true;
    return false;
}

Ideal univariate_normal_form(const Ideal &ideal) {
    if (ideal.nvars() != 1) throw ShapeError("univariate normal form needs one variable");
    if (ideal.is_zero()) return ideal;
    std::uint32_t v = UINT32_MAX;
    for (const auto &g : ideal.generators()) v = std::min(v, *g.order());
    return Ideal::from_monomials(1, {Monomial(std::vector<std::uint32_t>{v})});
}

} // namespace determina
