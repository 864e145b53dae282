#include "determina/determinacy.hpp"

#include <algorithm>
#include <functional>

#include "determina/closure.hpp"
#include "determina/errors.hpp"

namespace determina {

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::NotFinitelyDetermined: return "not_finitely_determined";
    case Verdict::Bounds: return "bounds";
    case Verdict::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

namespace {

using Test = std::function<CertifiedBool(std::uint32_t)>;

Certificate search(std::string role, std::string test, const Test &fn, std::uint32_t n_max) {
    Certificate c;
    c.role = std::move(role);
    c.test = std::move(test);
    c.budget = n_max;
    const auto ll = minimal_power(fn, n_max);
    c.loewy = ll.value;
    for (const auto &r : ll.certificates) {
        c.truncation = std::max(c.truncation, r.truncation);
        c.exact = c.exact && r.exact;
        if (!c.detail.empty()) c.detail += "; ";
        c.detail += std::string(r.value ? "yes: " : "no: ") + r.certificate;
    }
    return c;
}

// ll - 1 is a lower bound on ord as soon as every N < ll failed; the failures
// are exact, so this holds even past the budget (then ord >= budget).
std::uint32_t lower_from(const Certificate &c) {
    if (!c.loewy) return c.budget;
    return *c.loewy == 0 ? 0 : *c.loewy - 1;
}

// Upper bounds need an exact "yes".
std::optional<std::uint32_t> upper_from(const Certificate &c, bool minus_one) {
    if (!c.loewy || !c.exact) return std::nullopt;
    if (!minus_one) return *c.loewy;
    return *c.loewy == 0 ? 0 : *c.loewy - 1;
}

Certificate ideal_certificate(std::string role, std::string what, const Ideal &ideal, std::uint32_t n_max) {
    Certificate c = search(
        role, "m^N in " + what, [&](std::uint32_t n) { return contains_power(ideal, n); }, n_max);
    c.ideal = ideal;
    return c;
}

void set_nfd(DeterminacyReport &r, std::string reason) {
    r.verdict = Verdict::NotFinitelyDetermined;
    r.reason = std::move(reason);
    r.lower.reset();
    r.upper.reset();
}

void finish(DeterminacyReport &r) {
    if (r.verdict == Verdict::NotFinitelyDetermined) return;
    r.verdict = r.upper ? Verdict::Bounds : Verdict::Inconclusive;
    if (r.verdict == Verdict::Inconclusive)
        r.notes.push_back("upper bound not certified within the search budget N_max = " + std::to_string(r.budget));
    if (r.lower && r.upper && *r.lower > *r.upper)
        r.notes.push_back("bound conflict: lower " + std::to_string(*r.lower) + " exceeds upper " +
                          std::to_string(*r.upper));
}

void raise_lower(DeterminacyReport &r, std::uint32_t value, const std::string &why) {
    if (!r.lower || value > *r.lower) {
        if (r.lower) r.notes.push_back("lower bound raised to " + std::to_string(value) + " by " + why);
        r.lower = value;
    }
}

void apply_rank_jump(DeterminacyReport &r, const PolyMatrix &a) {
    const auto jump = rank_jump_bound(a);
    Certificate c;
    c.role = "lower";
    c.test = "rank of jets: rank(jet_N A) < rank(A) forces ord >= N + 1";
    c.loewy = jump;
    c.detail = "generic rank " + std::to_string(generic_rank(a));
    r.certificates.push_back(c);
    raise_lower(r, jump, "the rank of jets");
}

std::optional<std::size_t> max_rank(const PolyMatrix &a, SigmaKind s) {
    switch (s) {
    case SigmaKind::Full: return std::min(a.rows(), a.cols());
    case SigmaKind::Sym: return a.rows();
    case SigmaKind::Skew: return a.rows() / 2 * 2;
    case SigmaKind::Upper: return std::nullopt;
    }
    return std::nullopt;
}

// A + s x_1^{N+1} C, C of maximal rank in Sigma, raises the rank for generic s.
bool rank_deficient(DeterminacyReport &r, const PolyMatrix &a, SigmaKind, std::size_t needed) {
    const auto rank = generic_rank(a);
    if (rank >= needed) return false;
    set_nfd(r, "generic rank " + std::to_string(rank) + " is below " + std::to_string(needed) +
                   ": perturbations of arbitrarily high order in Sigma raise the rank, which every group "
                   "element preserves");
    return true;
}

Ideal as_monomial(const Ideal &i) {
    if (i.nvars() == 1) return univariate_normal_form(i);
    return i;
}

// Monomial ideal containing a pure power of every variable.
bool monomial_primary(const Ideal &i) {
    std::vector<bool> seen(i.nvars(), false);
    for (const auto &g : i.monomial_generators()) {
        std::size_t support = 0, last = 0;
        for (std::size_t v = 0; v < g.nvars(); ++v)
            if (g[v] > 0) {
                ++support;
                last = v;
            }
        if (support == 0) return true;
        if (support == 1) seen[last] = true;
    }
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

// ann T^1 for G_r^up is the intersection of ann.coker over the leading block
// submatrices; one of them with a non-m-primary maximal minor ideal rules out
// finite determinacy.
bool leading_block_obstruction(DeterminacyReport &r, const PolyMatrix &a) {
    const auto &st = a.structure();
    std::vector<std::size_t> rows, cols;
    std::size_t r0 = 0, c0 = 0;
    for (std::size_t q = 0; q < st.col_blocks.size(); ++q) {
        if (q < st.row_blocks.size()) {
            for (std::size_t i = 0; i < st.row_blocks[q]; ++i) rows.push_back(r0 + i);
            r0 += st.row_blocks[q];
        }
        for (std::size_t j = 0; j < st.col_blocks[q]; ++j) cols.push_back(c0 + j);
        c0 += st.col_blocks[q];
        if (rows.empty()) continue;
        const Ideal top = as_monomial(determinantal_ideal(a.submatrix(rows, cols), static_cast<int>(rows.size())));
        if (!top.is_monomial()) continue;
        if (top.is_zero() || !monomial_primary(top)) {
            set_nfd(r, "the leading block submatrix through column block " + std::to_string(q + 1) +
                           " has a maximal minor ideal that is not m-primary, so ann T^1 is not m-primary");
            return true;
        }
    }
    return false;
}

void fallback_bounds(DeterminacyReport &r, const PolyMatrix &a, const GroupAction &g, const SigmaSpace &s) {
    GroupAction base{g.kind, false};
    GroupAction unip{g.kind, true};
    auto lo = search(
        "lower", "m^N T_Sigma in T_{GA}", [&](std::uint32_t n) { return t1_contains_power(a, base, s, n); },
        r.budget);
    auto up = search(
        "upper", "m^N T_Sigma in m T_{GA}", [&](std::uint32_t n) { return t1_contains_power(a, unip, s, n); },
        r.budget);
    r.lower = lower_from(lo);
    r.upper = upper_from(up, true);
    r.certificates.push_back(std::move(lo));
    r.certificates.push_back(std::move(up));
    r.notes.push_back("bounds from ll(ann T^1) - 1 and ll(ann T^1 of the unipotent subgroup) - 1");
}

void gr_bounds(DeterminacyReport &r, const PolyMatrix &a) {
    const auto m = a.rows(), n = a.cols();
    const auto p = a.nvars();
    if (a.in_maximal_ideal() && m > 0 && p + m > n + 1) {
        set_nfd(r, "p > n - m + 1: no matrix with entries in the maximal ideal is finitely G_r-determined");
        return;
    }
    if (rank_deficient(r, a, SigmaKind::Full, m)) return;
    auto lo = search(
        "lower", "m^N R^m in Im(A)", [&](std::uint32_t k) { return ann_coker_contains_power(a, k, false); },
        r.budget);
    auto up = search(
        "upper", "m^N R^m in A(m R^n)", [&](std::uint32_t k) { return ann_coker_contains_power(a, k, true); },
        r.budget);
    r.lower = lower_from(lo);
    r.upper = upper_from(up, true);
    r.certificates.push_back(std::move(lo));
    r.certificates.push_back(std::move(up));
    apply_rank_jump(r, a);
}

// Lower bound ll(closure(I) : closure(J)) - 1 on the monomial path.
bool closure_colon_lower(DeterminacyReport &r, const Ideal &top, const Ideal &below, const std::string &label) {
    const Ideal i = as_monomial(top), j = as_monomial(below);
    if (!i.is_monomial() || !j.is_monomial() || i.is_zero()) {
        r.notes.push_back("closure colon " + label + " unavailable: determinantal ideals are not monomial");
        return false;
    }
    const Ideal colon = closure_colon(i, j);
    auto c = ideal_certificate("lower", "closure colon " + label, colon, r.budget);
    r.lower = lower_from(c);
    r.certificates.push_back(std::move(c));
    return true;
}

void glr_bounds(DeterminacyReport &r, const PolyMatrix &a) {
    const auto m = a.rows(), n = a.cols();
    const auto p = a.nvars();
    if (a.in_maximal_ideal() && m > 0 && p + m > n + 1) {
        set_nfd(r, "p > n - m + 1: no matrix with entries in the maximal ideal is finitely G_lr-determined");
        return;
    }
    if (rank_deficient(r, a, SigmaKind::Full, std::min(m, n))) return;
    auto up = search(
        "upper", "m^N R^m in A(m R^n)", [&](std::uint32_t k) { return ann_coker_contains_power(a, k, true); },
        r.budget);
    r.upper = upper_from(up, true);
    r.certificates.push_back(std::move(up));
    const int mi = static_cast<int>(std::min(m, n));
    if (!closure_colon_lower(r, determinantal_ideal(a, mi), determinantal_ideal(a, mi - 1), "I_m : I_{m-1}")) {
        auto lo = search(
            "lower", "m^N T_Sigma in T_{GA}",
            [&](std::uint32_t k) { return t1_contains_power(a, {GroupKind::Glr, false}, SigmaSpace::full(), k); },
            r.budget);
        r.lower = lower_from(lo);
        r.certificates.push_back(std::move(lo));
    }
    apply_rank_jump(r, a);
}

void congr_bounds(DeterminacyReport &r, const PolyMatrix &a, const SigmaSpace &s) {
    const auto m = a.rows();
    const auto p = a.nvars();
    const bool in_m = a.in_maximal_ideal() && m > 0;
    if (s.base == SigmaKind::Full) {
        if (in_m) {
            set_nfd(r, "p > 0: no matrix with entries in the maximal ideal is finitely (Mat, G_congr)-determined");
            return;
        }
        fallback_bounds(r, a, {GroupKind::Gcongr, false}, s);
        return;
    }
    if (s.base != SigmaKind::Sym && s.base != SigmaKind::Skew) {
        fallback_bounds(r, a, {GroupKind::Gcongr, false}, s);
        return;
    }
    if (rank_deficient(r, a, s.base, *max_rank(a, s.base))) return;
    const bool odd_skew = s.base == SigmaKind::Skew && m % 2 == 1;
    if (odd_skew) {
        if (m == 1) {
            fallback_bounds(r, a, {GroupKind::Gcongr, false}, s);
            return;
        }
        if (in_m && p > 3) {
            set_nfd(r, "m odd and p > 3: no skew-symmetric matrix with entries in the maximal ideal is finitely "
                       "G_congr-determined");
            return;
        }
        const Ideal pf = pfaffian_sub_ideal(a);
        auto up = ideal_certificate("upper", "Pf_{m-1}(A)", pf, r.budget);
        r.upper = upper_from(up, false);
        r.certificates.push_back(std::move(up));
        const int mi = static_cast<int>(m);
        if (!closure_colon_lower(r, determinantal_ideal(a, mi - 1), determinantal_ideal(a, mi - 2),
                                 "I_{m-1} : I_{m-2}")) {
            auto lo = search(
                "lower", "m^N T_Sigma in T_{GA}",
                [&](std::uint32_t k) { return t1_contains_power(a, {GroupKind::Gcongr, false}, s, k); }, r.budget);
            r.lower = lower_from(lo);
            r.certificates.push_back(std::move(lo));
        }
        r.notes.push_back("upper bound ll(Pf_{m-1}(A)) is used as stated, without subtracting 1");
        apply_rank_jump(r, a);
        return;
    }
    if (in_m && p > 1) {
        set_nfd(r, "p > 1: no " + std::string(s.base == SigmaKind::Sym ? "symmetric" : "skew-symmetric") +
                       " matrix with entries in the maximal ideal is finitely G_congr-determined");
        return;
    }
    if (p > 1) {
        fallback_bounds(r, a, {GroupKind::Gcongr, false}, s);
        apply_rank_jump(r, a);
        return;
    }
    const int mi = static_cast<int>(m);
    const Ideal top = determinantal_ideal(a, mi), below = determinantal_ideal(a, mi - 1);
    closure_colon_lower(r, top, below, "I_m : I_{m-1}");
    auto up = search(
        "upper", "m^N I_{m-1} in I_m", [&](std::uint32_t k) { return colon_contains_power(top, below, k); },
        r.budget);
    r.upper = upper_from(up, false);
    r.certificates.push_back(std::move(up));
    r.notes.push_back("upper bound ll(I_m : I_{m-1}) is used as stated, without subtracting 1");
    apply_rank_jump(r, a);
}

bool trace_obstruction_holds(const PolyMatrix &a) {
    const auto p = a.nvars();
    JetContext ctx(p, 3);
    SigmaCoordinates coords(a.rows(), a.cols(), SigmaKind::Full, {});
    std::vector<ModuleVec> gens;
    for (const auto &t : tangent_generators(a, {GroupKind::Gconj, false})) gens.push_back(coords.project(t));
    const auto tangent = span(gens, ctx, coords.rank());
    return !tangent.contains(coords.project(PolyMatrix::elementary(p, a.rows(), a.cols(), 0, 0)));
}

std::vector<std::size_t> block_indices(const std::vector<std::size_t> &blocks, std::size_t b) {
    std::size_t start = 0;
    for (std::size_t k = 0; k < b; ++k) start += blocks[k];
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < blocks[b]; ++i) out.push_back(start + i);
    return out;
}

void up_bounds(DeterminacyReport &r, const PolyMatrix &a, const GroupAction &g, const SigmaSpace &s) {
    if (g.kind == GroupKind::GrUp) {
        if (rank_deficient(r, a, SigmaKind::Full, a.rows())) return;
        if (r.nvars > 0 && leading_block_obstruction(r, a)) return;
        auto lo = search(
            "lower", "m^N in ann.coker of every leading block submatrix",
            [&](std::uint32_t k) { return upper_ann_coker_contains_power(a, k); }, r.budget);
        r.lower = lower_from(lo);
        r.certificates.push_back(std::move(lo));
    } else {
        const auto &st = a.structure();
        const std::size_t k = std::min(st.row_blocks.size(), st.col_blocks.size());
        std::optional<Ideal> meet;
        bool monomial = true;
        for (std::size_t b = 0; b < k && monomial; ++b) {
            const auto block = a.submatrix(block_indices(st.row_blocks, b), block_indices(st.col_blocks, b));
            const int mb = static_cast<int>(block.rows());
            const Ideal top = as_monomial(determinantal_ideal(block, mb));
            const Ideal below = as_monomial(determinantal_ideal(block, mb - 1));
            if (!top.is_monomial() || !below.is_monomial()) {
                monomial = false;
                break;
            }
            const Ideal c = top.is_zero() ? Ideal::zero(a.nvars()) : closure_colon(top, below);
            meet = meet ? ideal_intersection(*meet, c) : c;
        }
        if (monomial && meet) {
            if (meet->is_zero()) {
                set_nfd(r, "a diagonal block has a zero maximal determinantal ideal, so ann T^1 = 0");
                return;
            }
            auto lo = ideal_certificate("lower", "intersection of diagonal-block closure colons", *meet, r.budget);
            r.lower = lower_from(lo);
            r.certificates.push_back(std::move(lo));
        } else {
            r.notes.push_back("diagonal-block closure colons unavailable: non-monomial determinantal ideals");
            auto lo = search(
                "lower", "m^N T_Sigma in T_{GA}",
                [&](std::uint32_t n) { return t1_contains_power(a, {g.kind, false}, s, n); }, r.budget);
            r.lower = lower_from(lo);
            r.certificates.push_back(std::move(lo));
        }
    }
    auto up = search(
        "upper", "m^N T_Sigma in m T_{GA}",
        [&](std::uint32_t n) { return t1_contains_power(a, {g.kind, true}, s, n); }, r.budget);
    r.upper = upper_from(up, true);
    r.certificates.push_back(std::move(up));
    apply_rank_jump(r, a);
}

void check_compatible(const PolyMatrix &a, const GroupAction &g, const SigmaSpace &s) {
    SigmaCoordinates(a.rows(), a.cols(), s.base, a.structure()).project(a);
    tangent_generators(a, {g.kind, false});
    if (s.shift && s.shift->nvars() != a.nvars()) throw ShapeError("ideal J has the wrong variable count");
}

DeterminacyReport echo(const PolyMatrix &a, const GroupAction &g, const SigmaSpace &s, std::uint32_t n_max) {
    DeterminacyReport r;
    r.matrix = a;
    r.group = g;
    r.sigma = s;
    r.nvars = a.nvars();
    r.budget = n_max;
    return r;
}

} // namespace

std::uint32_t rank_jump_bound(const PolyMatrix &a) {
    const auto rank = generic_rank(a);
    std::uint32_t best = 0;
    for (std::uint32_t n = 0; n < a.max_degree(); ++n)
        if (generic_rank(a.jet(n)) < rank) best = n + 1;
    return best;
}

DeterminacyReport report(const PolyMatrix &a, const GroupAction &g, const SigmaSpace &s, std::uint32_t n_max) {
    check_compatible(a, g, s);
    if (s.shift) return relative_report(a, g, s.base, *s.shift, Ideal::unit(a.nvars()), n_max);
    DeterminacyReport r = echo(a, g, s, n_max);
    r.notes.push_back(genericity_note(a.rows(), a.cols(), g, s.base, a.nvars()));

    if (g.kind == GroupKind::Gconj) {
        set_nfd(r, "p > 0: no matrix is finitely G_conj-determined (ann T^1 lies in every power of m)");
        r.notes.push_back(std::string("trace check: e_11 outside the conjugation tangent span mod m^3: ") +
                          (trace_obstruction_holds(a) ? "yes" : "no"));
        return r;
    }
    if (g.unipotent) {
        // G^(m) is its own unipotent subgroup, so both bounds coincide.
        auto c = search(
            "lower,upper", "m^N T_Sigma in T_{GA}", [&](std::uint32_t n) { return t1_contains_power(a, g, s, n); },
            n_max);
        r.lower = lower_from(c);
        r.upper = upper_from(c, true);
        r.certificates.push_back(std::move(c));
        finish(r);
        return r;
    }
    const bool full = s.base == SigmaKind::Full;
    switch (g.kind) {
    case GroupKind::Gr:
        if (full) gr_bounds(r, a);
        else fallback_bounds(r, a, g, s);
        break;
    case GroupKind::Gl:
        if (full) {
            auto t = report(a.transpose(), {GroupKind::Gr, false}, s, n_max);
            t.matrix = a;
            t.group = g;
            t.notes.front() = genericity_note(a.rows(), a.cols(), g, s.base, a.nvars());
            t.notes.push_back("computed as the G_r report of the transpose");
            if (t.verdict == Verdict::NotFinitelyDetermined && a.rows() < a.cols())
                t.reason = "m < n: no matrix is finitely G_l-determined (" + t.reason + ")";
            return t;
        }
        fallback_bounds(r, a, g, s);
        break;
    case GroupKind::Glr:
        if (full) glr_bounds(r, a);
        else fallback_bounds(r, a, g, s);
        break;
    case GroupKind::Gcongr: congr_bounds(r, a, s); break;
    case GroupKind::GrUp:
    case GroupKind::GlrUp:
        if (s.base == SigmaKind::Upper) up_bounds(r, a, g, s);
        else fallback_bounds(r, a, g, s);
        break;
    case GroupKind::Gconj: break;
    }
    finish(r);
    return r;
}

DeterminacyReport relative_report(const PolyMatrix &a, const GroupAction &g, SigmaKind base, const Ideal &j,
                                  const Ideal &group_ideal, std::uint32_t n_max) {
    const SigmaSpace s = SigmaSpace::shifted(base, j);
    check_compatible(a, g, s);
    if (group_ideal.nvars() != a.nvars()) throw ShapeError("group ideal has the wrong variable count");
    DeterminacyReport r = echo(a, g, s, n_max);
    r.group_ideal = group_ideal;
    if (j.is_zero()) {
        r.lower = 0;
        r.upper = 0;
        r.notes.push_back("J = 0: the deformation space is the single point A");
        finish(r);
        return r;
    }
    const bool plain_gr =
        g.kind == GroupKind::Gr && base == SigmaKind::Full && !g.unipotent && group_ideal.is_unit();
    Certificate lo;
    if (plain_gr) {
        lo = search(
            "lower", "m^N J R^m in Im(A)", [&](std::uint32_t n) { return ann_coker_colon_contains_power(a, j, n); },
            n_max);
    } else {
        lo = search(
            "lower", "m^N J T_Sigma in I T_{GA}",
            [&](std::uint32_t n) { return t1_contains_power(a, g, s, group_ideal, n); }, n_max);
    }
    const Ideal shifted_group = ideal_product(group_ideal, maximal_power(a.nvars(), 1));
    auto up = search(
        "upper", "m^N J T_Sigma in I m T_{GA}",
        [&](std::uint32_t n) { return t1_contains_power(a, g, s, shifted_group, n); }, n_max);
    r.lower = lower_from(lo);
    r.upper = upper_from(up, true);
    r.certificates.push_back(std::move(lo));
    r.certificates.push_back(std::move(up));
    if (j.is_unit() && group_ideal.is_unit()) apply_rank_jump(r, a);

    if (plain_gr && !j.is_unit()) {
        // A + Mat(J^{q+k}) lies in the G_r^(J^k) orbit once J^q annihilates coker(A).
        for (std::uint32_t q = 1; q <= n_max; ++q) {
            const auto hit = ann_coker_colon_contains_power(a, ideal_power(j, q), 0);
            if (hit.value && hit.exact) {
                r.notes.push_back("J^" + std::to_string(q) + " R^m lies in Im(A); hence A + Mat(J^(" +
                                  std::to_string(q) + "+k)) is contained in the G_r^(J^k)-orbit of A for all k >= 0");
                break;
            }
        }
    }
    finish(r);
    return r;
}

std::string genericity_note(std::size_t m, std::size_t n, const GroupAction &g, SigmaKind s, std::size_t p) {
    if (p == 0) return "p = 0: the ring is a field, outside the modeled range";
    const std::string shape = std::to_string(m) + "x" + std::to_string(n) + ", p = " + std::to_string(p);
    const std::string yes = "generic finite determinacy holds (" + shape + ")";
    const std::string no_prefix = "no finitely determined matrices with entries in m (" + shape + ")";
    switch (g.kind) {
    case GroupKind::Gr:
    case GroupKind::Glr:
        return p + m <= n + 1 ? yes : no_prefix;
    case GroupKind::Gl:
        if (m < n) return no_prefix;
        return p + n <= m + 1 ? yes : no_prefix;
    case GroupKind::Gcongr:
        if (s == SigmaKind::Full) return no_prefix;
        if (s == SigmaKind::Skew && m % 2 == 1) return p <= 3 ? yes : no_prefix;
        if (s == SigmaKind::Sym || s == SigmaKind::Skew) return p <= 1 ? yes : no_prefix;
        return "no genericity dichotomy is modeled for this Sigma (" + shape + ")";
    case GroupKind::Gconj:
        return no_prefix;
    case GroupKind::GrUp:
    case GroupKind::GlrUp:
        return "no genericity dichotomy is modeled for upper-block-triangular actions (" + shape + ")";
    }
    return yes;
}

} // namespace determina
