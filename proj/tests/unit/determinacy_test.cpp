#include "doctest.h"

#include "../support/support.hpp"
#include "determina/determinacy.hpp"
#include "determina/io.hpp"

using namespace determina;

namespace {

PolyMatrix mat(std::size_t p, std::vector<std::vector<const char *>> rows, Structure st = {}) {
    std::vector<std::vector<Poly>> e;
    for (const auto &r : rows) {
        e.emplace_back();
        for (const char *s : r) e.back().push_back(parse_poly(s, support::names(p)));
    }
    return PolyMatrix(p, std::move(e), std::move(st));
}

const PolyMatrix example = mat(2, {{"x^5", "0", "y^3"}, {"0", "y^4", "x^3"}});

} // namespace

TEST_SUITE("determinacy") {

TEST_CASE("worked example under the two-sided action") {
    const auto r = report(example, {GroupKind::Glr, false}, SigmaSpace::full(), 16);
    CHECK(r.verdict == Verdict::Bounds);
    CHECK(r.lower == 4u);
    // ll(ann.coker restricted) = 11; the printed bound is one higher.
    CHECK(r.upper == 10u);
}

TEST_CASE("worked example under the right action") {
    const auto r = report(example, {GroupKind::Gr, false}, SigmaSpace::full(), 16);
    CHECK(r.verdict == Verdict::Bounds);
    CHECK(r.lower == 10u);
    CHECK(r.upper == 10u);
}

TEST_CASE("numerical full-rank matrices are 0-determined") {
    const auto a = mat(2, {{"1", "2", "x"}, {"0", "1", "y"}});
    const auto r = report(a, {GroupKind::Gr, false}, SigmaSpace::full(), 8);
    CHECK(r.verdict == Verdict::Bounds);
    CHECK(r.lower == 0u);
    CHECK(r.upper == 0u);
}

TEST_CASE("negativity dispatch") {
    const auto sym = mat(2, {{"x", "y"}, {"y", "x^2"}}, Structure::symmetric());
    CHECK(report(sym, {GroupKind::Gcongr, false}, SigmaSpace::sym(), 8).verdict == Verdict::NotFinitelyDetermined);

    const auto sq = mat(3, {{"x", "y"}, {"z", "x"}});
    CHECK(report(sq, {GroupKind::Glr, false}, SigmaSpace::full(), 8).verdict == Verdict::NotFinitelyDetermined);
    CHECK(report(sq, {GroupKind::Gconj, false}, SigmaSpace::full(), 8).verdict == Verdict::NotFinitelyDetermined);
    CHECK(report(sq, {GroupKind::Gcongr, false}, SigmaSpace::full(), 8).verdict ==
          Verdict::NotFinitelyDetermined);

    // m < n, A in Mat(m), left action.
    CHECK(report(example, {GroupKind::Gl, false}, SigmaSpace::full(), 8).verdict ==
          Verdict::NotFinitelyDetermined);
}

TEST_CASE("generic rank deficiency") {
    const auto a = mat(2, {{"x", "y"}, {"x^2", "x*y"}});
    const auto r = report(a, {GroupKind::Gr, false}, SigmaSpace::full(), 8);
    CHECK(r.verdict == Verdict::NotFinitelyDetermined);
}

TEST_CASE("univariate symmetric congruence") {
    const auto a = mat(1, {{"x", "0"}, {"0", "x^3"}}, Structure::symmetric());
    const auto r = report(a, {GroupKind::Gcongr, false}, SigmaSpace::sym(), 12);
    CHECK(r.verdict == Verdict::Bounds);
    REQUIRE(r.lower.has_value());
    REQUIRE(r.upper.has_value());
    CHECK(*r.lower <= *r.upper);
    CHECK(*r.lower >= rank_jump_bound(a));
}

TEST_CASE("upper-block-triangular reports") {
    const auto a = mat(2, {{"x*y", "4", "-3"}, {"0", "-3", "x*y + 2"}}, Structure::upper({1, 1}, {1, 2}));
    CHECK(report(a, {GroupKind::GrUp, false}, SigmaSpace::upper(), 8).verdict == Verdict::NotFinitelyDetermined);
    const auto b = mat(2, {{"x", "y", "x*y"}, {"0", "0", "1 + x"}}, Structure::upper({1, 1}, {2, 1}));
    const auto r = report(b, {GroupKind::GrUp, false}, SigmaSpace::upper(), 10);
    CHECK(r.verdict == Verdict::Bounds);
    if (r.lower && r.upper) CHECK(*r.lower <= *r.upper);
}

TEST_CASE("budget exhaustion is inconclusive") {
    const auto r = report(example, {GroupKind::Gr, false}, SigmaSpace::full(), 3);
    CHECK(r.verdict == Verdict::Inconclusive);
    CHECK_FALSE(r.upper.has_value());
    CHECK(r.budget == 3);
}

TEST_CASE("relative determinacy") {
    const auto d = mat(1, {{"x", "0"}, {"0", "x"}});
    const Ideal unit = Ideal::unit(1);
    const auto plain = report(d, {GroupKind::Gr, false}, SigmaSpace::full(), 8);
    const auto rel = relative_report(d, {GroupKind::Gr, false}, SigmaKind::Full, unit, unit, 8);
    CHECK(rel.lower == plain.lower);
    CHECK(rel.upper == plain.upper);

    const Ideal j(1, {parse_poly("x", support::names(1))});
    const auto shifted = relative_report(d, {GroupKind::Gr, false}, SigmaKind::Full, j, unit, 8);
    CHECK(shifted.lower == 0u);
    bool note = false;
    for (const auto &n : shifted.notes) note = note || n.rfind("J^1 ", 0) == 0;
    CHECK(note);

    const auto zero = relative_report(d, {GroupKind::Gr, false}, SigmaKind::Full, Ideal::zero(1), unit, 8);
    CHECK(zero.lower == 0u);
    CHECK(zero.upper == 0u);
}

TEST_CASE("genericity notes") {
    CHECK(genericity_note(2, 3, {GroupKind::Gr, false}, SigmaKind::Full, 2).rfind("generic", 0) == 0);
    CHECK(genericity_note(2, 2, {GroupKind::Glr, false}, SigmaKind::Full, 3).rfind("no finitely", 0) == 0);
    CHECK(genericity_note(2, 2, {GroupKind::Gr, false}, SigmaKind::Full, 0).find("field") != std::string::npos);
}

TEST_CASE("rank jumps") {
    CHECK(rank_jump_bound(example) == 4);
    CHECK(rank_jump_bound(PolyMatrix::identity(2, 2)) == 0);
}

TEST_CASE("bounds are ordered and group-monotone on random matrices") {
    support::Random rnd(707);
    for (int k = 0; k < 12; ++k) {
        const auto a = rnd.matrix(2, 2, 3, 2, 0.2, 1);
        const auto gr = report(a, {GroupKind::Gr, false}, SigmaSpace::full(), 8);
        const auto glr = report(a, {GroupKind::Glr, false}, SigmaSpace::full(), 8);
        for (const auto *r : {&gr, &glr})
            if (r->lower && r->upper) CHECK(*r->lower <= *r->upper);
        if (gr.upper && glr.upper) CHECK(*glr.upper <= *gr.upper);
    }
}

TEST_CASE("reports are deterministic") {
    const auto a = to_json(report(example, {GroupKind::Glr, false}, SigmaSpace::full(), 16), support::names(2)).dump();
    const auto b = to_json(report(example, {GroupKind::Glr, false}, SigmaSpace::full(), 16), support::names(2)).dump();
    CHECK(a == b);
}

}
