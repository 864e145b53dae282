#pragma once

// Determinacy reports: verdicts and certified bounds on the order of
// determinacy ord^Sigma_G(A).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "determina/ideal.hpp"
#include "determina/matrix.hpp"
#include "determina/tangent.hpp"

namespace determina {

enum class Verdict { NotFinitelyDetermined, Bounds, Inconclusive };

std::string to_string(Verdict v);

// One certified Loewy-style search or ideal computation backing a bound.
struct Certificate {
    std::string role;  // "lower", "upper", "support"
    std::string test;  // which test was searched
    std::optional<std::uint32_t> loewy; // minimal N found, nullopt past budget
    std::uint32_t budget = 0;
    std::uint32_t truncation = 0; // largest truncation used
    bool exact = true;
    std::optional<Ideal> ideal;
    std::string detail;
};

struct DeterminacyReport {
    PolyMatrix matrix;
    GroupAction group;
    SigmaSpace sigma;
    std::optional<Ideal> group_ideal; // relative reports only
    std::size_t nvars = 0;
    std::uint32_t budget = 0;

    Verdict verdict = Verdict::Inconclusive;
    std::string reason; // for NotFinitelyDetermined
    std::optional<std::uint32_t> lower;
    std::optional<std::uint32_t> upper;
    std::vector<Certificate> certificates;
    std::vector<std::string> notes;
};

constexpr std::uint32_t default_nmax = 16;

DeterminacyReport report(const PolyMatrix &a, const GroupAction &g, const SigmaSpace &s, std::uint32_t n_max);

// Deformations in Sigma^(J), group G^(I).
DeterminacyReport relative_report(const PolyMatrix &a, const GroupAction &g, SigmaKind base, const Ideal &j,
                                  const Ideal &group_ideal, std::uint32_t n_max);

std::string genericity_note(std::size_t m, std::size_t n, const GroupAction &g, SigmaKind s, std::size_t p);

// ord >= N + 1 whenever rank(jet_N A) < rank(A); returns the largest such N + 1.
std::uint32_t rank_jump_bound(const PolyMatrix &a);

} // namespace determina
