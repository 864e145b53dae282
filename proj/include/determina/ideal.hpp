#pragma once

// Ideals of the local ring k[[x_1..x_p]], with exact fast paths for monomial
// ideals, and certified containment tests of powers of the maximal ideal.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "determina/jet.hpp"
#include "determina/poly.hpp"

namespace determina {

class Ideal {
public:
    Ideal() = default;
    // Drops zero generators. A generator with non-zero constant term makes the
    // ideal the unit ideal. All-monomial inputs are minimalized.
    Ideal(std::size_t nvars, std::vector<Poly> generators);

    static Ideal zero(std::size_t nvars) { return Ideal(nvars, {}); }
    static Ideal unit(std::size_t nvars);
    static Ideal from_monomials(std::size_t nvars, const std::vector<Monomial> &gens);

    std::size_t nvars() const { return nvars_; }
    const std::vector<Poly> &generators() const { return gens_; }
    bool is_monomial() const { return monomial_; }
    bool is_zero() const { return gens_.empty(); }
    bool is_unit() const;
    bool is_homogeneous() const;
    std::uint32_t max_generator_degree() const;

    // Requires is_monomial().
    std::vector<Monomial> monomial_generators() const;

    std::vector<std::string> to_strings(std::span<const std::string> names) const;

    // Generator-wise equality after normalization.
    bool operator==(const Ideal &o) const { return nvars_ == o.nvars_ && gens_ == o.gens_; }

private:
    std::size_t nvars_ = 0;
    std::vector<Poly> gens_;
    bool monomial_ = true;
};

// Result of a truncated test that is exact over the formal ring when
// `exact` is set. For "no", `witness` is an element of the tested module that
// fails membership at `truncation`.
struct CertifiedBool {
    bool value = false;
    std::uint32_t truncation = 0;
    bool exact = true;
    std::string certificate;
    std::optional<ModuleVec> witness;

    explicit operator bool() const { return value; }
};

// Decides M ⊆ L for R-submodules of R^rank given by generators.
//
// A "no" at any truncation D is exact. A "yes" is exact when either
//  * M = m^N R^rank (full_power) and D > N, since then
//    M ⊆ L + m^D R^rank ⊆ L + m M and Nakayama applies; or
//  * all generators are homogeneous and D exceeds the tested degrees; or
//  * m^D R^rank ⊆ L + m M has been verified at D + 1 (escalating D).
struct ContainmentQuery {
    std::size_t nvars = 0;
    std::size_t rank = 1;
    std::vector<ModuleVec> target; // generators of L
    std::vector<ModuleVec> tested; // generators of M (built when full_power is set)
    std::optional<std::uint32_t> full_power;
    std::uint32_t truncation = 1; // starting D
    std::uint32_t escalation = 12;
};

CertifiedBool certify_containment(const ContainmentQuery &query);

Ideal ideal_sum(const Ideal &a, const Ideal &b);
Ideal ideal_product(const Ideal &a, const Ideal &b);
Ideal ideal_power(const Ideal &a, std::uint32_t k);
Ideal maximal_power(std::size_t nvars, std::uint32_t k);
// Monomial ideals only.
Ideal ideal_intersection(const Ideal &a, const Ideal &b);

// Decides m^N ⊆ I.
CertifiedBool contains_power(const Ideal &ideal, std::uint32_t n);

struct LoewyLength {
    std::optional<std::uint32_t> value; // nullopt: exceeds budget
    std::uint32_t budget = 0;
    std::vector<CertifiedBool> certificates; // test at value (and value - 1)

    bool finite() const { return value.has_value(); }
};

LoewyLength loewy_length(const Ideal &ideal, std::uint32_t n_max);

Ideal colon_monomial(const Ideal &i, const Ideal &j);

// Decides m^N ⊆ I : J, i.e. m^N J ⊆ I.
CertifiedBool colon_contains_power(const Ideal &i, const Ideal &j, std::uint32_t n);

std::uint32_t monomial_height(const Ideal &ideal);
bool monomial_member(const Monomial &u, const Ideal &ideal);

// In one variable every ideal is (t^v); returns that monomial ideal.
Ideal univariate_normal_form(const Ideal &ideal);

// Shared by Loewy-style searches: smallest N <= n_max with test(N).value.
template <typename Test>
LoewyLength minimal_power(Test &&test, std::uint32_t n_max) {
    LoewyLength out;
    out.budget = n_max;
    std::optional<CertifiedBool> previous;
    for (std::uint32_t n = 0; n <= n_max; ++n) {
        CertifiedBool r = test(n);
        if (r.value) {
            if (previous) out.certificates.push_back(std::move(*previous));
            out.certificates.push_back(std::move(r));
            out.value = n;
            return out;
        }
        previous = std::move(r);
    }
    if (previous) out.certificates.push_back(std::move(*previous));
    return out;
}

} // namespace determina
