#pragma once

// Sparse multivariate polynomials over the rationals.
//
// Elements of k[[x_1..x_p]] are carried as polynomial truncations. Terms are
// kept in graded-lex order: lower total degree first, and within one degree
// the lexicographically larger exponent vector first (x^2, xy, y^2).

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace determina {

using Scalar = mpq_class;

class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
    explicit Monomial(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) {}

    static Monomial variable(std::size_t nvars, std::size_t i);

    std::size_t nvars() const { return exps_.size(); }
    std::uint32_t degree() const;
    std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
    std::span<const std::uint32_t> exponents() const { return exps_; }
    bool is_one() const { return degree() == 0; }

    bool divides(const Monomial &other) const;
    Monomial operator*(const Monomial &other) const;
    // Exponent-wise subtraction; requires divides(other) from the right.
    Monomial operator/(const Monomial &divisor) const;
    // Exponent-wise max(a_i - b_i, 0).
    Monomial saturating_quotient(const Monomial &divisor) const;
    Monomial lcm(const Monomial &other) const;
    Monomial pow(std::uint32_t k) const;

    bool operator==(const Monomial &) const = default;

private:
    std::vector<std::uint32_t> exps_;
};

// Graded lex: by degree, then lexicographically descending exponents.
struct GradedLex {
    bool operator()(const Monomial &a, const Monomial &b) const;
};

class Poly {
public:
    using Terms = std::map<Monomial, Scalar, GradedLex>;

    Poly() = default;
    explicit Poly(std::size_t nvars) : nvars_(nvars) {}

    static Poly constant(std::size_t nvars, const Scalar &c);
    static Poly term(const Monomial &m, const Scalar &c = 1);
    static Poly variable(std::size_t nvars, std::size_t i);

    std::size_t nvars() const { return nvars_; }
    const Terms &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    // Minimal total degree; nullopt for the zero polynomial (order +inf).
    std::optional<std::uint32_t> order() const;
    // Maximal total degree; 0 for the zero polynomial.
    std::uint32_t degree() const;
    Scalar constant_term() const;
    Scalar coefficient(const Monomial &m) const;
    bool is_unit() const { return constant_term() != 0; }
    bool is_term() const { return terms_.size() == 1; }
    bool is_homogeneous() const;

    void add_term(const Monomial &m, const Scalar &c);

    Poly &operator+=(const Poly &b);
    Poly &operator-=(const Poly &b);
    Poly operator-() const;
    friend Poly operator+(Poly a, const Poly &b) { return a += b; }
    friend Poly operator-(Poly a, const Poly &b) { return a -= b; }
    friend Poly operator*(const Poly &a, const Poly &b) { return a.mul_truncated(b, std::nullopt); }
    Poly &operator*=(const Scalar &c);
    friend Poly operator*(Poly a, const Scalar &c) { return a *= c; }
    bool operator==(const Poly &b) const { return nvars_ == b.nvars_ && terms_ == b.terms_; }

    // Product keeping only terms of total degree < limit (all terms if nullopt).
    Poly mul_truncated(const Poly &b, std::optional<std::uint32_t> limit) const;
    Poly times_monomial(const Monomial &m, std::optional<std::uint32_t> limit = std::nullopt) const;
    // Drops all terms of total degree >= limit.
    Poly truncated(std::uint32_t limit) const;
    // Keeps terms of total degree <= k.
    Poly jet(std::uint32_t k) const { return truncated(k + 1); }
    // Divides every term by m; throws if some term is not divisible.
    Poly divided_by(const Monomial &m) const;
    Poly pow(std::uint32_t k, std::optional<std::uint32_t> limit = std::nullopt) const;

    std::string to_string(std::span<const std::string> names) const;

private:
    std::size_t nvars_ = 0;
    Terms terms_;
};

// Inverse of a unit modulo m^limit via the truncated geometric series.
Poly unit_inverse(const Poly &u, std::uint32_t limit);

// Parses `expr := term (('+'|'-') term)*`, `term := [coeff] ('*'? var ('^' nat)?)*`.
Poly parse_poly(std::string_view text, std::span<const std::string> names);

std::string scalar_to_string(const Scalar &c);

} // namespace determina
