#include "determina/poly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "determina/errors.hpp"

namespace determina {

Monomial Monomial::variable(std::size_t nvars, std::size_t i) {
    Monomial m(nvars);
    m.exps_.at(i) = 1;
    return m;
}

std::uint32_t Monomial::degree() const {
    return std::accumulate(exps_.begin(), exps_.end(), std::uint32_t{0});
}

bool Monomial::divides(const Monomial &other) const {
    for (std::size_t i = 0; i < exps_.size(); ++i)
        if (exps_[i] > other.exps_[i]) return false;
    return true;
}

Monomial Monomial::operator*(const Monomial &other) const {
    Monomial r(*this);
    for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] += other.exps_[i];
    return r;
}

Monomial Monomial::operator/(const Monomial &divisor) const {
    if (!divisor.divides(*this)) throw InternalError("monomial quotient is not exact");
    Monomial r(*this);
    for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] -= divisor.exps_[i];
    return r;
}

Monomial Monomial::saturating_quotient(const Monomial &divisor) const {
    Monomial r(*this);
    for (std::size_t i = 0; i < exps_.size(); ++i)
        r.exps_[i] = exps_[i] > divisor.exps_[i] ? exps_[i] - divisor.exps_[i] : 0;
    return r;
}

Monomial Monomial::lcm(const Monomial &other) const {
    Monomial r(*this);
    for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] = std::max(exps_[i], other.exps_[i]);
    return r;
}

Monomial Monomial::pow(std::uint32_t k) const {
    Monomial r(*this);
    for (auto &e : r.exps_) e *= k;
    return r;
}

bool GradedLex::operator()(const Monomial &a, const Monomial &b) const {
    const auto da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    const auto ea = a.exponents(), eb = b.exponents();
    return std::lexicographical_compare(eb.begin(), eb.end(), ea.begin(), ea.end());
}

// ---------------------------------------------------------------------------

Poly Poly::constant(std::size_t nvars, const Scalar &c) {
    Poly p(nvars);
    p.add_term(Monomial(nvars), c);
    return p;
}

Poly Poly::term(const Monomial &m, const Scalar &c) {
    Poly p(m.nvars());
    p.add_term(m, c);
    return p;
}

Poly Poly::variable(std::size_t nvars, std::size_t i) { return term(Monomial::variable(nvars, i)); }

std::optional<std::uint32_t> Poly::order() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.begin()->first.degree();
}

std::uint32_t Poly::degree() const {
    if (terms_.empty()) return 0;
    return terms_.rbegin()->first.degree();
}

Scalar Poly::constant_term() const {
    if (!terms_.empty() && terms_.begin()->first.degree() == 0) return terms_.begin()->second;
    return 0;
}

Scalar Poly::coefficient(const Monomial &m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar(0) : it->second;
}

bool Poly::is_homogeneous() const { return terms_.empty() || *order() == degree(); }

void Poly::add_term(const Monomial &m, const Scalar &c) {
    if (m.nvars() != nvars_) throw ShapeError("variable-count mismatch in polynomial term");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

static void check_same_ring(const Poly &a, const Poly &b) {
    if (a.nvars() != b.nvars()) throw ShapeError("variable-count mismatch");
}

Poly &Poly::operator+=(const Poly &b) {
    check_same_ring(*this, b);
    for (const auto &[m, c] : b.terms_) add_term(m, c);
    return *this;
}

Poly &Poly::operator-=(const Poly &b) {
    check_same_ring(*this, b);
    for (const auto &[m, c] : b.terms_) add_term(m, -c);
    return *this;
}

Poly Poly::operator-() const {
    Poly r(*this);
    for (auto &[m, c] : r.terms_) c = -c;
    return r;
}

Poly &Poly::operator*=(const Scalar &c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto &[m, v] : terms_) v *= c;
    return *this;
}

Poly Poly::mul_truncated(const Poly &b, std::optional<std::uint32_t> limit) const {
    check_same_ring(*this, b);
    Poly r(nvars_);
    for (const auto &[ma, ca] : terms_) {
        const auto da = ma.degree();
        if (limit && da >= *limit) break;
        for (const auto &[mb, cb] : b.terms_) {
            if (limit && da + mb.degree() >= *limit) break;
            r.add_term(ma * mb, ca * cb);
        }
    }
    return r;
}

Poly Poly::times_monomial(const Monomial &m, std::optional<std::uint32_t> limit) const {
    if (m.nvars() != nvars_) throw ShapeError("variable-count mismatch");
    Poly r(nvars_);
    const auto dm = m.degree();
    for (const auto &[mt, c] : terms_) {
        if (limit && mt.degree() + dm >= *limit) break;
        r.terms_.emplace_hint(r.terms_.end(), mt * m, c);
    }
    return r;
}

Poly Poly::truncated(std::uint32_t limit) const {
    Poly r(nvars_);
    for (const auto &[m, c] : terms_) {
        if (m.degree() >= limit) break;
        r.terms_.emplace_hint(r.terms_.end(), m, c);
    }
    return r;
}

Poly Poly::divided_by(const Monomial &m) const {
    Poly r(nvars_);
    for (const auto &[mt, c] : terms_) {
        if (!m.divides(mt)) throw InternalError("polynomial is not divisible by the monomial");
        r.terms_.emplace(mt / m, c);
    }
    return r;
}

Poly Poly::pow(std::uint32_t k, std::optional<std::uint32_t> limit) const {
    Poly r = constant(nvars_, 1);
    if (limit) r = r.truncated(*limit);
    for (std::uint32_t i = 0; i < k; ++i) r = r.mul_truncated(*this, limit);
    return r;
}

std::string scalar_to_string(const Scalar &c) { return c.get_str(); }

std::string Poly::to_string(std::span<const std::string> names) const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    // Highest degree first reads more naturally.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto &[m, c] = *it;
        Scalar mag = abs(c);
        if (first) {
            if (c < 0) out += "-";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        first = false;
        bool wrote = false;
        if (mag != 1 || m.is_one()) {
            out += scalar_to_string(mag);
            wrote = true;
        }
        for (std::size_t i = 0; i < m.nvars(); ++i) {
            if (m[i] == 0) continue;
            if (wrote) out += "*";
            out += i < names.size() ? names[i] : "x" + std::to_string(i + 1);
            if (m[i] > 1) out += "^" + std::to_string(m[i]);
            wrote = true;
        }
    }
    return out;
}

Poly unit_inverse(const Poly &u, std::uint32_t limit) {
    const Scalar c = u.constant_term();
    if (c == 0) throw InternalError("unit_inverse of a non-unit");
    const std::size_t p = u.nvars();
    // u = c (1 - h), h in m; u^{-1} = c^{-1} sum_k h^k.
    Poly h = Poly::constant(p, 1) - u * Scalar(1 / c);
    Poly sum = Poly::constant(p, 1).truncated(limit);
    Poly power = sum;
    for (std::uint32_t k = 1; k < limit; ++k) {
        power = power.mul_truncated(h, limit);
        if (power.is_zero()) break;
        sum += power;
    }
    return sum * Scalar(1 / c);
}

// ---------------------------------------------------------------------------

namespace {

class PolyParser {
public:
    PolyParser(std::string_view text, std::span<const std::string> names)
        : text_(text), names_(names) {}

    Poly parse() {
        Poly result(names_.size());
        skip_ws();
        if (at_end()) throw ParseError("empty polynomial", pos_);
        bool negative = false;
        if (peek() == '+' || peek() == '-') {
            negative = peek() == '-';
            ++pos_;
        }
        for (;;) {
            Poly t = parse_term();
            if (negative) t = -t;
            result += t;
            skip_ws();
            if (at_end()) break;
            const char op = peek();
            if (op != '+' && op != '-') throw ParseError(std::string("unexpected '") + op + "'", pos_);
            negative = op == '-';
            ++pos_;
        }
        return result;
    }

private:
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }

    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }

    mpz_class parse_nat() {
        const auto start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (start == pos_) throw ParseError("expected a number", start);
        return mpz_class(std::string(text_.substr(start, pos_ - start)));
    }

    Poly parse_term() {
        skip_ws();
        if (at_end()) throw ParseError("expected a term", pos_);
        Scalar coeff = 1;
        bool have_factor = false;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            mpz_class num = parse_nat();
            skip_ws();
            mpz_class den = 1;
            if (!at_end() && peek() == '/') {
                ++pos_;
                skip_ws();
                const auto at = pos_;
                den = parse_nat();
                if (den == 0) throw ParseError("zero denominator", at);
            }
            coeff = Scalar(num, den);
            coeff.canonicalize();
            have_factor = true;
        }
        Monomial mono(names_.size());
        std::vector<std::uint32_t> exps(names_.size(), 0);
        for (;;) {
            skip_ws();
            if (at_end()) break;
            const auto save = pos_;
            if (peek() == '*') {
                if (!have_factor) throw ParseError("unexpected '*'", pos_);
                ++pos_;
                skip_ws();
                if (at_end() || !is_ident_start(peek())) throw ParseError("expected a variable", pos_);
            } else if (!is_ident_start(peek())) {
                pos_ = save;
                break;
            }
            const auto var_at = pos_;
            std::string name = parse_ident();
            auto it = std::find(names_.begin(), names_.end(), name);
            if (it == names_.end()) throw ParseError("unknown variable '" + name + "'", var_at);
            std::uint32_t e = 1;
            skip_ws();
            if (!at_end() && peek() == '^') {
                ++pos_;
                skip_ws();
                const auto at = pos_;
                mpz_class n = parse_nat();
                if (!n.fits_uint_p()) throw ParseError("exponent too large", at);
                e = static_cast<std::uint32_t>(n.get_ui());
            }
            exps[static_cast<std::size_t>(it - names_.begin())] += e;
            have_factor = true;
        }
        if (!have_factor) throw ParseError("expected a coefficient or variable", pos_);
        return Poly::term(Monomial(std::move(exps)), coeff);
    }

    static bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }

    std::string parse_ident() {
        const auto start = pos_;
        while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    std::string_view text_;
    std::span<const std::string> names_;
    std::size_t pos_ = 0;
};

} // namespace

Poly parse_poly(std::string_view text, std::span<const std::string> names) {
    return PolyParser(text, names).parse();
}

} // namespace determina
