#include "determina/closure.hpp"

#include <algorithm>
#include <numeric>

#include "determina/errors.hpp"

namespace determina {

bool Facet::satisfied_by(std::span<const std::uint32_t> a) const {
    Scalar s = 0;
    for (std::size_t i = 0; i < normal.size(); ++i) s += normal[i] * a[i];
    return s >= offset;
}

bool NewtonPolyhedron::contains(std::span<const std::uint32_t> a) const {
    return std::all_of(facets.begin(), facets.end(), [&](const Facet &f) { return f.satisfied_by(a); });
}

namespace {

// Solves the square system rows * w = rhs; nullopt if singular.
std::optional<std::vector<Scalar>> solve(std::vector<std::vector<Scalar>> a, std::vector<Scalar> b) {
    const std::size_t n = a.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            const Scalar f = a[r][col] / a[col][col];
            for (std::size_t k = col; k < n; ++k) a[r][k] -= f * a[col][k];
            b[r] -= f * b[col];
        }
    }
    for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
    return b;
}

std::size_t matrix_rank(std::vector<std::vector<Scalar>> a) {
    if (a.empty()) return 0;
    const std::size_t cols = a.front().size();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < a.size(); ++col) {
        std::size_t piv = rank;
        while (piv < a.size() && a[piv][col] == 0) ++piv;
        if (piv == a.size()) continue;
        std::swap(a[piv], a[rank]);
        for (std::size_t r = rank + 1; r < a.size(); ++r) {
            if (a[r][col] == 0) continue;
            const Scalar f = a[r][col] / a[rank][col];
            for (std::size_t k = col; k < cols; ++k) a[r][k] -= f * a[rank][k];
        }
        ++rank;
    }
    return rank;
}

// Scales a non-negative rational vector to a primitive integer vector.
std::vector<Scalar> primitive(const std::vector<Scalar> &w) {
    mpz_class den = 1;
    for (const auto &x : w) den = lcm(den, mpz_class(x.get_den()));
    std::vector<mpz_class> ints;
    mpz_class g = 0;
    for (const auto &x : w) {
        mpz_class v = mpz_class(x.get_num()) * (den / mpz_class(x.get_den()));
        g = gcd(g, v);
        ints.push_back(v);
    }
    std::vector<Scalar> out;
    for (const auto &v : ints) out.emplace_back(g == 0 ? v : mpz_class(v / g));
    return out;
}

template <typename F>
void for_each_subset(std::size_t n, std::size_t k, F &&f) {
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    if (k > n) return;
    for (;;) {
        f(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

} // namespace

NewtonPolyhedron newton_polyhedron(const Ideal &ideal) {
    if (!ideal.is_monomial()) throw StructureError("Newton polyhedron needs a monomial ideal");
    if (ideal.is_zero()) throw StructureError("Newton polyhedron of the zero ideal");
    const auto p = ideal.nvars();
    NewtonPolyhedron poly;
    poly.nvars = p;
    poly.sources = ideal.monomial_generators();

    for (std::size_t j = 0; j < p; ++j) {
        const bool touches = std::any_of(poly.sources.begin(), poly.sources.end(),
                                         [&](const Monomial &s) { return s[j] == 0; });
        if (!touches) continue;
        Facet f{std::vector<Scalar>(p, 0), 0};
        f.normal[j] = 1;
        poly.facets.push_back(std::move(f));
    }
    if (ideal.is_unit()) return poly;

    // The remaining facets are <w, a> >= 1 for the vertices w of the blocking
    // polyhedron {w >= 0 : <w, s> >= 1 for every source s}.
    std::vector<std::vector<Scalar>> rows;
    std::vector<Scalar> rhs;
    for (std::size_t j = 0; j < p; ++j) {
        std::vector<Scalar> r(p, 0);
        r[j] = 1;
        rows.push_back(std::move(r));
        rhs.emplace_back(0);
    }
    for (const auto &s : poly.sources) {
        std::vector<Scalar> r;
        for (std::size_t j = 0; j < p; ++j) r.emplace_back(s[j]);
        rows.push_back(std::move(r));
        rhs.emplace_back(1);
    }
    std::vector<Facet> found;
    for_each_subset(rows.size(), p, [&](const std::vector<std::size_t> &pick) {
        std::vector<std::vector<Scalar>> a;
        std::vector<Scalar> b;
        for (auto i : pick) {
            a.push_back(rows[i]);
            b.push_back(rhs[i]);
        }
        auto w = solve(std::move(a), std::move(b));
        if (!w) return;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            Scalar lhs = 0;
            for (std::size_t j = 0; j < p; ++j) lhs += rows[i][j] * (*w)[j];
            if (lhs < rhs[i]) return;
        }
        Facet f;
        f.normal = primitive(*w);
        f.offset = -1;
        for (const auto &s : poly.sources) {
            Scalar v = 0;
            for (std::size_t j = 0; j < p; ++j) v += f.normal[j] * s[j];
            if (f.offset < 0 || v < f.offset) f.offset = v;
        }
        if (std::find(found.begin(), found.end(), f) == found.end()) found.push_back(std::move(f));
    });
    std::sort(found.begin(), found.end(), [](const Facet &a, const Facet &b) {
        return std::lexicographical_compare(a.normal.begin(), a.normal.end(), b.normal.begin(), b.normal.end());
    });
    poly.facets.insert(poly.facets.end(), found.begin(), found.end());
    return poly;
}

std::vector<Monomial> NewtonPolyhedron::vertices() const {
    std::vector<Monomial> out;
    for (const auto &s : sources) {
        std::vector<std::vector<Scalar>> tight;
        for (std::size_t j = 0; j < nvars; ++j) {
            if (s[j] != 0) continue;
            std::vector<Scalar> e(nvars, 0);
            e[j] = 1;
            tight.push_back(std::move(e));
        }
        for (const auto &f : facets) {
            Scalar v = 0;
            for (std::size_t j = 0; j < nvars; ++j) v += f.normal[j] * s[j];
            if (v == f.offset) tight.push_back(f.normal);
        }
        if (matrix_rank(std::move(tight)) == nvars) out.push_back(s);
    }
    return out;
}

bool in_closure(const Monomial &u, const NewtonPolyhedron &poly) { return poly.contains(u.exponents()); }

bool in_closure(const Monomial &u, const Ideal &ideal) { return in_closure(u, newton_polyhedron(ideal)); }

Ideal integral_closure(const Ideal &ideal) {
    const auto poly = newton_polyhedron(ideal);
    const auto p = ideal.nvars();
    const auto bound = ideal.max_generator_degree();
    std::vector<Monomial> gens;
    for (std::uint32_t d = 0; d <= bound; ++d)
        for (const auto &m : monomials_of_degree(p, d))
            if (in_closure(m, poly)) gens.push_back(m);
    Ideal closure = Ideal::from_monomials(p, gens);
    // No minimal generator of the closure lies above the generator degree bound.
    for (const auto &m : monomials_of_degree(p, bound + 1))
        if (in_closure(m, poly) && !monomial_member(m, closure))
            throw InternalError("integral closure has a generator above the degree bound");
    return closure;
}

Ideal closure_colon(const Ideal &i, const Ideal &j) {
    if (i.is_zero()) throw StructureError("closure_colon needs a non-zero ideal");
    const Ideal cj = j.is_zero() ? j : integral_closure(j);
    return colon_monomial(integral_closure(i), cj);
}

} // namespace determina
