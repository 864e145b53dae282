#pragma once

// Shared test helpers: seeded random inputs and brute-force oracles that do
// not go through the library's own algorithms.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "determina/ideal.hpp"
#include "determina/matrix.hpp"
#include "determina/poly.hpp"

namespace support {

using namespace determina;

inline const std::vector<std::string> &names(std::size_t p) {
    static const std::vector<std::vector<std::string>> table = {
        {}, {"x"}, {"x", "y"}, {"x", "y", "z"}, {"x", "y", "z", "w"}};
    return table.at(p);
}

inline const std::vector<std::string> &t_names() {
    static const std::vector<std::string> t = {"t"};
    return t;
}

class Random {
public:
    explicit Random(std::uint32_t seed) : rng_(seed) {}

    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

    Monomial monomial(std::size_t p, std::uint32_t min_deg, std::uint32_t max_deg) {
        const auto d = static_cast<std::uint32_t>(uniform(static_cast<int>(min_deg), static_cast<int>(max_deg)));
        std::vector<std::uint32_t> e(p, 0);
        for (std::uint32_t k = 0; k < d; ++k) ++e[static_cast<std::size_t>(uniform(0, static_cast<int>(p) - 1))];
        return Monomial(e);
    }

    // Sparse polynomial with small integer coefficients, degrees in [min_deg, max_deg].
    Poly poly(std::size_t p, std::uint32_t min_deg, std::uint32_t max_deg, int terms = 2) {
        Poly f(p);
        for (int k = 0; k < terms; ++k) {
            int c = uniform(-3, 3);
            if (c == 0) c = 1;
            f.add_term(monomial(p, min_deg, max_deg), c);
        }
        return f;
    }

    // Entries zero with probability `zero`, otherwise random of degree <= max_deg.
    PolyMatrix matrix(std::size_t p, std::size_t m, std::size_t n, std::uint32_t max_deg, double zero = 0.3,
                      std::uint32_t min_deg = 0) {
        PolyMatrix a(p, m, n);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (!coin(zero)) a(i, j) = poly(p, min_deg, max_deg, uniform(1, 2));
        return a;
    }

    PolyMatrix symmetric(std::size_t p, std::size_t m, std::uint32_t max_deg, std::uint32_t min_deg = 0) {
        PolyMatrix a(p, m, m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i; j < m; ++j) {
                if (coin(0.25)) continue;
                a(i, j) = poly(p, min_deg, max_deg, uniform(1, 2));
                a(j, i) = a(i, j);
            }
        return a.with_structure(Structure::symmetric());
    }

    PolyMatrix skew(std::size_t p, std::size_t m, std::uint32_t max_deg, std::uint32_t min_deg = 0) {
        PolyMatrix a(p, m, m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j) {
                if (coin(0.25)) continue;
                a(i, j) = poly(p, min_deg, max_deg, uniform(1, 2));
                a(j, i) = -a(i, j);
            }
        return a.with_structure(Structure::skew());
    }

    // Invertible over k[[x]]: a unimodular integer matrix plus entries in m.
    PolyMatrix unit_matrix(std::size_t p, std::size_t m, std::uint32_t max_deg) {
        PolyMatrix u = PolyMatrix::identity(p, m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j) u(i, j) += Poly::constant(p, uniform(-2, 2));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                if (coin(0.5)) u(i, j) += poly(p, 1, max_deg, 1);
        return u;
    }

    Ideal monomial_ideal(std::size_t p, int gens, std::uint32_t min_deg, std::uint32_t max_deg) {
        std::vector<Monomial> g;
        for (int k = 0; k < gens; ++k) g.push_back(monomial(p, min_deg, max_deg));
        return Ideal::from_monomials(p, g);
    }

    // Univariate series t^v * (unit) with v <= max_val, or zero.
    Poly t_entry(std::uint32_t max_val, double zero = 0.15) {
        if (coin(zero)) return Poly(1);
        const auto v = static_cast<std::uint32_t>(uniform(0, static_cast<int>(max_val)));
        Poly f(1);
        f.add_term(Monomial(std::vector<std::uint32_t>{v}), uniform(1, 3) * (coin() ? 1 : -1));
        for (int k = 0; k < 2; ++k)
            if (coin()) f.add_term(Monomial(std::vector<std::uint32_t>{v + 1 + static_cast<std::uint32_t>(uniform(0, 2))}),
                                   uniform(-2, 2));
        return f;
    }

    std::mt19937 &engine() { return rng_; }

private:
    std::mt19937 rng_;
};

// ---------------------------------------------------------------------------
// Oracles.

using Exps = std::vector<std::uint32_t>;
using Dense = std::map<Exps, Scalar>;

inline Dense expand(const Poly &f) {
    Dense d;
    for (const auto &[m, c] : f.terms()) d[Exps(m.exponents().begin(), m.exponents().end())] = c;
    return d;
}

// Schoolbook product of term lists.
inline Dense naive_product(const Poly &a, const Poly &b) {
    Dense out;
    for (const auto &[ma, ca] : a.terms())
        for (const auto &[mb, cb] : b.terms()) {
            Exps e(ma.nvars());
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ma[i] + mb[i];
            out[e] += ca * cb;
        }
    for (auto it = out.begin(); it != out.end();)
        it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

inline bool divides(const Exps &a, const Exps &b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

inline std::vector<Exps> exps_of(const Ideal &i) {
    std::vector<Exps> out;
    for (const auto &m : i.monomial_generators()) out.emplace_back(m.exponents().begin(), m.exponents().end());
    return out;
}

inline bool in_monomial(const Exps &u, const std::vector<Exps> &gens) {
    return std::any_of(gens.begin(), gens.end(), [&](const Exps &g) { return divides(g, u); });
}

inline void all_of_degree(std::size_t p, std::uint32_t d, Exps &cur, std::size_t i, std::vector<Exps> &out) {
    if (i + 1 == p) {
        cur[i] = d;
        out.push_back(cur);
        return;
    }
    for (std::uint32_t e = 0; e <= d; ++e) {
        cur[i] = e;
        all_of_degree(p, d - e, cur, i + 1, out);
    }
}

inline std::vector<Exps> degree_exps(std::size_t p, std::uint32_t d) {
    std::vector<Exps> out;
    Exps cur(p, 0);
    all_of_degree(p, d, cur, 0, out);
    return out;
}

// Smallest N <= n_max with every degree-N monomial divisible by a generator.
inline std::optional<std::uint32_t> enumerate_loewy(const Ideal &i, std::uint32_t n_max) {
    const auto gens = exps_of(i);
    for (std::uint32_t n = 0; n <= n_max; ++n) {
        const auto all = degree_exps(i.nvars(), n);
        if (std::all_of(all.begin(), all.end(), [&](const Exps &u) { return in_monomial(u, gens); })) return n;
    }
    return std::nullopt;
}

// u^k in I^k for some k <= k_max, by enumerating products of generators.
inline bool power_oracle(const Exps &u, const Ideal &ideal, std::uint32_t k_max) {
    const auto gens = exps_of(ideal);
    std::vector<Exps> power = {Exps(u.size(), 0)};
    for (std::uint32_t k = 1; k <= k_max; ++k) {
        std::vector<Exps> next;
        for (const auto &a : power)
            for (const auto &g : gens) {
                Exps e(a.size());
                for (std::size_t i = 0; i < e.size(); ++i) e[i] = a[i] + g[i];
                next.push_back(e);
            }
        // Keep minimal elements only.
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        std::vector<Exps> minimal;
        for (const auto &a : next)
            if (std::none_of(next.begin(), next.end(), [&](const Exps &b) { return b != a && divides(b, a); }))
                minimal.push_back(a);
        power = std::move(minimal);
        Exps uk(u.size());
        for (std::size_t i = 0; i < u.size(); ++i) uk[i] = u[i] * k;
        if (in_monomial(uk, power)) return true;
    }
    return false;
}

// Leibniz determinant over all permutations.
inline Poly leibniz_det(const PolyMatrix &a) {
    const std::size_t m = a.rows();
    std::vector<std::size_t> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    Poly det(a.nvars());
    do {
        int sign = 1;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j)
                if (perm[i] > perm[j]) sign = -sign;
        Poly term = Poly::constant(a.nvars(), sign);
        for (std::size_t i = 0; i < m && !term.is_zero(); ++i) term = term * a(i, perm[i]);
        det += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

// Smallest order among the j x j minors; nullopt when all vanish.
inline std::optional<std::uint32_t> min_minor_order(const PolyMatrix &a, std::size_t j) {
    std::optional<std::uint32_t> best;
    std::vector<bool> rsel(a.rows(), false), csel(a.cols(), false);
    std::fill(rsel.begin(), rsel.begin() + static_cast<long>(j), true);
    do {
        std::fill(csel.begin(), csel.end(), false);
        std::fill(csel.begin(), csel.begin() + static_cast<long>(j), true);
        do {
            std::vector<std::size_t> rows, cols;
            for (std::size_t i = 0; i < a.rows(); ++i)
                if (rsel[i]) rows.push_back(i);
            for (std::size_t i = 0; i < a.cols(); ++i)
                if (csel[i]) cols.push_back(i);
            const auto o = leibniz_det(a.submatrix(rows, cols)).order();
            if (o && (!best || *o < *best)) best = o;
        } while (std::prev_permutation(csel.begin(), csel.end()));
    } while (std::prev_permutation(rsel.begin(), rsel.end()));
    return best;
}

inline bool equal_mod(const PolyMatrix &a, const PolyMatrix &b, std::uint32_t d) {
    return a.truncated(d) == b.truncated(d);
}

} // namespace support
