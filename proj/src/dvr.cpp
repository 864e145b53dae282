#include "determina/dvr.hpp"

#include <algorithm>

#include "determina/errors.hpp"

namespace determina {

std::optional<std::uint32_t> valuation(const Poly &f) { return f.order(); }

namespace {

void require_univariate(const PolyMatrix &a) {
    if (a.nvars() != 1) throw ShapeError("DVR canonical forms need exactly one variable");
}

// Working matrix with row and column operations, truncated at D.
class Worker {
public:
    Worker(PolyMatrix a, std::uint32_t d) : w(a.truncated(d)), d(d) {}

    PolyMatrix w;
    std::uint32_t d;

    // row_i += f * row_j
    void add_row(PolyMatrix &m, std::size_t i, std::size_t j, const Poly &f) const {
        if (f.is_zero()) return;
        for (std::size_t c = 0; c < m.cols(); ++c) m(i, c) += f.mul_truncated(m(j, c), d);
    }
    void add_col(PolyMatrix &m, std::size_t i, std::size_t j, const Poly &f) const {
        if (f.is_zero()) return;
        for (std::size_t r = 0; r < m.rows(); ++r) m(r, i) += f.mul_truncated(m(r, j), d);
    }
    void scale_row(PolyMatrix &m, std::size_t i, const Poly &f) const {
        for (std::size_t c = 0; c < m.cols(); ++c) m(i, c) = m(i, c).mul_truncated(f, d);
    }
    void scale_col(PolyMatrix &m, std::size_t i, const Poly &f) const {
        for (std::size_t r = 0; r < m.rows(); ++r) m(r, i) = m(r, i).mul_truncated(f, d);
    }
    static void swap_rows(PolyMatrix &m, std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(i, c), m(j, c));
    }
    static void swap_cols(PolyMatrix &m, std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t r = 0; r < m.rows(); ++r) std::swap(m(r, i), m(r, j));
    }

    // f / (t^v u) for v <= ord f, as a truncated series.
    Poly quotient(const Poly &f, std::uint32_t v, const Poly &unit_inv) const {
        const Monomial tv(std::vector<std::uint32_t>{v});
        return f.divided_by(tv).mul_truncated(unit_inv, d - v);
    }
};

// Unit part u of p = t^v u, inverted mod t^D.
Poly unit_part(const Poly &p, std::uint32_t v) { return p.divided_by(Monomial(std::vector<std::uint32_t>{v})); }

void check_zero_block(const PolyMatrix &a, std::size_t found, std::uint32_t d) {
    if (generic_rank(a) != found)
        throw TruncationError("remaining block vanishes mod t^" + std::to_string(d) + " but the matrix has higher rank",
                              d);
}

// (1 + h)^{-1/2} mod t^D for h in (t).
Poly inverse_sqrt(const Poly &one_plus_h, std::uint32_t d) {
    const Poly h = one_plus_h - Poly::constant(1, 1);
    Poly sum = Poly::constant(1, 1).truncated(d);
    Poly power = sum;
    Scalar coeff = 1;
    for (std::uint32_t k = 1; k < d; ++k) {
        // binom(-1/2, k) = binom(-1/2, k - 1) * (-1/2 - (k - 1)) / k
        coeff *= Scalar(-1, 2) - Scalar(k - 1);
        coeff /= k;
        power = power.mul_truncated(h, d);
        if (power.is_zero()) break;
        sum += power * coeff;
    }
    return sum;
}

} // namespace

SmithForm smith_normal_form(const PolyMatrix &a, std::uint32_t truncation) {
    require_univariate(a);
    Worker wk(a, truncation);
    const std::size_t m = a.rows(), n = a.cols();
    PolyMatrix u = PolyMatrix::identity(1, m);
    PolyMatrix v = PolyMatrix::identity(1, n);
    auto &w = wk.w;
    SmithForm out;
    out.truncation = truncation;
    for (std::size_t k = 0; k < std::min(m, n); ++k) {
        std::optional<std::uint32_t> best;
        std::size_t bi = 0, bj = 0;
        for (std::size_t i = k; i < m; ++i)
            for (std::size_t j = k; j < n; ++j) {
                const auto o = w(i, j).order();
                if (o && (!best || *o < *best)) {
                    best = o;
                    bi = i;
                    bj = j;
                }
            }
        if (!best) {
            check_zero_block(a, k, truncation);
            break;
        }
        const std::uint32_t val = *best;
        Worker::swap_rows(w, k, bi);
        Worker::swap_rows(u, k, bi);
        Worker::swap_cols(w, k, bj);
        Worker::swap_cols(v, k, bj);
        const Poly inv = unit_inverse(unit_part(w(k, k), val), truncation);
        wk.scale_row(w, k, inv);
        wk.scale_row(u, k, inv);
        // Pivot is now exactly t^val mod t^D.
        const Poly one = Poly::constant(1, 1);
        for (std::size_t i = k + 1; i < m; ++i) {
            if (w(i, k).is_zero()) continue;
            const Poly q = -wk.quotient(w(i, k), val, one);
            wk.add_row(w, i, k, q);
            wk.add_row(u, i, k, q);
        }
        for (std::size_t j = k + 1; j < n; ++j) {
            if (w(k, j).is_zero()) continue;
            const Poly q = -wk.quotient(w(k, j), val, one);
            wk.add_col(w, j, k, q);
            wk.add_col(v, j, k, q);
        }
        out.valuations.push_back(val);
    }
    out.left = std::move(u);
    out.diag = std::move(w);
    out.right = std::move(v);
    return out;
}

SymCanonicalForm sym_canonical_dvr(const PolyMatrix &a, std::uint32_t truncation) {
    require_univariate(a);
    if (!a.is_square()) throw StructureError("symmetric canonical form needs a square matrix");
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i + 1; j < a.cols(); ++j)
            if (!(a(i, j) == a(j, i)))
                throw StructureError("matrix is not symmetric at entry (" + std::to_string(j + 1) + "," +
                                     std::to_string(i + 1) + ")");
    const std::size_t m = a.rows();
    if (m > 0 && a.truncated(truncation).is_zero())
        throw TruncationError("matrix vanishes mod t^" + std::to_string(truncation), truncation);
    Worker wk(a, truncation);
    auto &w = wk.w;
    PolyMatrix u = PolyMatrix::identity(1, m);
    SymCanonicalForm out;
    out.truncation = truncation;
    auto congruent_add = [&](std::size_t i, std::size_t j, const Poly &f) {
        wk.add_row(w, i, j, f);
        wk.add_col(w, i, j, f);
        wk.add_row(u, i, j, f);
    };
    for (std::size_t k = 0; k < m; ++k) {
        std::optional<std::uint32_t> best;
        for (std::size_t i = k; i < m; ++i)
            for (std::size_t j = k; j < m; ++j) {
                const auto o = w(i, j).order();
                if (o && (!best || *o < *best)) best = o;
            }
        if (!best) {
            check_zero_block(a, k, truncation);
            break;
        }
        const std::uint32_t val = *best;
        std::optional<std::size_t> diag_pos;
        for (std::size_t i = k; i < m && !diag_pos; ++i)
            if (w(i, i).order() == best) diag_pos = i;
        if (!diag_pos) {
            // Only an off-diagonal entry reaches the minimal valuation: i <- i + j
            // makes the diagonal entry a_ii + 2 a_ij + a_jj of that valuation.
            for (std::size_t i = k; i < m && !diag_pos; ++i)
                for (std::size_t j = k; j < m && !diag_pos; ++j)
                    if (i != j && w(i, j).order() == best) {
                        congruent_add(i, j, Poly::constant(1, 1));
                        diag_pos = i;
                    }
        }
        Worker::swap_rows(w, k, *diag_pos);
        Worker::swap_cols(w, k, *diag_pos);
        Worker::swap_rows(u, k, *diag_pos);
        const Poly unit = unit_part(w(k, k), val);
        const Poly inv = unit_inverse(unit, truncation);
        for (std::size_t i = k + 1; i < m; ++i) {
            if (w(i, k).is_zero()) continue;
            congruent_add(i, k, -wk.quotient(w(i, k), val, inv));
        }
        const Scalar c = unit.constant_term();
        const Poly s = inverse_sqrt(unit * Scalar(1 / c), truncation);
        wk.scale_row(w, k, s);
        wk.scale_col(w, k, s);
        wk.scale_row(u, k, s);
        out.valuations.push_back(val);
        out.coefficients.push_back(c);
    }
    // The pivot order is non-decreasing by construction.
    out.transform = std::move(u);
    out.form = std::move(w);
    return out;
}

SkewCanonicalForm skew_canonical_dvr(const PolyMatrix &a, std::uint32_t truncation) {
    require_univariate(a);
    if (!a.is_square()) throw StructureError("skew canonical form needs a square matrix");
    for (std::size_t i = 0; i < a.rows(); ++i) {
        if (!a(i, i).is_zero())
            throw StructureError("skew matrix has a non-zero diagonal entry (" + std::to_string(i + 1) + "," +
                                 std::to_string(i + 1) + ")");
        for (std::size_t j = i + 1; j < a.cols(); ++j)
            if (!(a(i, j) == -a(j, i)))
                throw StructureError("matrix is not skew-symmetric at entry (" + std::to_string(j + 1) + "," +
                                     std::to_string(i + 1) + ")");
    }
    const std::size_t m = a.rows();
    Worker wk(a, truncation);
    auto &w = wk.w;
    PolyMatrix u = PolyMatrix::identity(1, m);
    SkewCanonicalForm out;
    out.truncation = truncation;
    auto congruent_add = [&](std::size_t i, std::size_t j, const Poly &f) {
        wk.add_row(w, i, j, f);
        wk.add_col(w, i, j, f);
        wk.add_row(u, i, j, f);
    };
    auto congruent_swap = [&](std::size_t i, std::size_t j) {
        Worker::swap_rows(w, i, j);
        Worker::swap_cols(w, i, j);
        Worker::swap_rows(u, i, j);
    };
    std::size_t k = 0;
    while (k + 1 < m) {
        std::optional<std::uint32_t> best;
        std::size_t bi = 0, bj = 0;
        for (std::size_t i = k; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j) {
                const auto o = w(i, j).order();
                if (o && (!best || *o < *best)) {
                    best = o;
                    bi = i;
                    bj = j;
                }
            }
        if (!best) break;
        const std::uint32_t val = *best;
        congruent_swap(k, bi);
        congruent_swap(k + 1, bj == k ? bi : bj);
        const Poly inv = unit_inverse(unit_part(w(k, k + 1), val), truncation);
        wk.scale_row(w, k, inv);
        wk.scale_col(w, k, inv);
        wk.scale_row(u, k, inv);
        // w(k, k+1) = t^val, w(k+1, k) = -t^val.
        const Poly one = Poly::constant(1, 1);
        for (std::size_t i = k + 2; i < m; ++i) {
            const Poly alpha = w(i, k), beta = w(i, k + 1);
            if (!beta.is_zero()) congruent_add(i, k, -wk.quotient(beta, val, one));
            if (!alpha.is_zero()) congruent_add(i, k + 1, wk.quotient(alpha, val, one));
        }
        out.pair_valuations.push_back(val);
        k += 2;
    }
    check_zero_block(a, 2 * out.pair_valuations.size(), truncation);
    out.zero_block = m - 2 * out.pair_valuations.size();
    out.transform = std::move(u);
    out.form = std::move(w);
    return out;
}

} // namespace determina
