#include "determina/matrix.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>

#include "determina/errors.hpp"

namespace determina {

std::string to_string(StructureKind kind) {
    switch (kind) {
    case StructureKind::General: return "general";
    case StructureKind::Symmetric: return "sym";
    case StructureKind::SkewSymmetric: return "skew";
    case StructureKind::UpperBlock: return "upper";
    }
    return "general";
}

std::size_t block_of(const std::vector<std::size_t> &blocks, std::size_t i) {
    std::size_t acc = 0;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        acc += blocks[b];
        if (i < acc) return b;
    }
    throw ShapeError("index outside the block structure");
}

PolyMatrix::PolyMatrix(std::size_t nvars, std::size_t rows, std::size_t cols)
    : nvars_(nvars), rows_(rows), cols_(cols), entries_(rows * cols, Poly(nvars)) {}

PolyMatrix::PolyMatrix(std::size_t nvars, std::vector<std::vector<Poly>> entries, Structure structure)
    : nvars_(nvars), rows_(entries.size()), cols_(entries.empty() ? 0 : entries.front().size()) {
    entries_.reserve(rows_ * cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        if (entries[i].size() != cols_) throw ShapeError("ragged matrix: row " + std::to_string(i));
        for (auto &p : entries[i]) {
            if (p.nvars() != nvars) {
                if (!p.is_zero()) throw ShapeError("matrix entry has the wrong variable count");
                p = Poly(nvars);
            }
            entries_.push_back(std::move(p));
        }
    }
    with_structure(std::move(structure));
}

PolyMatrix PolyMatrix::identity(std::size_t nvars, std::size_t n) {
    PolyMatrix m(nvars, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Poly::constant(nvars, 1);
    return m;
}

PolyMatrix PolyMatrix::elementary(std::size_t nvars, std::size_t rows, std::size_t cols, std::size_t i,
                                  std::size_t j) {
    PolyMatrix m(nvars, rows, cols);
    m(i, j) = Poly::constant(nvars, 1);
    return m;
}

PolyMatrix &PolyMatrix::with_structure(Structure s) {
    structure_ = std::move(s);
    validate();
    return *this;
}

void PolyMatrix::validate() const {
    auto at = [](std::size_t i, std::size_t j) {
        return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
    };
    switch (structure_.kind) {
    case StructureKind::General: return;
    case StructureKind::Symmetric:
        if (!is_square()) throw StructureError("symmetric matrix must be square");
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i + 1; j < cols_; ++j)
                if (!((*this)(i, j) == (*this)(j, i)))
                    throw StructureError("matrix tagged sym is not symmetric at entry " + at(i, j));
        return;
    case StructureKind::SkewSymmetric:
        if (!is_square()) throw StructureError("skew-symmetric matrix must be square");
        for (std::size_t i = 0; i < rows_; ++i) {
            if (!(*this)(i, i).is_zero())
                throw StructureError("matrix tagged skew has a non-zero diagonal entry " + at(i, i));
            for (std::size_t j = i + 1; j < cols_; ++j)
                if (!((*this)(i, j) == -(*this)(j, i)))
                    throw StructureError("matrix tagged skew is not skew-symmetric at entry " + at(i, j));
        }
        return;
    case StructureKind::UpperBlock: {
        const auto &rb = structure_.row_blocks;
        const auto &cb = structure_.col_blocks;
        std::size_t sr = 0, sc = 0;
        for (auto b : rb) sr += b;
        for (auto b : cb) sc += b;
        if (sr != rows_ || sc != cols_) throw StructureError("block sizes do not sum to the matrix shape");
        if (rb.size() != cb.size()) throw StructureError("row and column block counts differ");
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (block_of(rb, i) > block_of(cb, j) && !(*this)(i, j).is_zero())
                    throw StructureError("matrix tagged upper has a non-zero entry below the blocks at " + at(i, j));
        return;
    }
    }
}

PolyMatrix PolyMatrix::transpose() const {
    PolyMatrix t(nvars_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    if (structure_.kind == StructureKind::Symmetric || structure_.kind == StructureKind::SkewSymmetric)
        t.structure_ = structure_;
    return t;
}

PolyMatrix PolyMatrix::truncated(std::uint32_t limit) const {
    PolyMatrix t(*this);
    for (auto &p : t.entries_) p = p.truncated(limit);
    return t;
}

PolyMatrix PolyMatrix::mul_truncated(const PolyMatrix &b, std::optional<std::uint32_t> limit) const {
    if (cols_ != b.rows_) throw ShapeError("matrix product shape mismatch");
    if (nvars_ != b.nvars_) throw ShapeError("variable-count mismatch");
    PolyMatrix r(nvars_, rows_, b.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const auto &a = (*this)(i, k);
            if (a.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) {
                const auto &c = b(k, j);
                if (!c.is_zero()) r(i, j) += a.mul_truncated(c, limit);
            }
        }
    return r;
}

PolyMatrix PolyMatrix::scaled(const Poly &f, std::optional<std::uint32_t> limit) const {
    PolyMatrix r(*this);
    for (auto &p : r.entries_) p = p.mul_truncated(f, limit);
    return r;
}

PolyMatrix PolyMatrix::submatrix(const std::vector<std::size_t> &rows, const std::vector<std::size_t> &cols) const {
    PolyMatrix r(nvars_, rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) r(i, j) = (*this)(rows[i], cols[j]);
    return r;
}

PolyMatrix operator+(const PolyMatrix &a, const PolyMatrix &b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ShapeError("matrix sum shape mismatch");
    PolyMatrix r(a);
    r.structure_ = {};
    for (std::size_t k = 0; k < r.entries_.size(); ++k) r.entries_[k] += b.entries_[k];
    return r;
}

PolyMatrix operator-(const PolyMatrix &a, const PolyMatrix &b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ShapeError("matrix difference shape mismatch");
    PolyMatrix r(a);
    r.structure_ = {};
    for (std::size_t k = 0; k < r.entries_.size(); ++k) r.entries_[k] -= b.entries_[k];
    return r;
}

bool PolyMatrix::operator==(const PolyMatrix &b) const {
    return rows_ == b.rows_ && cols_ == b.cols_ && entries_ == b.entries_;
}

bool PolyMatrix::is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const Poly &p) { return p.is_zero(); });
}

std::uint32_t PolyMatrix::max_degree() const {
    std::uint32_t d = 0;
    for (const auto &p : entries_) d = std::max(d, p.degree());
    return d;
}

bool PolyMatrix::in_maximal_ideal() const {
    return std::none_of(entries_.begin(), entries_.end(), [](const Poly &p) { return p.is_unit(); });
}

PolyMatrix direct_sum(const PolyMatrix &a, const PolyMatrix &b) {
    const auto p = a.nvars() ? a.nvars() : b.nvars();
    PolyMatrix r(p, a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) r(a.rows() + i, a.cols() + j) = b(i, j);
    return r;
}

// ---------------------------------------------------------------------------
// Minors by cofactor expansion along the first chosen row, memoized on
// (row set, column set) bitmasks.

namespace {

class MinorCache {
public:
    explicit MinorCache(const PolyMatrix &a) : a_(a) {
        if (a.rows() > 32 || a.cols() > 32) throw ShapeError("matrices larger than 32x32 are not supported");
    }

    const Poly &get(std::uint32_t rows, std::uint32_t cols) {
        const std::uint64_t key = (std::uint64_t{rows} << 32) | cols;
        if (auto it = cache_.find(key); it != cache_.end()) return it->second;
        Poly value(a_.nvars());
        if (rows == 0) {
            value = Poly::constant(a_.nvars(), 1);
        } else {
            const auto r = static_cast<std::size_t>(std::countr_zero(rows));
            const std::uint32_t rest = rows & (rows - 1);
            int sign = 1;
            for (std::uint32_t cs = cols; cs; cs &= cs - 1) {
                const auto c = static_cast<std::size_t>(std::countr_zero(cs));
                const auto &entry = a_(r, c);
                if (!entry.is_zero()) {
                    const Poly &sub = get(rest, cols & ~(std::uint32_t{1} << c));
                    if (!sub.is_zero()) {
                        if (sign > 0) value += entry * sub;
                        else value -= entry * sub;
                    }
                }
                sign = -sign;
            }
        }
        return cache_.emplace(key, std::move(value)).first->second;
    }

private:
    const PolyMatrix &a_;
    std::unordered_map<std::uint64_t, Poly> cache_;
};

std::uint32_t mask_of(const std::vector<std::size_t> &idx) {
    std::uint32_t m = 0;
    for (auto i : idx) m |= std::uint32_t{1} << i;
    return m;
}

template <typename F>
void for_each_mask(std::size_t n, std::size_t k, F &&f) {
    if (k > n) return;
    if (k == 0) {
        f(0u);
        return;
    }
    // Gosper's hack over n-bit masks with k bits.
    std::uint32_t m = (std::uint32_t{1} << k) - 1;
    const std::uint64_t limit = std::uint64_t{1} << n;
    while (m < limit) {
        f(m);
        const std::uint32_t c = m & -m;
        const std::uint32_t r = m + c;
        if (r == 0) break;
        m = (((r ^ m) >> 2) / c) | r;
    }
}

} // namespace

Poly minor(const PolyMatrix &a, const std::vector<std::size_t> &rows, const std::vector<std::size_t> &cols) {
    if (rows.size() != cols.size()) throw ShapeError("minor needs equally many rows and columns");
    std::vector<std::size_t> r(rows), c(cols);
    std::sort(r.begin(), r.end());
    std::sort(c.begin(), c.end());
    MinorCache cache(a);
    return cache.get(mask_of(r), mask_of(c));
}

Poly determinant(const PolyMatrix &a) {
    if (!a.is_square()) throw ShapeError("determinant of a non-square matrix");
    MinorCache cache(a);
    const std::uint32_t all = a.rows() == 32 ? ~0u : (std::uint32_t{1} << a.rows()) - 1;
    return cache.get(all, all);
}

Ideal determinantal_ideal(const PolyMatrix &a, int j) {
    const auto p = a.nvars();
    if (j <= 0) return Ideal::unit(p);
    const auto k = static_cast<std::size_t>(j);
    if (k > std::min(a.rows(), a.cols())) return Ideal::zero(p);
    MinorCache cache(a);
    std::vector<Poly> gens;
    for_each_mask(a.rows(), k, [&](std::uint32_t rm) {
        for_each_mask(a.cols(), k, [&](std::uint32_t cm) { gens.push_back(cache.get(rm, cm)); });
    });
    return Ideal(p, std::move(gens));
}

std::size_t generic_rank(const PolyMatrix &a) {
    MinorCache cache(a);
    for (std::size_t k = std::min(a.rows(), a.cols()); k > 0; --k) {
        bool nonzero = false;
        for_each_mask(a.rows(), k, [&](std::uint32_t rm) {
            if (nonzero) return;
            for_each_mask(a.cols(), k, [&](std::uint32_t cm) {
                if (!nonzero && !cache.get(rm, cm).is_zero()) nonzero = true;
            });
        });
        if (nonzero) return k;
    }
    return 0;
}

// ---------------------------------------------------------------------------

namespace {

void require_skew(const PolyMatrix &a) {
    if (a.structure().kind != StructureKind::SkewSymmetric)
        throw StructureError("Pfaffian needs a matrix tagged skew");
}

class PfaffianCache {
public:
    explicit PfaffianCache(const PolyMatrix &a) : a_(a) {
        if (a.rows() > 32) throw ShapeError("matrices larger than 32x32 are not supported");
    }

    // Pf(A restricted to the index set), expanded along its first index:
    // Pf = sum_k (-1)^(k+1) a_{i, j_k} Pf(set \ {i, j_k}), k the position of j_k.
    const Poly &get(std::uint32_t set) {
        if (auto it = cache_.find(set); it != cache_.end()) return it->second;
        Poly value(a_.nvars());
        if (set == 0) {
            value = Poly::constant(a_.nvars(), 1);
        } else if (std::popcount(set) % 2 == 0) {
            const auto i = static_cast<std::size_t>(std::countr_zero(set));
            const std::uint32_t rest = set & (set - 1);
            int sign = 1;
            for (std::uint32_t js = rest; js; js &= js - 1) {
                const auto j = static_cast<std::size_t>(std::countr_zero(js));
                const auto &entry = a_(i, j);
                if (!entry.is_zero()) {
                    const Poly &sub = get(rest & ~(std::uint32_t{1} << j));
                    if (!sub.is_zero()) {
                        if (sign > 0) value += entry * sub;
                        else value -= entry * sub;
                    }
                }
                sign = -sign;
            }
        }
        return cache_.emplace(set, std::move(value)).first->second;
    }

private:
    const PolyMatrix &a_;
    std::unordered_map<std::uint32_t, Poly> cache_;
};

std::uint32_t full_mask(std::size_t n) { return n == 32 ? ~0u : (std::uint32_t{1} << n) - 1; }

} // namespace

Poly pfaffian(const PolyMatrix &a) {
    require_skew(a);
    if (a.rows() % 2 != 0) throw StructureError("Pfaffian of an odd-size matrix");
    PfaffianCache cache(a);
    return cache.get(full_mask(a.rows()));
}

Ideal pfaffian_sub_ideal(const PolyMatrix &a) {
    require_skew(a);
    const auto m = a.rows();
    if (m % 2 == 0 || m < 3) throw StructureError("Pf_{m-1} needs an odd size m > 1");
    PfaffianCache cache(a);
    std::vector<Poly> gens;
    for (std::size_t i = 0; i < m; ++i) gens.push_back(cache.get(full_mask(m) & ~(std::uint32_t{1} << i)));
    return Ideal(a.nvars(), std::move(gens));
}

PolyMatrix pfaffian_adjugate(const PolyMatrix &a) {
    require_skew(a);
    const auto m = a.rows();
    if (m % 2 != 0) throw StructureError("Pfaffian adjugate of an odd-size matrix");
    PfaffianCache cache(a);
    const Poly pf = cache.get(full_mask(m));
    PolyMatrix b(a.nvars(), m, m);
    // Row-i expansion of Pf pairs a_{ij} with (-1)^(i+j+1+[i>j]) Pf(A_{^i^j})
    // (1-based); placing that cofactor at (j, i) gives A B = Pf 1.
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            if (i == j) continue;
            const std::uint32_t set = full_mask(m) & ~(std::uint32_t{1} << i) & ~(std::uint32_t{1} << j);
            const std::size_t exponent = (i + 1) + (j + 1) + 1 + (i > j ? 1 : 0);
            Poly c = cache.get(set);
            b(j, i) = exponent % 2 == 0 ? c : -c;
        }
    const PolyMatrix expected = PolyMatrix::identity(a.nvars(), m).scaled(pf);
    if (!(a * b == expected)) {
        const PolyMatrix flipped = PolyMatrix(a.nvars(), m, m) - b;
        if (!(a * flipped == expected)) throw InternalError("Pfaffian adjugate identity failed");
        b = flipped;
    }
    b.with_structure(Structure::skew());
    return b;
}

// ---------------------------------------------------------------------------

namespace {

void swap_rows(PolyMatrix &m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void swap_cols(PolyMatrix &m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

// row_target += f * row_source (truncated).
void add_row(PolyMatrix &m, std::size_t target, std::size_t source, const Poly &f, std::uint32_t limit) {
    for (std::size_t j = 0; j < m.cols(); ++j)
        if (!m(source, j).is_zero()) m(target, j) += m(source, j).mul_truncated(f, limit);
}

void add_col(PolyMatrix &m, std::size_t target, std::size_t source, const Poly &f, std::uint32_t limit) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        if (!m(i, source).is_zero()) m(i, target) += m(i, source).mul_truncated(f, limit);
}

void scale_row(PolyMatrix &m, std::size_t r, const Poly &f, std::uint32_t limit) {
    for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = m(r, j).mul_truncated(f, limit);
}

std::vector<std::size_t> range(std::size_t from, std::size_t to) {
    std::vector<std::size_t> v;
    for (std::size_t i = from; i < to; ++i) v.push_back(i);
    return v;
}

} // namespace

UnitSplit split_unit_part(const PolyMatrix &a, std::uint32_t truncation) {
    const auto p = a.nvars();
    PolyMatrix w = a.truncated(truncation);
    w.with_structure({});
    PolyMatrix u = PolyMatrix::identity(p, a.rows());
    PolyMatrix v = PolyMatrix::identity(p, a.cols());
    std::size_t r = 0;
    for (; r < std::min(a.rows(), a.cols()); ++r) {
        std::optional<std::pair<std::size_t, std::size_t>> pivot;
        for (std::size_t i = r; i < a.rows() && !pivot; ++i)
            for (std::size_t j = r; j < a.cols() && !pivot; ++j)
                if (w(i, j).is_unit()) pivot = {i, j};
        if (!pivot) break;
        swap_rows(w, r, pivot->first);
        swap_rows(u, r, pivot->first);
        swap_cols(w, r, pivot->second);
        swap_cols(v, r, pivot->second);
        const Poly inv = unit_inverse(w(r, r), truncation);
        scale_row(w, r, inv, truncation);
        scale_row(u, r, inv, truncation);
        for (std::size_t i = r + 1; i < a.rows(); ++i) {
            if (w(i, r).is_zero()) continue;
            const Poly f = -w(i, r);
            add_row(w, i, r, f, truncation);
            add_row(u, i, r, f, truncation);
        }
        for (std::size_t j = r + 1; j < a.cols(); ++j) {
            if (w(r, j).is_zero()) continue;
            const Poly f = -w(r, j);
            add_col(w, j, r, f, truncation);
            add_col(v, j, r, f, truncation);
        }
    }
    UnitSplit out;
    out.rank = r;
    out.reduced = w.submatrix(range(r, a.rows()), range(r, a.cols()));
    out.left = std::move(u);
    out.right = std::move(v);
    out.truncation = truncation;
    return out;
}

CongruentSplit congruent_split_unit(const PolyMatrix &a, std::uint32_t truncation) {
    const auto kind = a.structure().kind;
    if (kind != StructureKind::Symmetric && kind != StructureKind::SkewSymmetric)
        throw StructureError("congruent splitting needs a sym or skew matrix");
    const auto p = a.nvars();
    const auto m = a.rows();
    PolyMatrix w = a.truncated(truncation);
    PolyMatrix u = PolyMatrix::identity(p, m);
    auto congruent_swap = [&](std::size_t x, std::size_t y) {
        swap_rows(w, x, y);
        swap_cols(w, x, y);
        swap_rows(u, x, y);
    };
    // index_k += f * index_source on both sides.
    auto congruent_add = [&](std::size_t target, std::size_t source, const Poly &f) {
        add_row(w, target, source, f, truncation);
        add_col(w, target, source, f, truncation);
        add_row(u, target, source, f, truncation);
    };

    std::size_t r = 0;
    if (kind == StructureKind::Symmetric) {
        while (r < m) {
            std::optional<std::size_t> diag;
            for (std::size_t i = r; i < m && !diag; ++i)
                if (w(i, i).is_unit()) diag = i;
            if (!diag) {
                // a_ii + 2 a_ij + a_jj has unit constant term in char 0.
                for (std::size_t i = r; i < m && !diag; ++i)
                    for (std::size_t j = i + 1; j < m && !diag; ++j)
                        if (w(i, j).is_unit()) {
                            congruent_add(i, j, Poly::constant(p, 1));
                            diag = i;
                        }
            }
            if (!diag) break;
            congruent_swap(r, *diag);
            const Poly inv = unit_inverse(w(r, r), truncation);
            std::vector<Poly> factors;
            for (std::size_t k = r + 1; k < m; ++k) factors.push_back(-w(k, r).mul_truncated(inv, truncation));
            for (std::size_t k = r + 1; k < m; ++k) {
                const auto &f = factors[k - r - 1];
                if (f.is_zero()) continue;
                add_row(w, k, r, f, truncation);
                add_row(u, k, r, f, truncation);
            }
            for (std::size_t k = r + 1; k < m; ++k) {
                const auto &f = factors[k - r - 1];
                if (!f.is_zero()) add_col(w, k, r, f, truncation);
            }
            ++r;
        }
    } else {
        while (r + 1 < m) {
            std::optional<std::pair<std::size_t, std::size_t>> pivot;
            for (std::size_t i = r; i < m && !pivot; ++i)
                for (std::size_t j = i + 1; j < m && !pivot; ++j)
                    if (w(i, j).is_unit()) pivot = {i, j};
            if (!pivot) break;
            auto [i, j] = *pivot;
            congruent_swap(r, i);
            if (j == r) j = i;
            congruent_swap(r + 1, j);
            const Poly inv = unit_inverse(w(r, r + 1), truncation);
            // X_k = -L_k P^{-1} with P = [[0, a], [-a, 0]].
            std::vector<std::pair<Poly, Poly>> factors;
            for (std::size_t k = r + 2; k < m; ++k)
                factors.emplace_back(-w(k, r + 1).mul_truncated(inv, truncation),
                                     w(k, r).mul_truncated(inv, truncation));
            for (std::size_t k = r + 2; k < m; ++k) {
                const auto &[f0, f1] = factors[k - r - 2];
                add_row(w, k, r, f0, truncation);
                add_row(w, k, r + 1, f1, truncation);
                add_row(u, k, r, f0, truncation);
                add_row(u, k, r + 1, f1, truncation);
            }
            for (std::size_t k = r + 2; k < m; ++k) {
                const auto &[f0, f1] = factors[k - r - 2];
                add_col(w, k, r, f0, truncation);
                add_col(w, k, r + 1, f1, truncation);
            }
            r += 2;
        }
    }
    CongruentSplit out;
    out.rank = r;
    out.regular = w.submatrix(range(0, r), range(0, r));
    out.reduced = w.submatrix(range(r, m), range(r, m));
    out.reduced.with_structure(a.structure());
    out.transform = std::move(u);
    out.truncation = truncation;
    return out;
}

} // namespace determina
