#include "determina/jet.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

#include "determina/errors.hpp"

namespace determina {

struct JetContext::Data {
    std::size_t nvars;
    std::uint32_t truncation;
    std::vector<std::string> names;
    std::vector<Monomial> basis;
    std::vector<std::size_t> degree_start; // size truncation + 1
    std::unordered_map<std::uint64_t, std::size_t> index;

    std::uint64_t key(const Monomial &m) const {
        std::uint64_t k = 0;
        for (std::size_t i = 0; i < nvars; ++i) k = k * truncation + m[i];
        return k;
    }
};

std::size_t JetContext::nvars() const { return data_->nvars; }
std::uint32_t JetContext::truncation() const { return data_->truncation; }
const std::vector<std::string> &JetContext::names() const { return data_->names; }
const std::vector<Monomial> &JetContext::basis() const { return data_->basis; }
std::size_t JetContext::basis_size() const { return data_->basis.size(); }

static void append_degree(std::vector<Monomial> &out, std::vector<std::uint32_t> &exps, std::size_t i,
                          std::uint32_t remaining) {
    if (i + 1 == exps.size()) {
        exps[i] = remaining;
        out.emplace_back(exps);
        return;
    }
    for (std::uint32_t e = remaining + 1; e-- > 0;) {
        exps[i] = e;
        append_degree(out, exps, i + 1, remaining - e);
    }
    exps[i] = 0;
}

std::vector<Monomial> monomials_of_degree(std::size_t nvars, std::uint32_t d) {
    std::vector<Monomial> out;
    if (nvars == 0) {
        if (d == 0) out.emplace_back(0);
        return out;
    }
    std::vector<std::uint32_t> exps(nvars, 0);
    append_degree(out, exps, 0, d);
    return out;
}

JetContext::JetContext(std::size_t nvars, std::uint32_t truncation, std::vector<std::string> names) {
    if (nvars == 0) throw ShapeError("jet context needs at least one variable");
    auto d = std::make_shared<Data>();
    d->nvars = nvars;
    d->truncation = truncation;
    d->names = std::move(names);
    d->degree_start.push_back(0);
    for (std::uint32_t deg = 0; deg < truncation; ++deg) {
        auto ms = monomials_of_degree(nvars, deg);
        d->basis.insert(d->basis.end(), ms.begin(), ms.end());
        d->degree_start.push_back(d->basis.size());
    }
    d->index.reserve(d->basis.size());
    for (std::size_t i = 0; i < d->basis.size(); ++i) d->index.emplace(d->key(d->basis[i]), i);
    data_ = std::move(d);
}

std::optional<std::size_t> JetContext::index_of(const Monomial &m) const {
    if (m.degree() >= data_->truncation) return std::nullopt;
    auto it = data_->index.find(data_->key(m));
    if (it == data_->index.end()) return std::nullopt;
    return it->second;
}

std::pair<std::size_t, std::size_t> JetContext::degree_range(std::uint32_t d) const {
    return {data_->degree_start.at(d), data_->degree_start.at(d + 1)};
}

// ---------------------------------------------------------------------------

std::size_t order_of(const ModuleVec &v) {
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (const auto &p : v)
        if (auto o = p.order()) best = std::min<std::size_t>(best, *o);
    return best;
}

std::uint32_t degree_of(const ModuleVec &v) {
    std::uint32_t d = 0;
    for (const auto &p : v) d = std::max(d, p.degree());
    return d;
}

bool is_homogeneous(const ModuleVec &v) {
    std::optional<std::uint32_t> deg;
    for (const auto &p : v) {
        if (p.is_zero()) continue;
        if (!p.is_homogeneous()) return false;
        if (deg && *deg != p.degree()) return false;
        deg = p.degree();
    }
    return true;
}

ModuleVec truncate(const ModuleVec &v, std::uint32_t limit) {
    ModuleVec r;
    r.reserve(v.size());
    for (const auto &p : v) r.push_back(p.truncated(limit));
    return r;
}

ModuleVec times_monomial(const ModuleVec &v, const Monomial &m, std::optional<std::uint32_t> limit) {
    ModuleVec r;
    r.reserve(v.size());
    for (const auto &p : v) r.push_back(p.times_monomial(m, limit));
    return r;
}

ModuleVec scaled(const ModuleVec &v, const Poly &f, std::optional<std::uint32_t> limit) {
    ModuleVec r;
    r.reserve(v.size());
    for (const auto &p : v) r.push_back(p.mul_truncated(f, limit));
    return r;
}

ModuleVec unit_vector(std::size_t nvars, std::size_t rank, std::size_t i) {
    ModuleVec v(rank, Poly(nvars));
    v.at(i) = Poly::constant(nvars, 1);
    return v;
}

// ---------------------------------------------------------------------------

SubspaceBasis::SubspaceBasis(JetContext ctx, std::size_t rank)
    : ctx_(std::move(ctx)), rank_(rank), cols_(ctx_.basis_size() * rank),
      pivot_row_(cols_, -1) {}

std::vector<Scalar> SubspaceBasis::coordinates(const ModuleVec &v) const {
    if (v.size() != rank_) throw ShapeError("module element has the wrong number of components");
    std::vector<Scalar> w(cols_);
    for (std::size_t comp = 0; comp < rank_; ++comp) {
        if (v[comp].nvars() != ctx_.nvars() && !v[comp].is_zero())
            throw ShapeError("variable-count mismatch in module element");
        for (const auto &[m, c] : v[comp].terms()) {
            if (m.degree() >= ctx_.truncation()) break;
            w[*ctx_.index_of(m) * rank_ + comp] = c;
        }
    }
    return w;
}

ModuleVec SubspaceBasis::element(const std::vector<Scalar> &coords) const {
    ModuleVec v(rank_, Poly(ctx_.nvars()));
    for (std::size_t col = 0; col < coords.size(); ++col)
        if (coords[col] != 0) v[col % rank_].add_term(ctx_.basis()[col / rank_], coords[col]);
    return v;
}

void SubspaceBasis::reduce(std::vector<Scalar> &w) const {
    for (std::size_t c = 0; c < cols_; ++c) {
        if (w[c] == 0) continue;
        const auto r = pivot_row_[c];
        if (r < 0) continue;
        const Scalar f = w[c];
        for (const auto &[col, val] : rows_[static_cast<std::size_t>(r)]) w[col] -= f * val;
    }
}

bool SubspaceBasis::insert(const ModuleVec &v) {
    auto w = coordinates(v);
    reduce(w);
    auto first = std::find_if(w.begin(), w.end(), [](const Scalar &s) { return s != 0; });
    if (first == w.end()) return false;
    const auto pivot = static_cast<std::uint32_t>(first - w.begin());
    const Scalar inv = 1 / w[pivot];
    SparseRow row;
    for (std::size_t c = pivot; c < cols_; ++c)
        if (w[c] != 0) row.emplace_back(static_cast<std::uint32_t>(c), w[c] * inv);
    // Keep the echelon form reduced: clear the new pivot column elsewhere.
    for (auto &other : rows_) {
        auto it = std::lower_bound(other.begin(), other.end(), pivot,
                                   [](const auto &e, std::uint32_t c) { return e.first < c; });
        if (it == other.end() || it->first != pivot) continue;
        const Scalar f = it->second;
        SparseRow merged;
        merged.reserve(other.size() + row.size());
        auto a = other.begin();
        auto b = row.begin();
        while (a != other.end() || b != row.end()) {
            if (b == row.end() || (a != other.end() && a->first < b->first)) {
                merged.push_back(*a++);
            } else if (a == other.end() || b->first < a->first) {
                merged.emplace_back(b->first, -f * b->second);
                ++b;
            } else {
                Scalar val = a->second - f * b->second;
                if (val != 0) merged.emplace_back(a->first, std::move(val));
                ++a;
                ++b;
            }
        }
        other = std::move(merged);
    }
    pivot_row_[pivot] = static_cast<std::int32_t>(rows_.size());
    rows_.push_back(std::move(row));
    return true;
}

bool SubspaceBasis::contains(const ModuleVec &v) const {
    auto w = coordinates(v);
    reduce(w);
    return std::all_of(w.begin(), w.end(), [](const Scalar &s) { return s == 0; });
}

std::vector<Scalar> SubspaceBasis::normal_form(const ModuleVec &v) const {
    auto w = coordinates(v);
    reduce(w);
    return w;
}

std::vector<std::uint32_t> SubspaceBasis::pivots() const {
    std::vector<std::uint32_t> p;
    for (std::size_t c = 0; c < cols_; ++c)
        if (pivot_row_[c] >= 0) p.push_back(static_cast<std::uint32_t>(c));
    return p;
}

std::vector<SparseRow> SubspaceBasis::rows() const {
    std::vector<SparseRow> out;
    out.reserve(rows_.size());
    for (auto c : pivots()) out.push_back(rows_[static_cast<std::size_t>(pivot_row_[c])]);
    return out;
}

ModuleVec SubspaceBasis::row_element(std::size_t i) const {
    const auto sorted = rows();
    std::vector<Scalar> dense(cols_);
    for (const auto &[c, v] : sorted.at(i)) dense[c] = v;
    return element(dense);
}

// ---------------------------------------------------------------------------

void extend_span(SubspaceBasis &basis, const std::vector<ModuleVec> &vectors) {
    const auto &ctx = basis.context();
    const auto limit = ctx.truncation();
    for (const auto &v : vectors) {
        if (v.size() != basis.rank()) throw ShapeError("module element has the wrong number of components");
        const auto ord = order_of(v);
        if (ord >= limit) continue;
        for (const auto &u : ctx.basis()) {
            if (basis.is_full()) return;
            if (u.degree() + ord >= limit) break;
            basis.insert(times_monomial(v, u, limit));
        }
    }
}

SubspaceBasis span(const std::vector<ModuleVec> &vectors, const JetContext &ctx, std::size_t rank) {
    SubspaceBasis basis(ctx, rank);
    extend_span(basis, vectors);
    return basis;
}

bool member(const ModuleVec &v, const SubspaceBasis &s) { return s.contains(v); }

std::vector<std::vector<Scalar>> left_kernel(const std::vector<std::vector<Scalar>> &rows) {
    // Row-reduce [rows | I]; rows of the identity part whose left part
    // vanished span the kernel.
    const std::size_t n = rows.size();
    if (n == 0) return {};
    const std::size_t width = rows.front().size();
    std::vector<std::vector<Scalar>> aug(n, std::vector<Scalar>(width + n));
    for (std::size_t i = 0; i < n; ++i) {
        std::copy(rows[i].begin(), rows[i].end(), aug[i].begin());
        aug[i][width + i] = 1;
    }
    std::size_t lead = 0;
    for (std::size_t col = 0; col < width && lead < n; ++col) {
        std::size_t piv = lead;
        while (piv < n && aug[piv][col] == 0) ++piv;
        if (piv == n) continue;
        std::swap(aug[piv], aug[lead]);
        const Scalar inv = 1 / aug[lead][col];
        for (auto &x : aug[lead]) x *= inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == lead || aug[r][col] == 0) continue;
            const Scalar f = aug[r][col];
            for (std::size_t k = col; k < width + n; ++k) aug[r][k] -= f * aug[lead][k];
        }
        ++lead;
    }
    std::vector<std::vector<Scalar>> kernel;
    for (std::size_t r = lead; r < n; ++r) kernel.emplace_back(aug[r].begin() + static_cast<long>(width), aug[r].end());
    return kernel;
}

} // namespace determina
