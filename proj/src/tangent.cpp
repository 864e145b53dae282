#include "determina/tangent.hpp"

#include <algorithm>

#include "determina/closure.hpp"
#include "determina/errors.hpp"

namespace determina {

std::string to_string(GroupKind kind) {
    switch (kind) {
    case GroupKind::Gr: return "gr";
    case GroupKind::Gl: return "gl";
    case GroupKind::Glr: return "glr";
    case GroupKind::Gcongr: return "congr";
    case GroupKind::Gconj: return "conj";
    case GroupKind::GrUp: return "gr-up";
    case GroupKind::GlrUp: return "glr-up";
    }
    return "gr";
}

std::string to_string(SigmaKind kind) {
    switch (kind) {
    case SigmaKind::Full: return "full";
    case SigmaKind::Sym: return "sym";
    case SigmaKind::Skew: return "skew";
    case SigmaKind::Upper: return "upper";
    }
    return "full";
}

SigmaCoordinates::SigmaCoordinates(std::size_t rows, std::size_t cols, SigmaKind kind, const Structure &structure)
    : rows_(rows), cols_(cols), kind_(kind) {
    if ((kind == SigmaKind::Sym || kind == SigmaKind::Skew) && rows != cols)
        throw StructureError("sym/skew Sigma needs square matrices");
    if (kind == SigmaKind::Upper && structure.kind != StructureKind::UpperBlock)
        throw StructureError("upper Sigma needs a matrix tagged upper with block sizes");
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            bool keep = true;
            switch (kind) {
            case SigmaKind::Full: break;
            case SigmaKind::Sym: keep = i <= j; break;
            case SigmaKind::Skew: keep = i < j; break;
            case SigmaKind::Upper:
                keep = block_of(structure.row_blocks, i) <= block_of(structure.col_blocks, j);
                break;
            }
            if (keep) positions_.emplace_back(i, j);
        }
}

ModuleVec SigmaCoordinates::project(const PolyMatrix &m) const {
    if (m.rows() != rows_ || m.cols() != cols_) throw ShapeError("matrix shape does not match Sigma");
    auto outside = [](std::size_t i, std::size_t j) {
        return StructureError("tangent or input matrix leaves the " + std::string("Sigma space at entry (") +
                              std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
    };
    switch (kind_) {
    case SigmaKind::Full: break;
    case SigmaKind::Sym:
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i + 1; j < cols_; ++j)
                if (!(m(i, j) == m(j, i))) throw outside(j, i);
        break;
    case SigmaKind::Skew:
        for (std::size_t i = 0; i < rows_; ++i) {
            if (!m(i, i).is_zero()) throw outside(i, i);
            for (std::size_t j = i + 1; j < cols_; ++j)
                if (!(m(i, j) == -m(j, i))) throw outside(j, i);
        }
        break;
    case SigmaKind::Upper: {
        std::vector<bool> inside(rows_ * cols_, false);
        for (auto [i, j] : positions_) inside[i * cols_ + j] = true;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (!inside[i * cols_ + j] && !m(i, j).is_zero()) throw outside(i, j);
        break;
    }
    }
    ModuleVec v;
    v.reserve(positions_.size());
    for (auto [i, j] : positions_) v.push_back(m(i, j));
    return v;
}

PolyMatrix SigmaCoordinates::basis_matrix(std::size_t nvars, std::size_t k) const {
    const auto [i, j] = positions_.at(k);
    PolyMatrix e = PolyMatrix::elementary(nvars, rows_, cols_, i, j);
    if (kind_ == SigmaKind::Sym && i != j) e(j, i) = Poly::constant(nvars, 1);
    if (kind_ == SigmaKind::Skew) e(j, i) = Poly::constant(nvars, -1);
    return e;
}

// ---------------------------------------------------------------------------

namespace {

// A * e_ij: column j becomes column i of A.
PolyMatrix right_elementary(const PolyMatrix &a, std::size_t i, std::size_t j) {
    PolyMatrix r(a.nvars(), a.rows(), a.cols());
    for (std::size_t k = 0; k < a.rows(); ++k) r(k, j) = a(k, i);
    return r;
}

// e_ij * A: row i becomes row j of A.
PolyMatrix left_elementary(const PolyMatrix &a, std::size_t i, std::size_t j) {
    PolyMatrix r(a.nvars(), a.rows(), a.cols());
    for (std::size_t k = 0; k < a.cols(); ++k) r(i, k) = a(j, k);
    return r;
}

} // namespace

std::vector<PolyMatrix> tangent_generators(const PolyMatrix &a, const GroupAction &g) {
    const auto m = a.rows(), n = a.cols();
    std::vector<PolyMatrix> gens;
    const bool square_needed = g.kind == GroupKind::Gcongr || g.kind == GroupKind::Gconj;
    if (square_needed && !a.is_square()) throw StructureError(to_string(g.kind) + " needs a square matrix");
    const bool upper = g.kind == GroupKind::GrUp || g.kind == GroupKind::GlrUp;
    if (upper && a.structure().kind != StructureKind::UpperBlock)
        throw StructureError(to_string(g.kind) + " needs a matrix tagged upper");

    switch (g.kind) {
    case GroupKind::Gr:
    case GroupKind::Gl:
    case GroupKind::Glr:
        if (g.kind != GroupKind::Gl)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) gens.push_back(right_elementary(a, i, j));
        if (g.kind != GroupKind::Gr)
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < m; ++j) gens.push_back(left_elementary(a, i, j));
        break;
    case GroupKind::Gcongr:
        // e_ij A + A e_ij^T = e_ij A + A e_ji.
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) gens.push_back(left_elementary(a, i, j) + right_elementary(a, j, i));
        break;
    case GroupKind::Gconj:
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) gens.push_back(left_elementary(a, i, j) - right_elementary(a, i, j));
        break;
    case GroupKind::GrUp:
    case GroupKind::GlrUp: {
        const auto &rb = a.structure().row_blocks;
        const auto &cb = a.structure().col_blocks;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (block_of(cb, i) <= block_of(cb, j)) gens.push_back(right_elementary(a, i, j));
        if (g.kind == GroupKind::GlrUp)
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < m; ++j)
                    if (block_of(rb, i) <= block_of(rb, j)) gens.push_back(left_elementary(a, i, j));
        break;
    }
    }
    if (g.unipotent) {
        std::vector<PolyMatrix> shifted;
        for (const auto &t : gens)
            for (std::size_t v = 0; v < a.nvars(); ++v) shifted.push_back(t.scaled(Poly::variable(a.nvars(), v)));
        gens = std::move(shifted);
    }
    return gens;
}

std::vector<PolyMatrix> sigma_basis(std::size_t nvars, std::size_t rows, std::size_t cols, const SigmaSpace &s,
                                    const Structure &structure) {
    SigmaCoordinates coords(rows, cols, s.base, structure);
    std::vector<PolyMatrix> out;
    for (std::size_t k = 0; k < coords.rank(); ++k) {
        PolyMatrix e = coords.basis_matrix(nvars, k);
        if (!s.shift) {
            out.push_back(std::move(e));
            continue;
        }
        for (const auto &f : s.shift->generators()) out.push_back(e.scaled(f));
    }
    return out;
}

// ---------------------------------------------------------------------------

namespace {

struct T1Problem {
    std::size_t nvars = 0;
    std::size_t rank = 0;
    std::vector<ModuleVec> target; // projected tangent generators
    std::vector<ModuleVec> sigma;  // projected Sigma generators
    bool shifted = false;
    std::uint32_t degree_slack = 0;
};

T1Problem build_problem(const PolyMatrix &a, const GroupAction &g, const SigmaSpace &s, const Ideal *group_ideal) {
    SigmaCoordinates coords(a.rows(), a.cols(), s.base, a.structure());
    coords.project(a);
    T1Problem prob;
    prob.nvars = a.nvars();
    prob.rank = coords.rank();
    for (const auto &t : tangent_generators(a, g)) {
        if (group_ideal) {
            for (const auto &f : group_ideal->generators()) prob.target.push_back(coords.project(t.scaled(f)));
        } else {
            prob.target.push_back(coords.project(t));
        }
    }
    prob.degree_slack = a.max_degree();
    for (std::size_t k = 0; k < prob.rank; ++k) {
        const auto e = unit_vector(a.nvars(), prob.rank, k);
        if (!s.shift) {
            prob.sigma.push_back(e);
            continue;
        }
        if (s.shift->nvars() != a.nvars()) throw ShapeError("Sigma ideal has the wrong variable count");
        for (const auto &f : s.shift->generators()) prob.sigma.push_back(scaled(e, f));
    }
    if (s.shift) {
        prob.shifted = true;
        prob.degree_slack += s.shift->max_generator_degree();
    }
    return prob;
}

CertifiedBool run_t1(const T1Problem &prob, std::uint32_t n) {
    ContainmentQuery q;
    q.nvars = prob.nvars;
    q.rank = prob.rank;
    q.target = prob.target;
    if (prob.shifted) {
        for (const auto &m : monomials_of_degree(prob.nvars, n))
            for (const auto &s : prob.sigma) q.tested.push_back(times_monomial(s, m));
    } else {
        q.full_power = n;
    }
    q.truncation = n + 1 + prob.degree_slack;
    return certify_containment(q);
}

} // namespace

CertifiedBool t1_contains_power(const PolyMatrix &a, const GroupAction &g, const SigmaSpace &s, std::uint32_t n) {
    return run_t1(build_problem(a, g, s, nullptr), n);
}

CertifiedBool t1_contains_power(const PolyMatrix &a, const GroupAction &g, const SigmaSpace &s,
                                const Ideal &group_ideal, std::uint32_t n) {
    return run_t1(build_problem(a, g, s, &group_ideal), n);
}

SubspaceBasis t1_ann_jet(const PolyMatrix &a, const GroupAction &g, const SigmaSpace &s, const JetContext &ctx) {
    const auto prob = build_problem(a, g, s, nullptr);
    const auto target = span(prob.target, ctx, prob.rank);
    const auto limit = ctx.truncation();
    std::vector<std::vector<Scalar>> rows;
    for (const auto &u : ctx.basis()) {
        std::vector<Scalar> row;
        for (const auto &sig : prob.sigma) {
            auto nf = target.normal_form(times_monomial(sig, u, limit));
            row.insert(row.end(), std::make_move_iterator(nf.begin()), std::make_move_iterator(nf.end()));
        }
        rows.push_back(std::move(row));
    }
    SubspaceBasis ann(ctx, 1);
    if (rows.empty()) return ann;
    if (rows.front().empty()) {
        // No Sigma directions: everything annihilates.
        for (const auto &u : ctx.basis()) ann.insert({Poly::term(u)});
        return ann;
    }
    for (const auto &k : left_kernel(rows)) {
        Poly f(ctx.nvars());
        for (std::size_t b = 0; b < k.size(); ++b) f.add_term(ctx.basis()[b], k[b]);
        ann.insert({f});
    }
    return ann;
}

std::size_t t1_jet_dimension(const PolyMatrix &a, const GroupAction &g, const SigmaSpace &s, const JetContext &ctx) {
    if (s.shift) throw StructureError("truncated T^1 dimension is defined for unshifted Sigma only");
    const auto prob = build_problem(a, g, s, nullptr);
    const auto target = span(prob.target, ctx, prob.rank);
    return target.ambient_dimension() - target.dimension();
}

// ---------------------------------------------------------------------------

namespace {

std::vector<ModuleVec> columns(const PolyMatrix &a) {
    std::vector<ModuleVec> out;
    for (std::size_t j = 0; j < a.cols(); ++j) {
        ModuleVec c;
        for (std::size_t i = 0; i < a.rows(); ++i) c.push_back(a(i, j));
        out.push_back(std::move(c));
    }
    return out;
}

} // namespace

CertifiedBool ann_coker_contains_power(const PolyMatrix &a, std::uint32_t n, bool restricted) {
    ContainmentQuery q;
    q.nvars = a.nvars();
    q.rank = a.rows();
    for (const auto &c : columns(a)) {
        if (!restricted) {
            q.target.push_back(c);
            continue;
        }
        for (std::size_t v = 0; v < a.nvars(); ++v)
            q.target.push_back(times_monomial(c, Monomial::variable(a.nvars(), v)));
    }
    q.full_power = n;
    q.truncation = n + 1 + a.max_degree();
    return certify_containment(q);
}

CertifiedBool upper_ann_coker_contains_power(const PolyMatrix &a, std::uint32_t n) {
    const auto &st = a.structure();
    if (st.kind != StructureKind::UpperBlock) throw StructureError("block test needs an upper-block-triangular matrix");
    CertifiedBool all;
    all.value = true;
    all.certificate = "every leading block submatrix passes";
    std::vector<std::size_t> rows, cols;
    std::size_t r0 = 0, c0 = 0;
    for (std::size_t q = 0; q < st.col_blocks.size(); ++q) {
        if (q < st.row_blocks.size()) {
            for (std::size_t i = 0; i < st.row_blocks[q]; ++i) rows.push_back(r0 + i);
            r0 += st.row_blocks[q];
        }
        for (std::size_t j = 0; j < st.col_blocks[q]; ++j) cols.push_back(c0 + j);
        c0 += st.col_blocks[q];
        if (rows.empty()) continue;
        auto r = ann_coker_contains_power(a.submatrix(rows, cols), n, false);
        all.truncation = std::max(all.truncation, r.truncation);
        all.exact = all.exact && r.exact;
        if (!r.value) {
            r.certificate = "column block " + std::to_string(q + 1) + ": " + r.certificate;
            return r;
        }
    }
    return all;
}

CertifiedBool ann_coker_colon_contains_power(const PolyMatrix &a, const Ideal &j, std::uint32_t n) {
    ContainmentQuery q;
    q.nvars = a.nvars();
    q.rank = a.rows();
    q.target = columns(a);
    for (const auto &m : monomials_of_degree(a.nvars(), n))
        for (const auto &f : j.generators())
            for (std::size_t i = 0; i < a.rows(); ++i)
                q.tested.push_back(scaled(unit_vector(a.nvars(), a.rows(), i), f.times_monomial(m)));
    q.truncation = n + 1 + a.max_degree() + j.max_generator_degree();
    return certify_containment(q);
}

ChainBounds chain_bounds(const std::vector<PolyMatrix> &maps) {
    ChainBounds out;
    out.lower = [maps](std::uint32_t n) {
        CertifiedBool all;
        all.value = true;
        all.certificate = "all restricted ann.coker tests hold";
        for (std::size_t i = 0; i < maps.size(); ++i) {
            auto r = ann_coker_contains_power(maps[i], n, true);
            all.truncation = std::max(all.truncation, r.truncation);
            all.exact = all.exact && r.exact;
            if (!r.value) {
                r.certificate = "map " + std::to_string(i + 1) + ": " + r.certificate;
                return r;
            }
        }
        return all;
    };
    if (maps.empty()) {
        out.upper_note = "empty chain";
        return out;
    }
    std::optional<Ideal> upper;
    for (std::size_t i = 0; i < maps.size(); ++i) {
        const auto &phi = maps[i];
        const int m = static_cast<int>(phi.rows());
        const Ideal top = determinantal_ideal(phi, m);
        const Ideal below = determinantal_ideal(phi, m - 1);
        Ideal bound = Ideal::zero(phi.nvars());
        if (top.is_zero()) {
            out.upper_note = "map " + std::to_string(i + 1) + " has I_m = 0; the upper ideal is zero";
        } else if (!top.is_monomial() || !below.is_monomial()) {
            out.upper = std::nullopt;
            out.upper_note = "map " + std::to_string(i + 1) + " has non-monomial determinantal ideals";
            return out;
        } else {
            bound = closure_colon(top, below);
        }
        upper = upper ? ideal_intersection(*upper, bound) : bound;
    }
    out.upper = upper;
    return out;
}

} // namespace determina
