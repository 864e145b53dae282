#pragma once

// Truncated jet algebras k[x_1..x_p]/m^D and exact linear algebra on
// submodules of free jet modules.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "determina/poly.hpp"

namespace determina {

// An element of a free module R^r, one polynomial per component.
using ModuleVec = std::vector<Poly>;

class JetContext {
public:
    JetContext(std::size_t nvars, std::uint32_t truncation, std::vector<std::string> names = {});

    std::size_t nvars() const;
    std::uint32_t truncation() const;
    const std::vector<std::string> &names() const;

    // All monomials of degree < truncation, graded-lex.
    const std::vector<Monomial> &basis() const;
    std::size_t basis_size() const;
    std::optional<std::size_t> index_of(const Monomial &m) const;
    // Contiguous [begin, end) range of basis indices of degree d (d < truncation).
    std::pair<std::size_t, std::size_t> degree_range(std::uint32_t d) const;

    bool operator==(const JetContext &o) const {
        return nvars() == o.nvars() && truncation() == o.truncation();
    }

private:
    struct Data;
    std::shared_ptr<const Data> data_;
};

// All monomials of total degree exactly d in p variables, graded-lex.
std::vector<Monomial> monomials_of_degree(std::size_t nvars, std::uint32_t d);

std::size_t order_of(const ModuleVec &v); // minimal component order; SIZE_MAX for zero
std::uint32_t degree_of(const ModuleVec &v);
bool is_homogeneous(const ModuleVec &v);
ModuleVec truncate(const ModuleVec &v, std::uint32_t limit);
ModuleVec times_monomial(const ModuleVec &v, const Monomial &m, std::optional<std::uint32_t> limit = {});
ModuleVec scaled(const ModuleVec &v, const Poly &f, std::optional<std::uint32_t> limit = {});
ModuleVec unit_vector(std::size_t nvars, std::size_t rank, std::size_t i);

using SparseRow = std::vector<std::pair<std::uint32_t, Scalar>>;

// A k-subspace of the truncated free module (R/m^D)^r, kept in reduced row
// echelon form. Columns are (monomial index, component) pairs, monomial-major.
class SubspaceBasis {
public:
    SubspaceBasis(JetContext ctx, std::size_t rank);

    const JetContext &context() const { return ctx_; }
    std::size_t rank() const { return rank_; }
    std::size_t dimension() const { return rows_.size(); }
    std::size_t ambient_dimension() const { return cols_; }
    bool is_full() const { return rows_.size() == cols_; }

    // Adds v (truncated); returns true if the dimension grew.
    bool insert(const ModuleVec &v);
    bool contains(const ModuleVec &v) const;

    // Coordinates of v reduced against the basis; zero iff v is a member.
    std::vector<Scalar> normal_form(const ModuleVec &v) const;

    // Rows sorted by pivot column.
    std::vector<SparseRow> rows() const;
    ModuleVec row_element(std::size_t i) const;
    std::vector<std::uint32_t> pivots() const;

    std::vector<Scalar> coordinates(const ModuleVec &v) const;
    ModuleVec element(const std::vector<Scalar> &coords) const;

private:
    void reduce(std::vector<Scalar> &w) const;

    JetContext ctx_;
    std::size_t rank_;
    std::size_t cols_;
    std::vector<SparseRow> rows_;
    std::vector<std::int32_t> pivot_row_; // column -> row index or -1
};

// k-span of {u * v : u a monomial, v in vectors} inside (R/m^D)^r: the image
// of the R-submodule generated by `vectors`.
SubspaceBasis span(const std::vector<ModuleVec> &vectors, const JetContext &ctx, std::size_t rank);
void extend_span(SubspaceBasis &basis, const std::vector<ModuleVec> &vectors);

bool member(const ModuleVec &v, const SubspaceBasis &s);

// Basis of the kernel {c : sum_i c_i rows[i] = 0} for a list of dense vectors.
std::vector<std::vector<Scalar>> left_kernel(const std::vector<std::vector<Scalar>> &rows);

} // namespace determina
