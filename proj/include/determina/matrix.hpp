#pragma once

// Matrices over k[[x_1..x_p]] with a structure tag, determinantal ideals,
// Pfaffians and unit-block splitting.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "determina/ideal.hpp"
#include "determina/poly.hpp"

namespace determina {

enum class StructureKind { General, Symmetric, SkewSymmetric, UpperBlock };

struct Structure {
    StructureKind kind = StructureKind::General;
    std::vector<std::size_t> row_blocks; // UpperBlock only
    std::vector<std::size_t> col_blocks;

    static Structure general() { return {}; }
    static Structure symmetric() { return {StructureKind::Symmetric, {}, {}}; }
    static Structure skew() { return {StructureKind::SkewSymmetric, {}, {}}; }
    static Structure upper(std::vector<std::size_t> rows, std::vector<std::size_t> cols) {
        return {StructureKind::UpperBlock, std::move(rows), std::move(cols)};
    }
    bool operator==(const Structure &) const = default;
};

std::string to_string(StructureKind kind);

class PolyMatrix {
public:
    PolyMatrix() = default;
    PolyMatrix(std::size_t nvars, std::size_t rows, std::size_t cols);
    // Validates the structure tag against the entries.
    PolyMatrix(std::size_t nvars, std::vector<std::vector<Poly>> entries, Structure structure = {});

    static PolyMatrix identity(std::size_t nvars, std::size_t n);
    static PolyMatrix elementary(std::size_t nvars, std::size_t rows, std::size_t cols, std::size_t i,
                                 std::size_t j);

    std::size_t nvars() const { return nvars_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    const Structure &structure() const { return structure_; }

    const Poly &operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
    Poly &operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }

    // Re-tags and validates; throws StructureError naming the offending entry.
    PolyMatrix &with_structure(Structure s);
    void validate() const;

    PolyMatrix transpose() const;
    PolyMatrix truncated(std::uint32_t limit) const;
    PolyMatrix jet(std::uint32_t k) const { return truncated(k + 1); }
    PolyMatrix mul_truncated(const PolyMatrix &b, std::optional<std::uint32_t> limit) const;
    PolyMatrix scaled(const Poly &f, std::optional<std::uint32_t> limit = std::nullopt) const;
    PolyMatrix submatrix(const std::vector<std::size_t> &rows, const std::vector<std::size_t> &cols) const;

    friend PolyMatrix operator*(const PolyMatrix &a, const PolyMatrix &b) { return a.mul_truncated(b, std::nullopt); }
    friend PolyMatrix operator+(const PolyMatrix &a, const PolyMatrix &b);
    friend PolyMatrix operator-(const PolyMatrix &a, const PolyMatrix &b);
    // Entry-wise equality; the structure tag is not compared.
    bool operator==(const PolyMatrix &b) const;

    bool is_zero() const;
    std::uint32_t max_degree() const;
    // Every entry lies in the maximal ideal.
    bool in_maximal_ideal() const;
    std::vector<Poly> entries() const { return entries_; }

private:
    std::size_t nvars_ = 0;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Poly> entries_;
    Structure structure_;
};

// Block index of position i for block sizes {b_k}.
std::size_t block_of(const std::vector<std::size_t> &blocks, std::size_t i);

Poly determinant(const PolyMatrix &a);
Poly minor(const PolyMatrix &a, const std::vector<std::size_t> &rows, const std::vector<std::size_t> &cols);
// j <= 0 gives (1), j > min(m, n) gives (0).
Ideal determinantal_ideal(const PolyMatrix &a, int j);
// Largest j with I_j(A) != 0 (rank over the fraction field).
std::size_t generic_rank(const PolyMatrix &a);

Poly pfaffian(const PolyMatrix &a);
Ideal pfaffian_sub_ideal(const PolyMatrix &a);
PolyMatrix pfaffian_adjugate(const PolyMatrix &a);

// U * A * V = 1_r (+) Atilde modulo m^D, Atilde with entries in m.
struct UnitSplit {
    std::size_t rank = 0;
    PolyMatrix reduced; // Atilde
    PolyMatrix left;    // U
    PolyMatrix right;   // V
    std::uint32_t truncation = 0;
};

UnitSplit split_unit_part(const PolyMatrix &a, std::uint32_t truncation);

// U * A * U^T = regular (+) Atilde modulo m^D. The regular part is a diagonal
// of units (symmetric) or unit multiples of E = [[0,1],[-1,0]] (skew).
struct CongruentSplit {
    std::size_t rank = 0;
    PolyMatrix regular;
    PolyMatrix reduced;
    PolyMatrix transform; // U
    std::uint32_t truncation = 0;
};

CongruentSplit congruent_split_unit(const PolyMatrix &a, std::uint32_t truncation);

// Direct sum of two matrices (block diagonal).
PolyMatrix direct_sum(const PolyMatrix &a, const PolyMatrix &b);

} // namespace determina
