#pragma once

// Tangent spaces to group orbits, Sigma deformation spaces, and certified
// tests m^N T_Sigma ⊆ T_{GA}. These turn the annihilator statements into
// finite linear algebra in jet modules.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "determina/ideal.hpp"
#include "determina/matrix.hpp"

namespace determina {

enum class GroupKind { Gr, Gl, Glr, Gcongr, Gconj, GrUp, GlrUp };

struct GroupAction {
    GroupKind kind = GroupKind::Gr;
    bool unipotent = false; // G^(m): tangent space m * T_{GA}
};

std::string to_string(GroupKind kind);

enum class SigmaKind { Full, Sym, Skew, Upper };

struct SigmaSpace {
    SigmaKind base = SigmaKind::Full;
    // Sigma^(J) = Sigma ∩ ({A} + Mat(J)), tangent space J * T_Sigma.
    std::optional<Ideal> shift;

    static SigmaSpace full() { return {}; }
    static SigmaSpace sym() { return {SigmaKind::Sym, std::nullopt}; }
    static SigmaSpace skew() { return {SigmaKind::Skew, std::nullopt}; }
    static SigmaSpace upper() { return {SigmaKind::Upper, std::nullopt}; }
    static SigmaSpace shifted(SigmaKind base, Ideal j) { return {base, std::move(j)}; }
};

std::string to_string(SigmaKind kind);

// Coordinates of the free module underlying a Sigma space: the matrix
// positions (i, j) that carry independent entries.
class SigmaCoordinates {
public:
    SigmaCoordinates(std::size_t rows, std::size_t cols, SigmaKind kind, const Structure &structure);

    std::size_t rank() const { return positions_.size(); }
    const std::vector<std::pair<std::size_t, std::size_t>> &positions() const { return positions_; }
    // Throws StructureError if the matrix is not in the Sigma module.
    ModuleVec project(const PolyMatrix &m) const;
    // Basis element for coordinate k (e_ij, e_ij + e_ji, e_ij - e_ji, ...).
    PolyMatrix basis_matrix(std::size_t nvars, std::size_t k) const;

private:
    std::size_t rows_, cols_;
    SigmaKind kind_;
    std::vector<std::pair<std::size_t, std::size_t>> positions_;
};

std::vector<PolyMatrix> tangent_generators(const PolyMatrix &a, const GroupAction &g);
std::vector<PolyMatrix> sigma_basis(std::size_t nvars, std::size_t rows, std::size_t cols, const SigmaSpace &s,
                                    const Structure &structure = {});

// Decides m^N T_Sigma ⊆ T_{GA} (equivalently m^N ⊆ ann T^1).
CertifiedBool t1_contains_power(const PolyMatrix &a, const GroupAction &g, const SigmaSpace &s, std::uint32_t n);

// Same with the tangent generators multiplied by the generators of `group_ideal`
// (the tangent space of G^(I)).
CertifiedBool t1_contains_power(const PolyMatrix &a, const GroupAction &g, const SigmaSpace &s,
                                const Ideal &group_ideal, std::uint32_t n);

// Truncated annihilator of T^1 at ctx.truncation(): {f : f T_Sigma ⊆ T_{GA} + m^D}.
// A cross-check oracle, not the exact annihilator.
SubspaceBasis t1_ann_jet(const PolyMatrix &a, const GroupAction &g, const SigmaSpace &s, const JetContext &ctx);

// dim_k of T_Sigma / (T_{GA} + m^D T_Sigma) for unshifted Sigma.
std::size_t t1_jet_dimension(const PolyMatrix &a, const GroupAction &g, const SigmaSpace &s, const JetContext &ctx);

// Decides m^N R^m ⊆ Im(A), or ⊆ A(m R^n) = m Im(A) when restricted.
CertifiedBool ann_coker_contains_power(const PolyMatrix &a, std::uint32_t n, bool restricted);

// For upper-block-triangular A: m^N ⊆ ann.coker(A_{<=q,<=q}) for every column
// block q, where A_{<=q,<=q} is the leading block submatrix. This is the
// annihilator of T^1 for G_r^up with upper Sigma; it can be strictly smaller
// than ann.coker(A).
CertifiedBool upper_ann_coker_contains_power(const PolyMatrix &a, std::uint32_t n);

// Decides m^N J R^m ⊆ Im(A): the G_r relative test, ann.coker(A) : J.
CertifiedBool ann_coker_colon_contains_power(const PolyMatrix &a, const Ideal &j, std::uint32_t n);

struct ChainBounds {
    // Certified conjunction over the maps of restricted ann.coker tests.
    std::function<CertifiedBool(std::uint32_t)> lower;
    // Intersection of closure colons when every ideal involved is monomial.
    std::optional<Ideal> upper;
    std::string upper_note;
};

ChainBounds chain_bounds(const std::vector<PolyMatrix> &maps);

} // namespace determina
