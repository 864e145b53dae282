#pragma once

// Canonical forms over the DVR k[[t]], computed modulo t^D. Inputs are
// PolyMatrix values in one variable.

#include <cstdint>
#include <optional>
#include <vector>

#include "determina/matrix.hpp"

namespace determina {

// Order in t; nullopt for zero.
std::optional<std::uint32_t> valuation(const Poly &f);

// U * A * V = diag mod t^D, diagonal entries t^{v_1}, t^{v_2}, ... with
// v_1 <= v_2 <= ...; entries past `valuations.size()` are zero.
struct SmithForm {
    PolyMatrix left;  // U
    PolyMatrix diag;
    PolyMatrix right; // V
    std::vector<std::uint32_t> valuations;
    std::uint32_t truncation = 0;
};

SmithForm smith_normal_form(const PolyMatrix &a, std::uint32_t truncation);

// U * A * U^T = diag(c_1 t^{v_1}, ...) (+) 0 mod t^D for symmetric A.
struct SymCanonicalForm {
    PolyMatrix transform; // U
    PolyMatrix form;
    std::vector<std::uint32_t> valuations;
    std::vector<Scalar> coefficients; // c_i
    std::uint32_t truncation = 0;
};

SymCanonicalForm sym_canonical_dvr(const PolyMatrix &a, std::uint32_t truncation);

// U * A * U^T = (t^{v_1} E) (+) (t^{v_2} E) (+) ... (+) 0 mod t^D for skew A,
// E = [[0,1],[-1,0]].
struct SkewCanonicalForm {
    PolyMatrix transform;
    PolyMatrix form;
    std::vector<std::uint32_t> pair_valuations;
    std::size_t zero_block = 0;
    std::uint32_t truncation = 0;
};

SkewCanonicalForm skew_canonical_dvr(const PolyMatrix &a, std::uint32_t truncation);

} // namespace determina
