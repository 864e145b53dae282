#pragma once

// Integral closure of monomial ideals through the Newton polyhedron
// conv(exponents + R^p_{>=0}).

#include <vector>

#include "determina/ideal.hpp"

namespace determina {

// <normal, a> >= offset. Normals are primitive non-negative integer vectors.
struct Facet {
    std::vector<Scalar> normal;
    Scalar offset;

    bool satisfied_by(std::span<const std::uint32_t> a) const;
    bool operator==(const Facet &) const = default;
};

struct NewtonPolyhedron {
    std::size_t nvars = 0;
    std::vector<Monomial> sources;
    std::vector<Facet> facets; // coordinate facets first, then sorted

    bool contains(std::span<const std::uint32_t> a) const;
    // Source exponents that are vertices of the polyhedron.
    std::vector<Monomial> vertices() const;
};

NewtonPolyhedron newton_polyhedron(const Ideal &ideal);
bool in_closure(const Monomial &u, const Ideal &ideal);
bool in_closure(const Monomial &u, const NewtonPolyhedron &poly);
Ideal integral_closure(const Ideal &ideal);
// colon_monomial(integral_closure(I), integral_closure(J)).
Ideal closure_colon(const Ideal &i, const Ideal &j);

} // namespace determina
