#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fsig/rational.hpp"

namespace fsig {

/// Arbitrary-precision rational for the polytope geometry; all geometry is
/// exact, no floating point anywhere.
using BigRat = boost::multiprecision::cpp_rational;

/// Facet-normal presentation of a full-dimensional strongly convex rational
/// cone; the dual semigroup ring is the toric ring under study. Rays are
/// primitivized at construction.
struct ToricCone {
    std::size_t dim = 0;
    std::vector<std::vector<std::int64_t>> rays;
};

/// Validates rank (full-dimensional) and pointedness (0 is not a convex
/// combination of the rays); throws std::invalid_argument otherwise.
ToricCone make_cone(std::vector<std::vector<std::int64_t>> rays);

/// Bounded intersection of halfspaces <a_i, u> <= b_i.
struct RationalPolytope {
    std::size_t dim = 0;
    std::vector<std::vector<std::int64_t>> normals;
    std::vector<BigRat> offsets;

    void add_halfspace(std::vector<std::int64_t> a, BigRat b);
};

/// Vertex enumeration by exhaustive facet-subset intersection in exact
/// rational arithmetic; deduplicated.
std::vector<std::vector<BigRat>> polytope_vertices(const RationalPolytope& P);

/// Exact Euclidean volume: vertices, then a boundary triangulation fanned
/// from a base vertex, then determinant simplex volumes. Unbounded input is
/// detected (recession ray search) and rejected; dim <= 4.
BigRat polytope_volume(const RationalPolytope& P);

/// F-signature of the toric ring: volume of the slab polytope
/// {u : 0 <= <u, v_i> <= 1 for every facet normal v_i}. Strictly positive
/// for every valid cone.
BigRat toric_fsignature_exact(const ToricCone& cone);
Rational toric_fsignature(const ToricCone& cone);

/// Cone of the n-th Veronese subalgebra: the lattice is rescaled to the
/// index-n sublattice where the grading functional (all-ones by default)
/// vanishes mod n, and the facet normals are rewritten in a basis of that
/// sublattice.
ToricCone veronese_cone(const ToricCone& cone, std::uint64_t n);
ToricCone veronese_cone(const ToricCone& cone, std::uint64_t n,
                        const std::vector<std::int64_t>& grading);

} // namespace fsig
