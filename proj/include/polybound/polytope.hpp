#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "polybound/rational.hpp"

namespace polybound {

/// H-representation of a rational polytope: constraints <A_i, x> <= b_i,
/// equivalently facet polynomials g_i(x) = b_i - <A_i, x> >= 0. Construction
/// validates that the feasible region is bounded and full-dimensional and
/// that no two rows coincide after scale normalization.
struct HRep {
    int dim = 0;
    std::vector<std::vector<Rational>> A;
    std::vector<Rational> b;

    size_t num_rows() const { return A.size(); }
};

HRep make_hrep(int dim, std::vector<std::vector<Rational>> A, std::vector<Rational> b);

/// Text format: optional '#' comment lines, then "<n> <d>", then n rows
/// "b_i a_i1 ... a_id" meaning <a_i, x> <= b_i.
HRep parse_hrep(std::istream& in);
HRep parse_hrep_file(const std::string& path);

struct Vertex {
    std::vector<Rational> point;
    std::vector<int> tight;  // indices of rows satisfied with equality
};

/// All vertices with their tight sets, ordered lexicographically by point.
std::vector<Vertex> enumerate_vertices(const HRep& p);

/// A simplicial cone of the vertex-cone decomposition: apex + d linearly
/// independent rays, each scaled to integer coordinates with gcd 1, plus the
/// exact parallelepiped volume |det(u_1,...,u_d)|.
struct SimplicialCone {
    std::vector<Rational> apex;
    std::vector<std::vector<Int>> rays;
    Int parallelepiped_volume;
};

/// Feasible cone at every vertex, triangulated into simplicial cones. At a
/// simple vertex this is one cone; otherwise the extreme rays are
/// triangulated deterministically from their lexicographic order.
std::vector<SimplicialCone> tangent_cones(const HRep& p);
std::vector<SimplicialCone> tangent_cones(const HRep& p, const std::vector<Vertex>& vertices);

struct CoordinateWidth {
    Rational width;      // max over coordinates of (max x_i - min x_i)
    Rational abs_bound;  // max over coordinates of max |x_i|
    std::vector<std::pair<Rational, Rational>> ranges;
};

/// Exact coordinate widths via 2d LP solves.
CoordinateWidth coordinate_width(const HRep& p);

/// All points of P intersected with the lattice (1/m) Z^d, boundary included,
/// in lexicographic order.
std::vector<std::vector<Rational>> lattice_points(const HRep& p, unsigned long m);

} // namespace polybound
