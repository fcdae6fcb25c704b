#pragma once

#include "symgeo/manifold.hpp"

namespace symgeo {

enum class Sign { plus, minus };

std::string_view to_string(Sign s) noexcept;
Sign parse_sign(std::string_view s);

struct SurfaceRef {
    ClassVector cls;
    Int genus = 1;
    Int self_intersection = 0;
    Sign symplectic_sign = Sign::plus;
    bool complement_simply_connected = true;
};

// Convenience: SurfaceRef from a class expression over m's lattice.
SurfaceRef surface(const ManifoldDescriptor& m, std::string_view expr, Int genus,
                   bool complement_simply_connected = true);

struct FibreSumOptions {
    // Caller assertion that the gluing creates no rim tori.
    bool no_rim_tori = true;
    // Otherwise 2g rim-torus blocks [[0,1],[1,b]] are added (torus, dual).
    Int rim_dual_square = -2;
    // g = 1, b = -2 only: declare the rim tori as a new Lagrangian triple.
    bool declare_rim_triple = false;
    // Prefix for the second summand's names; empty picks a fresh "sK." prefix.
    std::string right_prefix;
};

ManifoldDescriptor fibre_sum(const ManifoldDescriptor& m, const SurfaceRef& sm,
                             const ManifoldDescriptor& n, const SurfaceRef& sn,
                             const FibreSumOptions& options = {});

ManifoldDescriptor knot_surgery(const ManifoldDescriptor& x, const SurfaceRef& t, Int h, Sign sign);

ManifoldDescriptor generalized_knot_surgery(const ManifoldDescriptor& m, const SurfaceRef& s, Int h);

ManifoldDescriptor log_transform(const ManifoldDescriptor& x, Int p);

ManifoldDescriptor blow_up(const ManifoldDescriptor& m);
// Formal inverse of the most recent blow_up.
ManifoldDescriptor blow_down(const ManifoldDescriptor& m);

// triple_index is 1-based into m.triples.
ManifoldDescriptor lagrangian_triple_surgery(const ManifoldDescriptor& m, std::size_t triple_index, Int a,
                                             Int em, Int h1, Int h2, Sign sign);

ClassVector negate_structure(const ClassVector& k);

}  // namespace symgeo
