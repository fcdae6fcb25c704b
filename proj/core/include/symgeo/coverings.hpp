#pragma once

#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "symgeo/manifold.hpp"

namespace symgeo {

using Rational = boost::multiprecision::cpp_rational;

struct CoverParams {
    Int m = 0;      // degree
    Int d = 0;      // target divisibility
    Int a = 0;      // (d-1)/(m-1)
    Int n = 0;      // m*a, the multiple of K in the branch locus
    Int delta = 0;  // (d-1)(d+a)

    // Throws cover_divisibility unless (m-1) | (d-1).
    static CoverParams make(Int m, Int d);

    bool operator==(const CoverParams&) const = default;
};

struct BranchLocus {
    Int d_square = 0;
    Int k_dot_d = 0;
    // B with deg*B = D, over the base lattice; enables canonical tracking.
    std::optional<ClassVector> quotient_class;
    bool connected = true;
};

ManifoldDescriptor branched_cover(const ManifoldDescriptor& base, const BranchLocus& locus, Int deg);

bool pluri_system_defines_map(const ManifoldDescriptor& m, Int n);

ManifoldDescriptor pluricanonical_cover(const ManifoldDescriptor& base, const CoverParams& p);

std::pair<Int, Int> phi_map(const CoverParams& p, Int e, Int c);
std::pair<Rational, Rational> phi_inverse(const CoverParams& p, const Rational& e_bar, const Rational& c_bar);
bool phi_admissible_image(const CoverParams& p, Int e_bar, Int c_bar);

// Persson's sector in (e, c1^2): positive, e + c = 0 mod 12, c >= 36 - e,
// (e - 36)/5 <= c <= (e - 24)/2.
bool persson_sector(Int e, Int c);
bool persson_image_sector(const CoverParams& p, Int x, Int y);

// Realizes e = m x, c1^2 = m d^2 y by covering the Persson surface at
// (x - Delta y, y). Rejects the d = 3 exceptional point (129, 27).
ManifoldDescriptor persson_cover(const CoverParams& p, Int x, Int y);

ManifoldDescriptor singular_double_cover(Int n, Int m);

}  // namespace symgeo
