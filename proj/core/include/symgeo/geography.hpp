#pragma once

#include <set>

#include "symgeo/surgery.hpp"

namespace symgeo {

struct DivisibilityCertificate {
    Int lower = 0;  // coefficient gcd of K
    Int upper = 0;  // gcd of |K.w| over witnesses, odd part if non-spin
    bool certified = false;
    std::string parity_note;

    // The divisibility when certified.
    Int value() const { return lower; }
    bool operator==(const DivisibilityCertificate&) const = default;
};

DivisibilityCertificate divisibility(const ManifoldDescriptor& m);

struct ValidationCheck {
    std::string name;
    bool passed = true;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;

    bool ok() const;
    const ValidationCheck* find(std::string_view name) const;
};

ValidationReport validate(const ManifoldDescriptor& m);

// --- constructors, one per existence theorem --------------------------------

ManifoldDescriptor homotopy_elliptic(Int n, Int d);
ManifoldDescriptor spin_surface(Int d, Int m, Int t);
ManifoldDescriptor nonspin_surface(Int d, Int n, Int t);
ManifoldDescriptor negative_c1(Int n, Int r);

enum class Regime { c1sq_zero, spin_positive, nonspin_positive };
std::string_view to_string(Regime r) noexcept;
Regime parse_regime(std::string_view s);

struct FamilyRequest {
    Int d = 1;
    std::vector<Int> divisors;  // d_0 = d, d_1..d_N
    Regime regime = Regime::c1sq_zero;
    Int n = 0;  // chi_h for c1sq_zero
    Int m = 0;  // positive regimes
    Int t = 1;  // positive regimes
};

struct FamilyResult {
    // Descriptor per sign pattern; bit i of the index set means minus on
    // triple surgery i+1. Pattern 0 is W with all signs +.
    std::vector<ManifoldDescriptor> members;
    std::vector<ClassVector> canonicals;
    std::vector<DivisibilityCertificate> certificates;
    std::set<Int> q;

    const ManifoldDescriptor& base() const { return members.front(); }
    std::set<Int> certified_divisibilities() const;
};

FamilyResult inequivalent_family(const FamilyRequest& request);
// One sign pattern only.
ManifoldDescriptor family_member(const FamilyRequest& request, std::uint64_t minus_mask);

}  // namespace symgeo
