#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "symgeo/lattice.hpp"

namespace symgeo {

enum class Tri { no, yes, unknown };
std::string_view to_string(Tri t) noexcept;

// A class known only through its pairings with the basis.
struct Witness {
    std::string name;
    std::vector<Int> pairings;
    std::optional<Int> genus;
    std::optional<Int> self_intersection;
    bool symplectic = false;  // embedded symplectic surface (Lemma-2 applies)
    std::string provenance;

    bool operator==(const Witness&) const = default;
};

// Disjoint Lagrangian tori T1, R with dual spheres S1 (T1.S1 = 1) and S
// (R.S = 1); T2 = R - a*T1 is chosen by the surgery.
struct LagrangianTriple {
    std::string t1, s1, r, s;
    bool used = false;

    bool operator==(const LagrangianTriple&) const = default;
};

using ParamValue = std::variant<Int, std::string, std::vector<Int>>;

struct ConstructionRecipe {
    std::string operation;
    std::map<std::string, ParamValue> params;
    std::vector<ConstructionRecipe> inputs;
    std::vector<std::string> notes;

    bool operator==(const ConstructionRecipe&) const = default;
};

struct ManifoldDescriptor {
    Int e = 0;
    Int sigma = 0;
    bool spin = false;
    bool simply_connected = false;
    bool symplectic = false;
    Tri minimal = Tri::unknown;
    bool general_type = false;
    // pairing(K, K) must equal 2e + 3sigma.
    bool carries_full_canonical = false;

    IntersectionLattice lattice;
    ClassVector canonical;
    std::vector<Witness> witnesses;
    std::vector<LagrangianTriple> triples;
    ConstructionRecipe recipe;
    std::vector<std::string> notes;

    Int c1_sq() const;

    bool operator==(const ManifoldDescriptor&) const = default;
};

struct DerivedInvariants {
    Int c1_sq = 0;
    Int chi_h = 0;
    std::optional<Int> b2, b2_plus, b2_minus;
};

DerivedInvariants derived_invariants(const ManifoldDescriptor& m);

// --- class expressions ("2*F+R.1-S.1") used by recipes ----------------------

std::string format_class(const IntersectionLattice& lat, const ClassVector& v);
ClassVector parse_class(const IntersectionLattice& lat, std::string_view expr);

// --- helpers shared by the operation modules --------------------------------

// Pairing of a witness with a class.
Int witness_pairing(const Witness& w, const ClassVector& v);
const Witness* find_witness(const ManifoldDescriptor& m, std::string_view name);
// Witness for the class v, pairing vector computed from the Gram.
Witness class_witness(const IntersectionLattice& lat, std::string name, const ClassVector& v,
                      std::optional<Int> genus, std::optional<Int> self_intersection,
                      bool symplectic, std::string provenance);
// Spin from canonical parity on a primitive lattice (w2 = K mod 2).
bool canonical_is_even(const ClassVector& k);
// Smallest k >= 1 such that no basis name starts with stem+k+sep.
std::string fresh_stem(const IntersectionLattice& lat, std::string_view stem, std::string_view sep);

ConstructionRecipe make_recipe(std::string op, std::map<std::string, ParamValue> params,
                               std::vector<ConstructionRecipe> inputs = {});

// --- atoms -------------------------------------------------------------------

ManifoldDescriptor elliptic_surface(Int n, Int p = 1, Int q = 1);
ManifoldDescriptor knot_product(Int h);
ManifoldDescriptor surface_bundle_Y(Int g, Int h);
ManifoldDescriptor catalog(std::string_view name, const std::vector<Int>& params = {});

// Adds a witness for a class expression; recorded as its own recipe step.
ManifoldDescriptor declare_witness(const ManifoldDescriptor& m, std::string name,
                                   const ClassVector& cls, std::optional<Int> genus,
                                   std::optional<Int> self_intersection, bool symplectic);

}  // namespace symgeo
