#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "symgeo/checked.hpp"

namespace symgeo {

// Integer coefficients over a lattice basis.
struct ClassVector {
    std::vector<Int> coefficients;

    ClassVector() = default;
    explicit ClassVector(std::size_t rank) : coefficients(rank, 0) {}
    explicit ClassVector(std::vector<Int> c) : coefficients(std::move(c)) {}
    // Braces always mean coefficients: ClassVector({3}) is the vector (3).
    ClassVector(std::initializer_list<Int> c) : coefficients(c) {}

    static ClassVector unit(std::size_t rank, std::size_t index, Int coeff = 1);

    std::size_t size() const { return coefficients.size(); }
    Int operator[](std::size_t i) const { return coefficients[i]; }
    Int& operator[](std::size_t i) { return coefficients[i]; }
    bool is_zero() const;

    // Zero-padded copy with `rank` entries (rank >= size()).
    ClassVector extended(std::size_t rank) const;

    bool operator==(const ClassVector&) const = default;
};

ClassVector operator+(const ClassVector& a, const ClassVector& b);
ClassVector operator-(const ClassVector& a, const ClassVector& b);
ClassVector operator-(const ClassVector& a);
ClassVector operator*(Int k, const ClassVector& v);

// Symmetric integer form with named basis, stored as orthogonal blocks.
// Blocks are the connected components of the Gram matrix's off-diagonal
// support, so a lattice has exactly one block layout for a given Gram.
class IntersectionLattice {
public:
    struct Block {
        std::vector<std::size_t> members;  // ascending basis indices
        std::vector<Int> gram;             // row-major, members.size()^2

        bool operator==(const Block&) const = default;
    };

    IntersectionLattice() = default;

    // Dense constructor; validates shape, symmetry and name uniqueness.
    IntersectionLattice(std::vector<std::string> names,
                        const std::vector<std::vector<Int>>& gram,
                        bool primitive_summand);

    std::size_t rank() const { return names_.size(); }
    const std::vector<std::string>& basis_names() const { return names_; }
    const std::string& name(std::size_t i) const { return names_.at(i); }
    bool primitive_summand() const { return primitive_; }
    const std::vector<Block>& blocks() const { return blocks_; }

    std::optional<std::size_t> index_of(std::string_view name) const;
    std::size_t require_index(std::string_view name) const;

    Int entry(std::size_t i, std::size_t j) const;
    const Block& block_of(std::size_t i) const { return blocks_[block_index_.at(i)]; }
    std::vector<std::vector<Int>> dense_gram() const;

    // Gram * v: the pairing of v with every basis class.
    std::vector<Int> pairing_row(const ClassVector& v) const;

    IntersectionLattice with_primitive(bool primitive) const;
    // Same basis and flag, Gram multiplied by k (pullback under a degree-k map).
    IntersectionLattice scaled(Int k, std::string_view name_prefix) const;
    // Drops basis index i (must be a rank-1 block).
    IntersectionLattice without_singleton(std::size_t i) const;

    bool operator==(const IntersectionLattice&) const = default;

private:
    friend class LatticeBuilder;

    std::vector<std::string> names_;
    std::vector<Block> blocks_;
    std::vector<std::size_t> block_index_;
    std::vector<std::size_t> position_;  // position inside its block
    bool primitive_ = true;

    void index_blocks();
};

// Incremental construction by blocks; each added block is split into its
// connected components. build() checks name uniqueness.
class LatticeBuilder {
public:
    // Appends basis classes `names` with the given row-major Gram.
    LatticeBuilder& add_block(std::vector<std::string> names, std::vector<Int> gram);
    // Copies every block of `lat`, prefixing names.
    LatticeBuilder& add_lattice(const IntersectionLattice& lat, std::string_view prefix = {});
    // Copies the blocks of `lat` except those listed (by block position).
    LatticeBuilder& add_lattice_except(const IntersectionLattice& lat,
                                       const std::vector<std::size_t>& skip_blocks,
                                       std::string_view prefix,
                                       std::vector<std::optional<std::size_t>>& index_map);
    std::size_t size() const { return names_.size(); }
    bool contains(std::string_view name) const;
    IntersectionLattice build(bool primitive_summand) const;

private:
    std::vector<std::string> names_;
    std::vector<IntersectionLattice::Block> blocks_;
};

Int pairing(const IntersectionLattice& lat, const ClassVector& v, const ClassVector& w);

struct RenameRule {
    std::string left_prefix;
    std::string right_prefix;
};

IntersectionLattice direct_sum(const IntersectionLattice& a, const IntersectionLattice& b,
                               const RenameRule& rename = {});

Int coefficient_gcd(const ClassVector& v);

// Gcds of all non-empty subsets of the divisor list, with the doubling rule
// applied first when 4 | d. Guarded to N <= 20.
std::set<Int> q_set(Int d, const std::vector<Int>& divisors);

// Throws invalid_divisor_list unless d_0 = d, every d_i | d, d_i > 0, and all
// d_i are even when d is even.
void validate_divisor_list(Int d, const std::vector<Int>& divisors);

}  // namespace symgeo
