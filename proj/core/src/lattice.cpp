#include "symgeo/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

namespace symgeo {

ClassVector ClassVector::unit(std::size_t rank, std::size_t index, Int coeff) {
    ClassVector v(rank);
    v.coefficients.at(index) = coeff;
    return v;
}

bool ClassVector::is_zero() const {
    return std::all_of(coefficients.begin(), coefficients.end(), [](Int c) { return c == 0; });
}

ClassVector ClassVector::extended(std::size_t rank) const {
    if (rank < size()) throw Error(ErrorCode::basis_mismatch, "basis mismatch");
    ClassVector v = *this;
    v.coefficients.resize(rank, 0);
    return v;
}

namespace {

void require_same_size(const ClassVector& a, const ClassVector& b) {
    if (a.size() != b.size()) throw Error(ErrorCode::basis_mismatch, "basis mismatch");
}

}  // namespace

ClassVector operator+(const ClassVector& a, const ClassVector& b) {
    require_same_size(a, b);
    ClassVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked::add(a[i], b[i]);
    return r;
}

ClassVector operator-(const ClassVector& a, const ClassVector& b) {
    require_same_size(a, b);
    ClassVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked::sub(a[i], b[i]);
    return r;
}

ClassVector operator-(const ClassVector& a) {
    ClassVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked::neg(a[i]);
    return r;
}

ClassVector operator*(Int k, const ClassVector& v) {
    ClassVector r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = checked::mul(k, v[i]);
    return r;
}

// ---------------------------------------------------------------------------

IntersectionLattice::IntersectionLattice(std::vector<std::string> names,
                                         const std::vector<std::vector<Int>>& gram,
                                         bool primitive_summand) {
    const std::size_t n = names.size();
    if (gram.size() != n) throw Error(ErrorCode::basis_mismatch, "gram side does not match basis size");
    std::vector<Int> flat;
    flat.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        if (gram[i].size() != n) throw Error(ErrorCode::basis_mismatch, "gram is not square");
        for (std::size_t j = 0; j < n; ++j) {
            if (gram[i][j] != gram[j][i]) throw Error(ErrorCode::invalid_parameter, "gram is not symmetric");
            flat.push_back(gram[i][j]);
        }
    }
    LatticeBuilder b;
    if (n > 0) b.add_block(std::move(names), std::move(flat));
    *this = b.build(primitive_summand);
}

void IntersectionLattice::index_blocks() {
    block_index_.assign(names_.size(), 0);
    position_.assign(names_.size(), 0);
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
        const auto& members = blocks_[b].members;
        for (std::size_t p = 0; p < members.size(); ++p) {
            block_index_[members[p]] = b;
            position_[members[p]] = p;
        }
    }
}

std::optional<std::size_t> IntersectionLattice::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (names_[i] == name) return i;
    }
    return std::nullopt;
}

std::size_t IntersectionLattice::require_index(std::string_view name) const {
    auto i = index_of(name);
    if (!i) throw Error(ErrorCode::basis_mismatch, "unknown basis class '" + std::string(name) + "'");
    return *i;
}

Int IntersectionLattice::entry(std::size_t i, std::size_t j) const {
    if (i >= rank() || j >= rank()) throw Error(ErrorCode::basis_mismatch, "basis mismatch");
    if (block_index_[i] != block_index_[j]) return 0;
    const Block& b = blocks_[block_index_[i]];
    return b.gram[position_[i] * b.members.size() + position_[j]];
}

std::vector<std::vector<Int>> IntersectionLattice::dense_gram() const {
    std::vector<std::vector<Int>> g(rank(), std::vector<Int>(rank(), 0));
    for (const Block& b : blocks_) {
        const std::size_t s = b.members.size();
        for (std::size_t p = 0; p < s; ++p)
            for (std::size_t q = 0; q < s; ++q) g[b.members[p]][b.members[q]] = b.gram[p * s + q];
    }
    return g;
}

std::vector<Int> IntersectionLattice::pairing_row(const ClassVector& v) const {
    if (v.size() != rank()) throw Error(ErrorCode::basis_mismatch, "basis mismatch");
    std::vector<Int> row(rank(), 0);
    for (const Block& b : blocks_) {
        const std::size_t s = b.members.size();
        for (std::size_t p = 0; p < s; ++p) {
            Int acc = 0;
            for (std::size_t q = 0; q < s; ++q) {
                const Int c = v[b.members[q]];
                if (c != 0) acc = checked::add(acc, checked::mul(b.gram[p * s + q], c));
            }
            row[b.members[p]] = acc;
        }
    }
    return row;
}

IntersectionLattice IntersectionLattice::with_primitive(bool primitive) const {
    IntersectionLattice r = *this;
    r.primitive_ = primitive;
    return r;
}

IntersectionLattice IntersectionLattice::scaled(Int k, std::string_view name_prefix) const {
    IntersectionLattice r = *this;
    for (auto& n : r.names_) n = std::string(name_prefix) + n;
    for (auto& b : r.blocks_)
        for (auto& g : b.gram) g = checked::mul(g, k);
    return r;
}

IntersectionLattice IntersectionLattice::without_singleton(std::size_t i) const {
    if (i >= rank() || block_of(i).members.size() != 1)
        throw Error(ErrorCode::precondition, "class is not an orthogonal rank-1 summand");
    LatticeBuilder builder;
    std::vector<std::optional<std::size_t>> map;
    builder.add_lattice_except(*this, {block_index_[i]}, "", map);
    return builder.build(primitive_);
}

// ---------------------------------------------------------------------------

LatticeBuilder& LatticeBuilder::add_block(std::vector<std::string> names, std::vector<Int> gram) {
    const std::size_t s = names.size();
    if (gram.size() != s * s) throw Error(ErrorCode::basis_mismatch, "block gram has wrong size");
    for (std::size_t p = 0; p < s; ++p)
        for (std::size_t q = 0; q < s; ++q)
            if (gram[p * s + q] != gram[q * s + p])
                throw Error(ErrorCode::invalid_parameter, "gram is not symmetric");

    // Split into connected components (union-find on nonzero off-diagonals).
    std::vector<std::size_t> parent(s);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t p = 0; p < s; ++p)
        for (std::size_t q = p + 1; q < s; ++q)
            if (gram[p * s + q] != 0) parent[find(q)] = find(p);

    const std::size_t offset = names_.size();
    std::vector<std::vector<std::size_t>> comps;
    std::vector<std::size_t> comp_of_root(s, SIZE_MAX);
    for (std::size_t p = 0; p < s; ++p) {
        const std::size_t r = find(p);
        if (comp_of_root[r] == SIZE_MAX) {
            comp_of_root[r] = comps.size();
            comps.emplace_back();
        }
        comps[comp_of_root[r]].push_back(p);
    }
    for (const auto& comp : comps) {
        IntersectionLattice::Block b;
        for (std::size_t p : comp) b.members.push_back(offset + p);
        for (std::size_t p : comp)
            for (std::size_t q : comp) b.gram.push_back(gram[p * s + q]);
        blocks_.push_back(std::move(b));
    }
    for (auto& n : names) names_.push_back(std::move(n));
    return *this;
}

LatticeBuilder& LatticeBuilder::add_lattice(const IntersectionLattice& lat, std::string_view prefix) {
    std::vector<std::optional<std::size_t>> map;
    return add_lattice_except(lat, {}, prefix, map);
}

LatticeBuilder& LatticeBuilder::add_lattice_except(const IntersectionLattice& lat,
                                                   const std::vector<std::size_t>& skip_blocks,
                                                   std::string_view prefix,
                                                   std::vector<std::optional<std::size_t>>& index_map) {
    index_map.assign(lat.rank(), std::nullopt);
    std::vector<bool> skip(lat.blocks().size(), false);
    for (std::size_t b : skip_blocks) skip.at(b) = true;
    // Keep basis order: walk indices, assign new positions to kept ones.
    for (std::size_t i = 0; i < lat.rank(); ++i) {
        if (skip[lat.block_index_[i]]) continue;
        index_map[i] = names_.size();
        names_.push_back(std::string(prefix) + lat.name(i));
    }
    for (std::size_t b = 0; b < lat.blocks().size(); ++b) {
        if (skip[b]) continue;
        IntersectionLattice::Block nb = lat.blocks()[b];
        for (auto& m : nb.members) m = *index_map[m];
        blocks_.push_back(std::move(nb));
    }
    return *this;
}

bool LatticeBuilder::contains(std::string_view name) const {
    return std::find(names_.begin(), names_.end(), name) != names_.end();
}

IntersectionLattice LatticeBuilder::build(bool primitive_summand) const {
    std::unordered_set<std::string_view> seen;
    seen.reserve(names_.size());
    for (const auto& n : names_) {
        if (!seen.insert(n).second)
            throw Error(ErrorCode::name_collision, "basis name collision: '" + n + "'");
    }
    IntersectionLattice lat;
    lat.names_ = names_;
    lat.blocks_ = blocks_;
    std::sort(lat.blocks_.begin(), lat.blocks_.end(),
              [](const auto& a, const auto& b) { return a.members.front() < b.members.front(); });
    lat.primitive_ = primitive_summand;
    lat.index_blocks();
    return lat;
}

// ---------------------------------------------------------------------------

Int pairing(const IntersectionLattice& lat, const ClassVector& v, const ClassVector& w) {
    if (v.size() != lat.rank() || w.size() != lat.rank())
        throw Error(ErrorCode::basis_mismatch, "basis mismatch");
    Int acc = 0;
    for (const auto& b : lat.blocks()) {
        const std::size_t s = b.members.size();
        for (std::size_t p = 0; p < s; ++p) {
            const Int vp = v[b.members[p]];
            if (vp == 0) continue;
            for (std::size_t q = 0; q < s; ++q) {
                const Int wq = w[b.members[q]];
                if (wq == 0) continue;
                acc = checked::add(acc, checked::mul(checked::mul(vp, b.gram[p * s + q]), wq));
            }
        }
    }
    return acc;
}

IntersectionLattice direct_sum(const IntersectionLattice& a, const IntersectionLattice& b,
                               const RenameRule& rename) {
    LatticeBuilder builder;
    builder.add_lattice(a, rename.left_prefix);
    builder.add_lattice(b, rename.right_prefix);
    return builder.build(a.primitive_summand() && b.primitive_summand());
}

Int coefficient_gcd(const ClassVector& v) {
    Int g = 0;
    for (Int c : v.coefficients) g = checked::gcd(g, c);
    return g;
}

void validate_divisor_list(Int d, const std::vector<Int>& divisors) {
    auto fail = [](const std::string& why) {
        throw Error(ErrorCode::invalid_divisor_list, "invalid divisor list: " + why);
    };
    if (d <= 0) fail("d must be positive");
    if (divisors.empty() || divisors.front() != d) fail("d_0 must equal d");
    if (divisors.size() > 21) fail("at most 20 divisors besides d_0");
    for (Int di : divisors) {
        if (di <= 0 || d % di != 0) fail(std::to_string(di) + " does not divide " + std::to_string(d));
        if (d % 2 == 0 && di % 2 != 0) fail("all divisors must be even when d is even");
    }
}

std::set<Int> q_set(Int d, const std::vector<Int>& divisors) {
    validate_divisor_list(d, divisors);
    std::vector<Int> base = divisors;
    if (d % 4 == 0) {
        for (Int& x : base)
            if (x % 4 != 0) x = checked::mul(2, x);
    }
    std::set<Int> out;
    const std::size_t n = base.size();
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        Int g = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (std::uint64_t{1} << i)) g = std::gcd(g, base[i]);
        out.insert(g);
    }
    return out;
}

}  // namespace symgeo
