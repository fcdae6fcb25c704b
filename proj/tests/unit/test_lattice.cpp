#include <doctest.h>

#include <random>

#include "../oracles.hpp"
#include "symgeo/lattice.hpp"

using namespace symgeo;

namespace {
IntersectionLattice hyperbolic(const std::string& a, const std::string& b) {
    return IntersectionLattice({a, b}, {{0, 1}, {1, 0}}, true);
}
}  // namespace

TEST_CASE("pairing: hyperbolic, doubled and zero") {
    const auto h = hyperbolic("x", "y");
    CHECK(pairing(h, ClassVector({1, 0}), ClassVector({0, 1})) == 1);

    const IntersectionLattice q({"F_1", "F_2"}, {{0, 2}, {2, 0}}, true);
    const Int n = 4, m = 4;
    const ClassVector k({n - 2, m - 2});
    CHECK(pairing(q, k, k) == 4 * (n - 2) * (m - 2));
    CHECK(pairing(q, k, k) == 16);

    CHECK(pairing(h, ClassVector({7, -3}), ClassVector(2)) == 0);
}

TEST_CASE("pairing: basis mismatch is a typed error") {
    const auto h = hyperbolic("x", "y");
    try {
        (void)pairing(h, ClassVector({1}), ClassVector({1, 0}));
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::basis_mismatch);
    }
}

TEST_CASE("pairing is bilinear and symmetric") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<Int> coef(-20, 20);
    const IntersectionLattice lat({"a", "b", "c", "d"},
                                  {{2, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, -3}}, true);
    for (int trial = 0; trial < 200; ++trial) {
        ClassVector u(4), v(4), w(4);
        for (std::size_t i = 0; i < 4; ++i) {
            u[i] = coef(rng);
            v[i] = coef(rng);
            w[i] = coef(rng);
        }
        const Int k = coef(rng);
        CHECK(pairing(lat, u, v) == pairing(lat, v, u));
        CHECK(pairing(lat, u + k * v, w) == pairing(lat, u, w) + k * pairing(lat, v, w));
    }
}

TEST_CASE("direct_sum") {
    const auto hh = direct_sum(hyperbolic("x", "y"), hyperbolic("x", "y"), {"a.", "b."});
    CHECK(hh.rank() == 4);
    CHECK(hh.blocks().size() == 2);
    CHECK(hh.entry(0, 1) == 1);
    CHECK(hh.entry(0, 2) == 0);
    CHECK(hh.entry(2, 3) == 1);

    // Y_{2,1}: 2h(g-1) = 2 blocks [[2,1],[1,0]] are one block here, plus H.
    const IntersectionLattice y({"s", "r"}, {{2, 1}, {1, 0}}, true);
    const auto y21 = direct_sum(y, hyperbolic("S", "F"));
    CHECK(y21.rank() == 4);
    CHECK(y21.entry(0, 0) == 2);
    CHECK(y21.entry(2, 3) == 1);

    const auto id = direct_sum(hyperbolic("x", "y"), IntersectionLattice{});
    CHECK(id == hyperbolic("x", "y"));

    try {
        (void)direct_sum(hyperbolic("x", "y"), hyperbolic("x", "z"));
        FAIL("expected a name collision");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::name_collision);
    }
}

TEST_CASE("block storage splits disconnected dense input canonically") {
    const IntersectionLattice lat({"a", "b", "c"}, {{0, 0, 1}, {0, -1, 0}, {1, 0, 0}}, true);
    CHECK(lat.blocks().size() == 2);
    CHECK(lat.dense_gram() == std::vector<std::vector<Int>>{{0, 0, 1}, {0, -1, 0}, {1, 0, 0}});
}

TEST_CASE("coefficient_gcd") {
    CHECK(coefficient_gcd(ClassVector({9, 6})) == 3);
    CHECK(coefficient_gcd(ClassVector({0, 0})) == 0);
    const Int m = 1, k = 1;
    CHECK(coefficient_gcd(ClassVector({(2 * m + 1) * (2 * k + 1), 2 * (2 * k + 1)})) == 3);
    CHECK(coefficient_gcd(ClassVector({-4, 6})) == 2);
    for (Int s = 0; s < 6; ++s) CHECK(coefficient_gcd(s * ClassVector({10, -15, 25})) == s * 5);
}

TEST_CASE("q_set: paper examples") {
    CHECK(q_set(45, {45, 15, 9, 5}) == std::set<Int>{45, 15, 9, 5, 3, 1});
    CHECK(q_set(6, {6, 2}) == std::set<Int>{6, 2});
    CHECK(q_set(7, {7}) == std::set<Int>{7});
}

TEST_CASE("q_set: 4 | d doubling") {
    CHECK(q_set(12, {12, 6}) == std::set<Int>{12});
    CHECK(q_set(12, {12, 6, 4}) == oracle::q_set_brute(12, {12, 6, 4}));
    CHECK(q_set(8, {8, 2}) == std::set<Int>{8, 4});
}

TEST_CASE("q_set: divisor list validation") {
    auto code_of = [](Int d, std::vector<Int> v) {
        try {
            (void)q_set(d, v);
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::overflow;  // sentinel: no error
    };
    CHECK(code_of(45, {45, 7}) == ErrorCode::invalid_divisor_list);
    CHECK(code_of(6, {6, 3}) == ErrorCode::invalid_divisor_list);
    CHECK(code_of(45, {15}) == ErrorCode::invalid_divisor_list);
    CHECK(code_of(45, {}) == ErrorCode::invalid_divisor_list);
}

TEST_CASE("checked arithmetic refuses to wrap") {
    const Int big = std::numeric_limits<Int>::max() / 2 + 1;
    try {
        (void)checked::mul(big, 2);
        FAIL("expected overflow");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::overflow);
    }
    CHECK_THROWS_AS((void)(big * ClassVector({2})), Error);
}
