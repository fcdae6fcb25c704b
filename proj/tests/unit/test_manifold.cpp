#include <doctest.h>

#include "symgeo/geography.hpp"
#include "symgeo/recipe.hpp"

using namespace symgeo;

namespace {
Int coefficient(const ManifoldDescriptor& m, const std::string& name) {
    return m.canonical[m.lattice.require_index(name)];
}

ErrorCode error_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::overflow;
}
}  // namespace

TEST_CASE("elliptic_surface examples") {
    const auto e153 = elliptic_surface(1, 5, 2);
    CHECK(format_class(e153.lattice, e153.canonical) == "3*f");
    CHECK(e153.e == 12);
    CHECK(e153.sigma == -8);

    const auto e2 = elliptic_surface(2, 1, 1);
    CHECK(e2.canonical.is_zero());
    CHECK(e2.spin);
    CHECK(e2.e == 24);
    CHECK(e2.sigma == -16);

    // E(2)_{d+1} has K = d f.
    const auto e26 = elliptic_surface(2, 6, 1);
    CHECK(coefficient(e26, "f") == 5);
    CHECK_FALSE(e26.spin);
    const auto e27 = elliptic_surface(2, 7, 1);
    CHECK(coefficient(e27, "f") == 6);
    CHECK(e27.spin);

    CHECK(error_of([] { (void)elliptic_surface(2, 2, 4); }) == ErrorCode::multiple_fibres_not_coprime);
}

TEST_CASE("elliptic_surface lattice: nuclei, triples and duals") {
    const auto e4 = elliptic_surface(4);
    CHECK(e4.lattice.rank() == 2 + 4 * 3);
    CHECK(e4.triples.size() == 3);
    CHECK(pairing(e4.lattice, e4.canonical, e4.canonical) == e4.c1_sq());
    CHECK(divisibility(e4).certified);
    CHECK(divisibility(e4).value() == 2);
    CHECK(validate(e4).ok());

    for (Int n = 1; n <= 6; ++n)
        for (Int p = 1; p <= 5; ++p)
            for (Int q = 1; q <= 5; ++q) {
                if (std::gcd(p, q) != 1) continue;
                const auto x = elliptic_surface(n, p, q);
                const Int k = n * p * q - p - q;
                CHECK(coefficient_gcd(x.canonical) == (k < 0 ? -k : k));
                CHECK(x.spin == (n % 2 == 0 && p % 2 == 1 && q % 2 == 1));
                CHECK(validate(x).ok());
            }
}

TEST_CASE("knot_product") {
    CHECK(knot_product(1).canonical.is_zero());
    const auto k2 = knot_product(2);
    CHECK(coefficient(k2, "T_K") == 2);
    CHECK(k2.e == 0);
    CHECK(k2.sigma == 0);
    CHECK_FALSE(k2.simply_connected);
    CHECK(coefficient(knot_product(0), "T_K") == -2);
}

TEST_CASE("surface_bundle_Y") {
    const auto y23 = surface_bundle_Y(2, 3);
    CHECK(y23.c1_sq() == 16);
    CHECK(y23.e == 8);
    CHECK(y23.sigma == 0);
    CHECK(pairing(y23.lattice, y23.canonical, y23.canonical) == 16);
    CHECK(y23.lattice.rank() == 2 * 3 * (2 - 1) * 2 + 2);

    const auto y1 = surface_bundle_Y(1, 4);
    CHECK(y1.e == knot_product(4).e);
    CHECK(y1.sigma == knot_product(4).sigma);

    const auto y21 = surface_bundle_Y(2, 1);
    CHECK(format_class(y21.lattice, y21.canonical) == "2*Sigma_F");
    CHECK(y21.e == 0);
}

TEST_CASE("catalog entries") {
    const auto b = catalog("barlow");
    CHECK(b.e == 11);
    CHECK(b.c1_sq() == 1);
    CHECK(derived_invariants(b).chi_h == 1);
    CHECK(derived_invariants(b).b2_plus == 1);

    const auto lp = catalog("lee_park");
    CHECK(lp.e == 10);
    CHECK(lp.c1_sq() == 2);
    CHECK(lp.sigma == -6);

    const auto p = catalog("persson", {4, 8});
    CHECK(p.e == 40);
    CHECK(p.sigma == -24);
    CHECK(divisibility(p).certified);
    CHECK(divisibility(p).value() == 1);

    const auto hs = catalog("horikawa_spin", {3});
    CHECK(hs.spin);
    CHECK(divisibility(hs).value() == 2);
    CHECK(validate(hs).ok());

    CHECK(error_of([] { (void)catalog("persson", {4, 20}); }) == ErrorCode::outside_persson_sector);
    CHECK(error_of([] { (void)catalog("horikawa_spin", {2}); }) == ErrorCode::invalid_parameter);
    CHECK(error_of([] { (void)catalog("nonsense"); }) == ErrorCode::invalid_parameter);

    for (const char* name : {"barlow", "lee_park", "enriques_k1_pg1", "enriques_k2_pg1", "quadric"}) {
        const auto m = catalog(name);
        CHECK((m.c1_sq() + m.e) % 12 == 0);
        CHECK(validate(m).ok());
    }
}

TEST_CASE("derived_invariants") {
    const auto e2 = derived_invariants(elliptic_surface(2));
    CHECK(e2.c1_sq == 0);
    CHECK(e2.chi_h == 2);
    CHECK(e2.b2_plus == 3);

    ManifoldDescriptor t;
    t.e = 42;
    t.sigma = -22;
    t.simply_connected = true;
    t.symplectic = true;
    const auto inv = derived_invariants(t);
    CHECK(inv.chi_h == 5);
    CHECK(inv.b2_plus == 9);
    CHECK(inv.b2_minus == 31);

    t.e = 43;
    CHECK(error_of([&] { (void)derived_invariants(t); }) == ErrorCode::not_almost_complex);
}

TEST_CASE("class expressions round-trip") {
    const auto e3 = elliptic_surface(3);
    const ClassVector v = parse_class(e3.lattice, "2*F-R.1+S.2");
    CHECK(format_class(e3.lattice, v) == "2*F-R.1+S.2");
    CHECK(parse_class(e3.lattice, "0").is_zero());
    CHECK(error_of([&] { (void)parse_class(e3.lattice, "G"); }) == ErrorCode::basis_mismatch);
    CHECK(error_of([&] { (void)parse_class(e3.lattice, "2**F"); }) == ErrorCode::parse_error);
}

TEST_CASE("declare_witness records the class and re-executes") {
    const auto e2 = elliptic_surface(2);
    const auto w = declare_witness(e2, "C", parse_class(e2.lattice, "S.1"), 0, -2, false);
    const Witness* c = find_witness(w, "C");
    REQUIRE(c != nullptr);
    CHECK(witness_pairing(*c, parse_class(e2.lattice, "T1.1")) == 0);
    CHECK(witness_pairing(*c, parse_class(e2.lattice, "R.1")) == 1);
    CHECK(execute_recipe(w.recipe) == w);
}
