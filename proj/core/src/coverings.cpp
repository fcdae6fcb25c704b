#include "symgeo/coverings.hpp"

namespace symgeo {

using namespace checked;

CoverParams CoverParams::make(Int m, Int d) {
    if (m < 2 || d < 2) throw Error(ErrorCode::invalid_parameter, "cover needs m >= 2 and d >= 2");
    if ((d - 1) % (m - 1) != 0)
        throw Error(ErrorCode::cover_divisibility,
                    "(m-1) does not divide (d-1) for m=" + std::to_string(m) + ", d=" + std::to_string(d));
    CoverParams p;
    p.m = m;
    p.d = d;
    p.a = (d - 1) / (m - 1);
    p.n = mul(m, p.a);
    p.delta = mul(d - 1, add(d, p.a));
    return p;
}

ManifoldDescriptor branched_cover(const ManifoldDescriptor& base, const BranchLocus& locus, Int deg) {
    if (deg < 1) throw Error(ErrorCode::invalid_parameter, "cover degree must be positive");
    if (deg == 1) return base;

    auto inconsistent = [](const std::string& why) {
        throw Error(ErrorCode::inconsistent_branch_data, "inconsistent branch data: " + why);
    };
    const Int e_d = neg(add(locus.k_dot_d, locus.d_square));
    const Int sig_num = mul(sub(mul(deg, deg), 1), locus.d_square);
    if (sig_num % mul(3, deg) != 0) inconsistent("Hirzebruch signature is not integral");
    if (locus.k_dot_d % deg != 0 || locus.d_square % mul(deg, deg) != 0) inconsistent("D is not divisible by deg");
    const Int kb = locus.k_dot_d / deg;
    const Int bb = locus.d_square / mul(deg, deg);

    ManifoldDescriptor out;
    out.e = sub(mul(deg, base.e), mul(deg - 1, e_d));
    out.sigma = sub(mul(deg, base.sigma), sig_num / mul(3, deg));
    const Int c1 = mul(deg, add(add(base.c1_sq(), mul(mul(2, deg - 1), kb)), mul(mul(deg - 1, deg - 1), bb)));
    if (c1 != out.c1_sq()) inconsistent("c1^2 = 2e + 3sigma fails for the cover");

    out.symplectic = base.symplectic;
    out.simply_connected = base.simply_connected && locus.connected && locus.d_square > 0;
    if (locus.d_square <= 0) out.notes.push_back("warning: simply-connectedness unknown (D^2 <= 0)");

    std::string quotient;
    if (locus.quotient_class) {
        const ClassVector& b = *locus.quotient_class;
        if (b.size() != base.lattice.rank()) throw Error(ErrorCode::basis_mismatch, "basis mismatch");
        if (pairing(base.lattice, b, b) != bb || pairing(base.lattice, base.canonical, b) != kb)
            inconsistent("quotient class B does not match D^2 and K.D");
        out.lattice = base.lattice.scaled(deg, "pb.").with_primitive(false);
        out.canonical = base.canonical + (deg - 1) * b;
        out.carries_full_canonical = base.carries_full_canonical;
        out.spin = canonical_is_even(out.canonical);
        if (!out.spin) out.notes.push_back("spin undetermined beyond canonical parity");
        quotient = format_class(base.lattice, b);
    } else {
        out.notes.push_back("canonical class not tracked (no quotient class)");
    }
    out.recipe = make_recipe("branched_cover",
                             {{"d_square", locus.d_square},
                              {"k_dot_d", locus.k_dot_d},
                              {"deg", deg},
                              {"connected", Int{locus.connected ? 1 : 0}},
                              {"quotient", quotient}},
                             {base.recipe});
    return out;
}

bool pluri_system_defines_map(const ManifoldDescriptor& m, Int n) {
    const Int k2 = m.c1_sq();
    const Int pg = sub(add(m.e, m.sigma) / 4, 1);
    if (n >= 4) return true;
    if (n == 3) return k2 >= 2 || (m.simply_connected && k2 == 1 && pg == 0);
    if (n == 2) return k2 >= 5 || pg >= 1 || (m.simply_connected && k2 == 4 && pg == 0);
    return false;
}

ManifoldDescriptor pluricanonical_cover(const ManifoldDescriptor& base, const CoverParams& p) {
    if (base.minimal != Tri::yes || !base.general_type || !base.simply_connected)
        throw Error(ErrorCode::precondition, "pluricanonical cover needs a minimal simply-connected general-type surface");
    if (base.lattice.rank() != 1)
        throw Error(ErrorCode::precondition, "pluricanonical cover needs a rank-1 canonical lattice");
    if (!pluri_system_defines_map(base, p.n))
        throw Error(ErrorCode::pluri_map_unknown, "pluricanonical system not known to define map");

    const Int e = base.e, c = base.c1_sq();
    ManifoldDescriptor out;
    out.e = mul(p.m, add(e, mul(p.delta, c)));
    const Int sig_num = mul(neg(p.m), add(mul(2, e), mul(add(mul(p.d, p.d - 2), mul(mul(2, p.a), p.d - 1)), c)));
    out.sigma = exact_div(sig_num, 3, "cover signature");

    // Independent chi_h expression as an internal cross-check.
    const Int chi_base = exact_div(add(e, base.sigma), 4, "base chi_h");
    const Int chi_extra = mul(mul(mul(p.m, p.d - 1), add(add(mul(2, p.d), p.a), 1)), c);
    const Int chi = add(mul(p.m, chi_base), exact_div(chi_extra, 12, "cover chi_h"));
    if (mul(4, chi) != add(out.e, out.sigma) || out.c1_sq() != mul(mul(p.m, mul(p.d, p.d)), c))
        throw Error(ErrorCode::inconsistent_branch_data, "pluricanonical cover invariants disagree");

    const Int a_sq = base.lattice.entry(0, 0);
    out.lattice = IntersectionLattice({"pb.A"}, {{mul(p.m, a_sq)}}, true);
    out.canonical = ClassVector::unit(1, 0, mul(p.d, base.canonical[0]));
    Witness dual;
    dual.name = "pb.A*";
    dual.pairings = {1};
    dual.provenance = "axiomatic-dual; pullback generator assumed primitive";
    out.witnesses.push_back(dual);
    out.spin = out.canonical[0] % 2 == 0;
    out.simply_connected = true;
    out.symplectic = true;
    out.minimal = Tri::yes;
    out.general_type = true;
    out.carries_full_canonical = true;
    out.recipe = make_recipe("pluricanonical_cover", {{"m", p.m}, {"d", p.d}}, {base.recipe});
    return out;
}

std::pair<Int, Int> phi_map(const CoverParams& p, Int e, Int c) {
    return {mul(p.m, add(e, mul(p.delta, c))), mul(mul(p.m, mul(p.d, p.d)), c)};
}

std::pair<Rational, Rational> phi_inverse(const CoverParams& p, const Rational& e_bar, const Rational& c_bar) {
    const Rational d2(p.d * p.d);
    const Rational c = c_bar / (Rational(p.m) * d2);
    const Rational e = (e_bar - Rational(p.delta) * c_bar / d2) / Rational(p.m);
    return {e, c};
}

bool phi_admissible_image(const CoverParams& p, Int e_bar, Int c_bar) {
    const Int md2 = mul(p.m, mul(p.d, p.d));
    if (mod(e_bar, p.m) != 0 || mod(c_bar, md2) != 0) return false;
    return mod(add(e_bar / p.m, mul(1 - p.delta, c_bar / md2)), 12) == 0;
}

bool persson_sector(Int e, Int c) {
    if (e <= 0 || c <= 0) return false;
    return mod(add(e, c), 12) == 0 && c >= sub(36, e) && mul(5, c) >= e - 36 && mul(2, c) <= e - 24;
}

bool persson_image_sector(const CoverParams& p, Int x, Int y) {
    if (x <= 0 || y <= 0) return false;
    const Int one_minus = sub(1, p.delta);
    return mul(y, one_minus) >= sub(36, x) && mod(add(x, mul(one_minus, y)), 12) == 0 &&
           sub(x, 36) <= mul(add(5, p.delta), y) && mul(add(2, p.delta), y) <= sub(x, 24);
}

ManifoldDescriptor persson_cover(const CoverParams& p, Int x, Int y) {
    if (p.m == 3 && p.d == 3 && mul(p.m, x) == 129 && mul(mul(p.m, 9), y) == 27)
        throw Error(ErrorCode::exceptional_point, "(129, 27) is the excluded d = 3 exceptional point");
    if (!persson_image_sector(p, x, y)) throw Error(ErrorCode::outside_persson_sector, "outside Persson sector");
    const Int e = sub(x, mul(p.delta, y));
    const Int chi = exact_div(add(e, y), 12, "Persson chi_h");
    return pluricanonical_cover(catalog("persson", {chi, y}), p);
}

ManifoldDescriptor singular_double_cover(Int n, Int m) {
    if (n < 1 || m < 1) throw Error(ErrorCode::invalid_parameter, "singular_double_cover needs n, m >= 1");
    ManifoldDescriptor out;
    out.lattice = IntersectionLattice({"F_1", "F_2"}, {{0, 2}, {2, 0}}, true);
    out.canonical = ClassVector({n - 2, m - 2});
    out.e = add(6, mul(mul(2, sub(mul(2, m), 1)), sub(mul(2, n), 1)));
    out.sigma = mul(mul(-4, m), n);
    out.spin = n % 2 == 0 && m % 2 == 0;
    out.simply_connected = true;
    out.symplectic = true;
    out.carries_full_canonical = true;
    for (std::size_t i = 0; i < 2; ++i) {
        Witness w;
        w.name = i == 0 ? "F_1*" : "F_2*";
        w.pairings = {i == 0 ? 1 : 0, i == 0 ? 0 : 1};
        w.provenance = "axiomatic-dual";
        out.witnesses.push_back(std::move(w));
    }
    out.notes.push_back("resolution of the double cover of the quadric branched over B_{n,m}");
    out.recipe = make_recipe("singular_double_cover", {{"n", n}, {"m", m}});
    return out;
}

}  // namespace symgeo
