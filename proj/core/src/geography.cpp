#include "symgeo/geography.hpp"

#include <algorithm>

namespace symgeo {

using namespace checked;

namespace {

Int odd_part(Int x) {
    if (x == 0) return 0;
    while (x % 2 == 0) x /= 2;
    return x;
}

void require(bool ok, const std::string& what) {
    if (!ok) throw Error(ErrorCode::invalid_parameter, what);
}

void annotate(ManifoldDescriptor& m, std::string note) { m.recipe.notes.push_back(std::move(note)); }

std::string args(std::initializer_list<std::pair<const char*, Int>> kv) {
    std::string s;
    for (const auto& [k, v] : kv) s += (s.empty() ? "" : ",") + std::string(k) + "=" + std::to_string(v);
    return s;
}

}  // namespace

// ---------------------------------------------------------------------------

DivisibilityCertificate divisibility(const ManifoldDescriptor& m) {
    DivisibilityCertificate c;
    if (m.canonical.size() != m.lattice.rank() || m.lattice.rank() == 0) {
        c.parity_note = "canonical class not tracked";
        return c;
    }
    c.lower = coefficient_gcd(m.canonical);
    for (const auto& w : m.witnesses) c.upper = gcd(c.upper, witness_pairing(w, m.canonical));
    if (m.spin) {
        c.parity_note = "spin: divisibility even when K != 0";
    } else if (m.simply_connected && m.symplectic) {
        c.upper = odd_part(c.upper);
        c.parity_note = "non-spin: 2 does not divide K, odd part taken";
    } else {
        c.parity_note = "no parity constraint";
    }
    c.certified = c.lower == c.upper;
    return c;
}

bool ValidationReport::ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

const ValidationCheck* ValidationReport::find(std::string_view name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

ValidationReport validate(const ManifoldDescriptor& m) {
    ValidationReport r;
    auto add_check = [&](std::string name, bool applies, bool passed, std::string detail) {
        r.checks.push_back({std::move(name), !applies || passed, applies ? std::move(detail) : "n/a"});
    };
    const Int c1 = m.c1_sq();
    const Int es = add(m.e, m.sigma);
    const bool ac = m.symplectic;

    add_check("c1sq_mod8", ac, mod(sub(c1, m.sigma), 8) == 0,
              "c1^2 = " + std::to_string(c1) + ", sigma = " + std::to_string(m.sigma));
    add_check("chi_h_integral", ac, mod(es, 4) == 0, "e + sigma = " + std::to_string(es));
    add_check("noether", ac, mod(add(c1, m.e), 12) == 0, "c1^2 + e = " + std::to_string(add(c1, m.e)));
    {
        const bool applies = ac && m.simply_connected && mod(es, 4) == 0;
        const Int b2p = applies ? (m.e - 2 + m.sigma) / 2 : 0;
        add_check("b2_plus_odd", applies, mod(b2p, 2) == 1, "b2+ = " + std::to_string(b2p));
    }
    add_check("rochlin", m.spin, mod(m.sigma, 16) == 0, "sigma = " + std::to_string(m.sigma));

    const DivisibilityCertificate cert = divisibility(m);
    {
        const bool k_nonzero = cert.lower != 0;
        const bool applies = cert.certified && k_nonzero && (m.spin || (m.simply_connected && ac));
        const bool ok = m.spin ? cert.value() % 2 == 0 : cert.value() % 2 == 1;
        add_check("canonical_parity", applies, ok,
                  std::string(m.spin ? "spin" : "non-spin") + ", divisibility " + std::to_string(cert.value()));
    }
    {
        const Int d = cert.lower;
        const bool applies = ac && d > 0;
        bool ok = applies && divides(mul(d, d), c1);
        if (applies && d % 2 == 0) ok = ok && divides(mul(2, mul(d, d)), c1);
        add_check("lemma1_divisibility", applies, ok,
                  "d = " + std::to_string(d) + ", c1^2 = " + std::to_string(c1));
    }
    {
        const Int d = odd_part(cert.lower);
        const bool applies = ac && m.simply_connected && d > 0 && mod(m.sigma, 8) == 0;
        add_check("lemma_div8", applies, applies && divides(mul(8, mul(d, d)), c1),
                  "odd d = " + std::to_string(d) + ", c1^2 = " + std::to_string(c1));
    }
    {
        std::string bad;
        bool any = false;
        for (const auto& w : m.witnesses) {
            if (!w.genus || !w.self_intersection) continue;
            any = true;
            const Int lhs = sub(mul(2, *w.genus), 2);
            const Int rhs = add(witness_pairing(w, m.canonical), *w.self_intersection);
            if (lhs != rhs) bad += (bad.empty() ? "" : "; ") + w.name + ": " + std::to_string(lhs) + " != " +
                                   std::to_string(rhs);
        }
        add_check("adjunction", any && ac, bad.empty(), bad.empty() ? "all genus-declared witnesses" : bad);
    }
    {
        const Int d = cert.lower;
        std::string bad;
        if (m.minimal == Tri::no && d > 1) bad = "non-minimal but K divisible by " + std::to_string(d);
        for (const auto& w : m.witnesses) {
            if (!w.symplectic || !w.genus || w.self_intersection != Int{0} || d == 0) continue;
            if (!divides(d, sub(mul(2, *w.genus), 2)))
                bad += (bad.empty() ? "" : "; ") + w.name + ": " + std::to_string(d) + " does not divide 2g-2";
        }
        add_check("lemma2_genus", ac, bad.empty(), bad.empty() ? "d = " + std::to_string(d) : bad);
    }
    {
        const bool applies = m.carries_full_canonical && m.canonical.size() == m.lattice.rank();
        const Int kk = applies ? pairing(m.lattice, m.canonical, m.canonical) : 0;
        add_check("canonical_square", applies, kk == c1,
                  "K.K = " + std::to_string(kk) + ", 2e+3sigma = " + std::to_string(c1));
    }
    return r;
}

// ---------------------------------------------------------------------------

namespace {

ManifoldDescriptor knot_on(const ManifoldDescriptor& x, std::string_view cls, Int h) {
    return knot_surgery(x, surface(x, cls, 1), h, Sign::plus);
}

// The knot-surgery realization of each parity branch.
ManifoldDescriptor elliptic_knot_branch(Int n, Int d) {
    if (n == 1) {
        const Int k = (d - 1) / 2;
        return knot_on(elliptic_surface(1), "F", k + 1);
    }
    if (n % 2 == 0 && d % 2 == 0) {
        const Int m = n / 2, k = d / 2;
        ManifoldDescriptor x = knot_on(elliptic_surface(n), "F", add(mul(m, k - 1), 1));
        return knot_on(x, "R.1", k);
    }
    if (n % 2 == 1) {
        const Int m = (n - 1) / 2, k = (d - 1) / 2;
        ManifoldDescriptor x = knot_on(elliptic_surface(n), "F", add(add(mul(mul(2, k), m), k), 1));
        return knot_on(x, "R.1", add(mul(2, k), 1));
    }
    const Int m = n / 2, k = (d - 1) / 2;
    ManifoldDescriptor x = knot_on(log_transform(elliptic_surface(n), 2), "f", add(add(mul(mul(4, k), m), k), 2));
    return knot_on(x, "R.1", add(mul(2, k), 1));
}

void check_homotopy_elliptic(Int n, Int d) {
    require(n >= 1 && d >= 1, "homotopy_elliptic needs n, d >= 1");
    if (n % 2 == 1 && d % 2 == 0)
        throw Error(ErrorCode::spin_parity_obstruction,
                    "spin parity obstruction: chi_h odd forces odd divisibility");
}

// Sigma = S.1 + R.1 with the given genus, then Y_{g,h} surgery along it.
ManifoldDescriptor surgery_along_sigma(ManifoldDescriptor x, Int genus, Int h) {
    const ClassVector sigma = parse_class(x.lattice, "S.1+R.1");
    x = declare_witness(x, "Sigma_M", sigma, genus, 0, true);
    SurfaceRef s{sigma, genus, 0, Sign::plus, true};
    return generalized_knot_surgery(x, s, h);
}

}  // namespace

ManifoldDescriptor homotopy_elliptic(Int n, Int d) {
    check_homotopy_elliptic(n, d);
    ManifoldDescriptor out;
    if (n == 1) {
        out = elliptic_surface(1, add(d, 2), 2);
        annotate(out, "alternative: knot surgery of genus " + std::to_string((d + 1) / 2) + " along F in E(1)");
    } else if (n == 2) {
        out = elliptic_surface(2, add(d, 1), 1);
        annotate(out, "alternative: knot surgeries along F and R.1 in E(2)");
    } else {
        out = elliptic_knot_branch(n, d);
    }
    annotate(out, "homotopy_elliptic(" + args({{"n", n}, {"d", d}}) + ")");
    return out;
}

ManifoldDescriptor spin_surface(Int d, Int m, Int t) {
    require(d >= 2 && d % 2 == 0, "spin_surface needs even d >= 2");
    require(m >= 1 && t >= 1, "spin_surface needs m, t >= 1");
    const Int k = d / 2;
    ManifoldDescriptor out = surgery_along_sigma(elliptic_knot_branch(mul(2, m), d), k + 1, mul(t, k));
    annotate(out, "spin_surface(" + args({{"d", d}, {"m", m}, {"t", t}}) + ")");
    return out;
}

ManifoldDescriptor nonspin_surface(Int d, Int n, Int t) {
    require(d >= 1 && d % 2 == 1, "nonspin_surface needs odd d >= 1");
    require(n >= 2 && t >= 1, "nonspin_surface needs n >= 2, t >= 1");
    ManifoldDescriptor out = surgery_along_sigma(elliptic_knot_branch(n, d), d + 1, mul(t, d));
    annotate(out, "nonspin_surface(" + args({{"d", d}, {"n", n}, {"t", t}}) + ")");
    return out;
}

ManifoldDescriptor negative_c1(Int n, Int r) {
    require(n >= 1 && r >= 1, "negative_c1 needs n, r >= 1");
    ManifoldDescriptor out = elliptic_surface(n);
    for (Int i = 0; i < r; ++i) out = blow_up(out);
    annotate(out, "negative_c1(" + args({{"n", n}, {"r", r}}) + ")");
    return out;
}

// ---------------------------------------------------------------------------

std::string_view to_string(Regime r) noexcept {
    switch (r) {
        case Regime::c1sq_zero: return "c1sq_zero";
        case Regime::spin_positive: return "spin_positive";
        case Regime::nonspin_positive: return "nonspin_positive";
    }
    return "c1sq_zero";
}

Regime parse_regime(std::string_view s) {
    if (s == "c1sq_zero") return Regime::c1sq_zero;
    if (s == "spin_positive") return Regime::spin_positive;
    if (s == "nonspin_positive") return Regime::nonspin_positive;
    throw Error(ErrorCode::invalid_parameter, "unknown regime '" + std::string(s) + "'");
}

std::set<Int> FamilyResult::certified_divisibilities() const {
    std::set<Int> out;
    for (const auto& c : certificates)
        if (c.certified) out.insert(c.value());
    return out;
}

namespace {

struct TripleParams {
    Int a, h1, h2;
};

TripleParams triple_params(Int d, Int di) {
    if (d % 2 == 1) return {d + di, (d - di) / 2, (d - 1) / 2};
    const Int k = d / 2, ki = di / 2;
    if (d % 4 == 0 && di % 4 != 0) return {(k + 2 * ki) / 2, (k - 2 * ki) / 2, k - 1};
    return {(k + ki) / 2, (k - ki) / 2, k - 1};
}

}  // namespace

ManifoldDescriptor family_member(const FamilyRequest& rq, std::uint64_t minus_mask) {
    validate_divisor_list(rq.d, rq.divisors);
    const Int d = rq.d;
    const Int N = static_cast<Int>(rq.divisors.size()) - 1;
    require(N >= 1 && N <= 10, "inequivalent_family needs 1 <= N <= 10");

    ManifoldDescriptor x;
    Int l = 0;
    Int em = d % 2 == 1 ? 1 : 2;
    switch (rq.regime) {
        case Regime::c1sq_zero:
            if (d % 2 == 1) {
                require(rq.n >= 2 * N + 1, "elliptic family theorem requires n >= 2N+1 for odd d");
                l = rq.n - N;
            } else {
                require(rq.n % 2 == 0 && rq.n >= 3 * N + 1,
                        "elliptic family theorem requires even n >= 3N+1 for even d");
                l = rq.n - 2 * N;
            }
            x = elliptic_surface(l);
            break;
        case Regime::spin_positive:
            require(d % 2 == 0, "spin_positive family needs even d");
            require(2 * rq.m >= 3 * N + 2, "positive even-d family theorem requires 2m >= 3N+2");
            l = 2 * rq.m - 2 * N;
            x = spin_surface(d, l / 2, rq.t);
            break;
        case Regime::nonspin_positive:
            require(d % 2 == 1 && d >= 3, "nonspin_positive family needs odd d >= 3");
            require(rq.m >= 2 * N + 2, "positive odd-d family theorem requires m >= 2N+2");
            l = rq.m - N;
            x = nonspin_surface(d, l, rq.t);
            break;
    }

    for (Int i = 1; i <= N; ++i) {
        std::size_t slot = 0;
        for (std::size_t j = 0; j < x.triples.size(); ++j)
            if (!x.triples[j].used) {
                slot = j + 1;
                break;
            }
        require(slot != 0, "no unused Lagrangian triple left");
        const TripleParams tp = triple_params(d, rq.divisors[static_cast<std::size_t>(i)]);
        const Sign sign = (minus_mask >> (i - 1)) & 1 ? Sign::minus : Sign::plus;
        x = lagrangian_triple_surgery(x, slot, tp.a, em, tp.h1, tp.h2, sign);
    }
    if (rq.regime == Regime::c1sq_zero) x = knot_on(x, "F", (l * (d - 1) + 2) / 2);

    std::string divs;
    for (Int v : rq.divisors) divs += (divs.empty() ? "" : ",") + std::to_string(v);
    annotate(x, "inequivalent_family(d=" + std::to_string(d) + ",divisors=" + divs + ",regime=" +
                    std::string(to_string(rq.regime)) + ",n=" + std::to_string(rq.n) + ",m=" +
                    std::to_string(rq.m) + ",t=" + std::to_string(rq.t) + ",minus_mask=" +
                    std::to_string(minus_mask) + ")");
    return x;
}

FamilyResult inequivalent_family(const FamilyRequest& rq) {
    FamilyResult out;
    out.q = q_set(rq.d, rq.divisors);
    const std::size_t N = rq.divisors.size() - 1;
    require(N >= 1 && N <= 10, "inequivalent_family needs 1 <= N <= 10");
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << N); ++mask) {
        out.members.push_back(family_member(rq, mask));
        out.canonicals.push_back(out.members.back().canonical);
        out.certificates.push_back(divisibility(out.members.back()));
    }
    return out;
}

}  // namespace symgeo
