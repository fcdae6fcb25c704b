#include "symgeo/manifold.hpp"

#include <algorithm>
#include <cctype>

namespace symgeo {

std::string_view to_string(Tri t) noexcept {
    switch (t) {
        case Tri::no: return "no";
        case Tri::yes: return "yes";
        case Tri::unknown: return "unknown";
    }
    return "unknown";
}

Int ManifoldDescriptor::c1_sq() const {
    return checked::add(checked::mul(2, e), checked::mul(3, sigma));
}

DerivedInvariants derived_invariants(const ManifoldDescriptor& m) {
    DerivedInvariants d;
    d.c1_sq = m.c1_sq();
    const Int s = checked::add(m.e, m.sigma);
    if (checked::mod(s, 4) != 0)
        throw Error(ErrorCode::not_almost_complex, "not almost-complex consistent: e + sigma = " +
                                                       std::to_string(s) + " is not divisible by 4");
    d.chi_h = s / 4;
    if (m.simply_connected) {
        d.b2 = checked::sub(m.e, 2);
        d.b2_plus = checked::add(*d.b2, m.sigma) / 2;
        d.b2_minus = *d.b2 - *d.b2_plus;
    }
    return d;
}

// ---------------------------------------------------------------------------

std::string format_class(const IntersectionLattice& lat, const ClassVector& v) {
    if (v.size() != lat.rank()) throw Error(ErrorCode::basis_mismatch, "basis mismatch");
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Int c = v[i];
        if (c == 0) continue;
        if (c < 0) out += '-';
        else if (!out.empty()) out += '+';
        const Int a = checked::abs(c);
        if (a != 1) out += std::to_string(a) + "*";
        out += lat.name(i);
    }
    return out.empty() ? "0" : out;
}

ClassVector parse_class(const IntersectionLattice& lat, std::string_view expr) {
    ClassVector v(lat.rank());
    auto bad = [&](const std::string& why) {
        throw Error(ErrorCode::parse_error, "bad class expression '" + std::string(expr) + "': " + why);
    };
    std::size_t i = 0;
    auto skip_ws = [&] { while (i < expr.size() && std::isspace(static_cast<unsigned char>(expr[i]))) ++i; };
    skip_ws();
    if (expr.substr(i) == "0") return v;
    bool first = true;
    while (true) {
        skip_ws();
        if (i >= expr.size()) {
            if (first) bad("empty");
            break;
        }
        Int sign = 1;
        if (expr[i] == '+' || expr[i] == '-') {
            sign = expr[i] == '-' ? -1 : 1;
            ++i;
            skip_ws();
        } else if (!first) {
            bad("expected '+' or '-'");
        }
        Int coeff = 1;
        std::size_t j = i;
        while (j < expr.size() && std::isdigit(static_cast<unsigned char>(expr[j]))) ++j;
        if (j > i && j < expr.size() && expr[j] == '*') {
            coeff = 0;
            for (std::size_t k = i; k < j; ++k) coeff = checked::add(checked::mul(coeff, 10), expr[k] - '0');
            i = j + 1;
        }
        std::size_t start = i;
        while (i < expr.size() && !std::isspace(static_cast<unsigned char>(expr[i])) && expr[i] != '+' &&
               expr[i] != '-' && expr[i] != '*')
            ++i;
        if (i == start) bad("missing class name");
        const std::size_t idx = lat.require_index(expr.substr(start, i - start));
        v[idx] = checked::add(v[idx], checked::mul(sign, coeff));
        first = false;
    }
    return v;
}

// ---------------------------------------------------------------------------

Int witness_pairing(const Witness& w, const ClassVector& v) {
    if (w.pairings.size() != v.size()) throw Error(ErrorCode::basis_mismatch, "basis mismatch");
    Int acc = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0 && w.pairings[i] != 0) acc = checked::add(acc, checked::mul(w.pairings[i], v[i]));
    return acc;
}

const Witness* find_witness(const ManifoldDescriptor& m, std::string_view name) {
    for (const auto& w : m.witnesses)
        if (w.name == name) return &w;
    return nullptr;
}

Witness class_witness(const IntersectionLattice& lat, std::string name, const ClassVector& v,
                      std::optional<Int> genus, std::optional<Int> self_intersection, bool symplectic,
                      std::string provenance) {
    Witness w;
    w.name = std::move(name);
    w.pairings = lat.pairing_row(v);
    w.genus = genus;
    w.self_intersection = self_intersection;
    w.symplectic = symplectic;
    w.provenance = std::move(provenance);
    return w;
}

bool canonical_is_even(const ClassVector& k) {
    return std::all_of(k.coefficients.begin(), k.coefficients.end(), [](Int c) { return c % 2 == 0; });
}

std::string fresh_stem(const IntersectionLattice& lat, std::string_view stem, std::string_view sep) {
    for (Int k = 1;; ++k) {
        std::string candidate = std::string(stem) + std::to_string(k);
        std::string head = candidate + std::string(sep);
        bool used = std::any_of(lat.basis_names().begin(), lat.basis_names().end(),
                                [&](const std::string& n) { return n.rfind(head, 0) == 0 || n == candidate; });
        if (!used) return candidate;
    }
}

ConstructionRecipe make_recipe(std::string op, std::map<std::string, ParamValue> params,
                               std::vector<ConstructionRecipe> inputs) {
    ConstructionRecipe r;
    r.operation = std::move(op);
    r.params = std::move(params);
    r.inputs = std::move(inputs);
    return r;
}

// ---------------------------------------------------------------------------

namespace {

void require(bool ok, ErrorCode code, const std::string& what) {
    if (!ok) throw Error(code, what);
}

// Lagrangian-triple nucleus blocks of E(n): (T1.i, S1.i) and (R.i, S.i),
// each [[0,1],[1,-2]].
void add_triple_blocks(LatticeBuilder& b, Int n) {
    for (Int i = 1; i < n; ++i) {
        const std::string k = std::to_string(i);
        b.add_block({"T1." + k, "S1." + k}, {0, 1, 1, -2});
        b.add_block({"R." + k, "S." + k}, {0, 1, 1, -2});
    }
}

}  // namespace

ManifoldDescriptor elliptic_surface(Int n, Int p, Int q) {
    require(n >= 1 && p >= 1 && q >= 1, ErrorCode::invalid_parameter, "elliptic_surface needs n, p, q >= 1");
    require(std::gcd(p, q) == 1, ErrorCode::multiple_fibres_not_coprime, "multiple fibres not coprime");
    const bool plain = p == 1 && q == 1;

    LatticeBuilder b;
    if (plain) b.add_block({"F", "sec"}, {0, 1, 1, checked::neg(n)});
    else b.add_block({"f"}, {0});
    add_triple_blocks(b, n);

    ManifoldDescriptor m;
    m.lattice = b.build(true);
    const Int kf = checked::sub(checked::mul(checked::mul(n, p), q), checked::add(p, q));
    m.canonical = ClassVector::unit(m.lattice.rank(), 0, kf);
    m.e = checked::mul(12, n);
    m.sigma = checked::mul(-8, n);
    m.simply_connected = true;
    m.symplectic = true;
    m.spin = n % 2 == 0 && p % 2 == 1 && q % 2 == 1;
    m.minimal = (n >= 2 || (p >= 2 && q >= 2)) ? Tri::yes : Tri::no;
    m.carries_full_canonical = true;

    const std::size_t r = m.lattice.rank();
    if (plain) {
        m.witnesses.push_back(class_witness(m.lattice, "sec", ClassVector::unit(r, 1), 0, checked::neg(n),
                                            true, "section sphere"));
    } else {
        Witness w;
        w.name = "w_f";
        w.pairings.assign(r, 0);
        w.pairings[0] = 1;
        w.genus = 0;
        w.provenance = "axiomatic-dual; multiple-fibre sphere meeting f once; assumed-disjoint from nuclei";
        m.witnesses.push_back(std::move(w));
    }
    for (Int i = 1; i < n; ++i) {
        const std::string k = std::to_string(i);
        for (const std::string& nm : {"S1." + k, "S." + k}) {
            m.witnesses.push_back(class_witness(m.lattice, nm, ClassVector::unit(r, m.lattice.require_index(nm)),
                                                0, -2, false, "nucleus sphere; assumed-disjoint elsewhere"));
        }
        m.triples.push_back({"T1." + k, "S1." + k, "R." + k, "S." + k, false});
    }
    m.recipe = make_recipe("elliptic_surface", {{"n", n}, {"p", p}, {"q", q}});
    return m;
}

ManifoldDescriptor knot_product(Int h) {
    require(h >= 0, ErrorCode::invalid_parameter, "knot_product needs h >= 0");
    ManifoldDescriptor m;
    m.lattice = IntersectionLattice({"T_K", "B_K"}, {{0, 1}, {1, 0}}, true);
    m.canonical = ClassVector::unit(2, 0, checked::sub(checked::mul(2, h), 2));
    m.symplectic = h >= 1;
    m.spin = true;
    m.carries_full_canonical = true;
    m.witnesses.push_back(class_witness(m.lattice, "T_K", ClassVector::unit(2, 0), 1, 0, m.symplectic,
                                        "section torus m x S1"));
    m.witnesses.push_back(class_witness(m.lattice, "B_K", ClassVector::unit(2, 1), h, 0, m.symplectic,
                                        "fibre of M_K x S1"));
    m.notes = {"fibre genus " + std::to_string(h), "b1 = 1"};
    m.recipe = make_recipe("knot_product", {{"h", h}});
    return m;
}

ManifoldDescriptor surface_bundle_Y(Int g, Int h) {
    require(g >= 1 && h >= 1, ErrorCode::invalid_parameter, "surface_bundle_Y needs g, h >= 1");
    LatticeBuilder b;
    const Int split = checked::mul(checked::mul(2, h), g - 1);
    for (Int i = 1; i <= split; ++i) {
        const std::string k = std::to_string(i);
        b.add_block({"Y.s" + k, "Y.r" + k}, {2, 1, 1, 0});
    }
    b.add_block({"Sigma_S", "Sigma_F"}, {0, 1, 1, 0});
    ManifoldDescriptor m;
    m.lattice = b.build(true);
    const std::size_t r = m.lattice.rank();
    m.canonical = ClassVector(r);
    m.canonical[r - 2] = checked::mul(2, h - 1);
    m.canonical[r - 1] = checked::mul(2, g - 1);
    m.e = checked::mul(4, checked::mul(g - 1, h - 1));
    m.sigma = 0;
    m.symplectic = true;
    m.spin = true;
    m.carries_full_canonical = true;
    m.witnesses.push_back(class_witness(m.lattice, "Sigma_S", ClassVector::unit(r, r - 2), g, 0, true, "section"));
    m.witnesses.push_back(class_witness(m.lattice, "Sigma_F", ClassVector::unit(r, r - 1), h, 0, true, "fibre"));
    m.notes = {"b1 = " + std::to_string(2 * g)};
    m.recipe = make_recipe("surface_bundle_Y", {{"g", g}, {"h", h}});
    return m;
}

namespace {

struct CatalogEntry {
    Int c1_sq;
    Int chi_h;
    Int d_cat;
    bool spin;
    bool genus2_fibration;
};

ManifoldDescriptor general_type_surface(const CatalogEntry& c) {
    ManifoldDescriptor m;
    const Int a_sq = checked::exact_div(c.c1_sq, checked::mul(c.d_cat, c.d_cat), "catalog generator square");
    m.lattice = IntersectionLattice({"A"}, {{a_sq}}, true);
    m.canonical = ClassVector::unit(1, 0, c.d_cat);
    m.e = checked::sub(checked::mul(12, c.chi_h), c.c1_sq);
    m.sigma = checked::sub(c.c1_sq, checked::mul(8, c.chi_h));
    m.spin = c.spin;
    m.simply_connected = true;
    m.symplectic = true;
    m.minimal = Tri::yes;
    m.general_type = true;
    m.carries_full_canonical = true;
    Witness dual;
    dual.name = "A*";
    dual.pairings = {1};
    dual.provenance = "axiomatic-dual";
    m.witnesses.push_back(dual);
    if (c.genus2_fibration) {
        Witness fibre;
        fibre.name = "genus2_fibre";
        fibre.pairings = {checked::exact_div(2, c.d_cat, "genus-2 fibre pairing")};
        fibre.genus = 2;
        fibre.self_intersection = 0;
        fibre.symplectic = true;
        fibre.provenance = "fibre of the genus-2 fibration";
        m.witnesses.push_back(fibre);
        m.notes.push_back("genus-2 fibration: divisibility in {1,2}");
    }
    m.notes.push_back("p_g = chi_h - 1 (q = 0)");
    if (c.c1_sq == 1 && c.chi_h == 1) m.notes.push_back("numerical Godeaux");
    return m;
}

void expect_params(std::string_view name, const std::vector<Int>& params, std::size_t n) {
    require(params.size() == n, ErrorCode::invalid_parameter,
            "catalog entry " + std::string(name) + " takes " + std::to_string(n) + " parameter(s)");
}

}  // namespace

ManifoldDescriptor catalog(std::string_view name, const std::vector<Int>& params) {
    ManifoldDescriptor m;
    if (name == "barlow" || name == "lee_park" || name == "enriques_k1_pg1" || name == "enriques_k2_pg1") {
        expect_params(name, params, 0);
        const Int k2 = (name == "barlow" || name == "enriques_k1_pg1") ? 1 : 2;
        const Int chi = (name == "barlow" || name == "lee_park") ? 1 : 2;
        m = general_type_surface({k2, chi, 1, false, false});
    } else if (name == "godeaux_like") {
        expect_params(name, params, 2);
        const Int k2 = params[0], pg = params[1];
        require(k2 >= 1 && pg >= 0, ErrorCode::invalid_parameter, "godeaux_like needs K^2 >= 1, p_g >= 0");
        require(k2 >= 2 * pg - 4, ErrorCode::invalid_parameter, "godeaux_like violates K^2 >= 2p_g - 4");
        require(k2 <= 9 * (pg + 1), ErrorCode::invalid_parameter, "godeaux_like violates K^2 <= 9 chi_h");
        m = general_type_surface({k2, pg + 1, 1, false, false});
    } else if (name == "horikawa_spin") {
        expect_params(name, params, 1);
        const Int r = params[0];
        require(r >= 1 && r % 2 == 1, ErrorCode::invalid_parameter, "horikawa_spin needs odd r >= 1");
        m = general_type_surface({checked::mul(8, r), checked::add(checked::mul(4, r), 3), 2, true, true});
    } else if (name == "horikawa_nonspin") {
        expect_params(name, params, 1);
        const Int s = params[0];
        require(s >= 1, ErrorCode::invalid_parameter, "horikawa_nonspin needs s >= 1");
        m = general_type_surface({checked::mul(8, s), checked::add(checked::mul(4, s), 3), 1, false, true});
    } else if (name == "persson") {
        expect_params(name, params, 2);
        const Int x = params[0], y = params[1];
        require(x >= 3 && 2 * x - 6 <= y && y <= 4 * x - 8, ErrorCode::outside_persson_sector,
                "outside Persson sector");
        m = general_type_surface({y, x, 1, false, true});
    } else if (name == "quadric") {
        expect_params(name, params, 0);
        m.lattice = IntersectionLattice({"S_1", "S_2"}, {{0, 1}, {1, 0}}, true);
        m.canonical = ClassVector({-2, -2});
        m.e = 4;
        m.sigma = 0;
        m.spin = true;
        m.simply_connected = true;
        m.symplectic = true;
        m.minimal = Tri::yes;
        m.carries_full_canonical = true;
        m.witnesses.push_back(class_witness(m.lattice, "S_1", ClassVector::unit(2, 0), 0, 0, true, "ruling"));
        m.witnesses.push_back(class_witness(m.lattice, "S_2", ClassVector::unit(2, 1), 0, 0, true, "ruling"));
    } else {
        throw Error(ErrorCode::invalid_parameter, "unknown catalog entry '" + std::string(name) + "'");
    }
    m.recipe = make_recipe("catalog", {{"name", std::string(name)}, {"params", params}});
    return m;
}

ManifoldDescriptor declare_witness(const ManifoldDescriptor& m, std::string name, const ClassVector& cls,
                                   std::optional<Int> genus, std::optional<Int> self_intersection,
                                   bool symplectic) {
    require(find_witness(m, name) == nullptr, ErrorCode::name_collision, "witness '" + name + "' already exists");
    ManifoldDescriptor out = m;
    std::map<std::string, ParamValue> params{{"name", name},
                                             {"class", format_class(m.lattice, cls)},
                                             {"symplectic", Int{symplectic ? 1 : 0}}};
    if (genus) params["genus"] = *genus;
    if (self_intersection) params["self"] = *self_intersection;
    out.witnesses.push_back(
        class_witness(m.lattice, std::move(name), cls, genus, self_intersection, symplectic, "declared class"));
    out.recipe = make_recipe("declare_witness", std::move(params), {m.recipe});
    return out;
}

}  // namespace symgeo
