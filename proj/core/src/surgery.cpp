#include "symgeo/surgery.hpp"

#include <algorithm>

namespace symgeo {

std::string_view to_string(Sign s) noexcept { return s == Sign::plus ? "+" : "-"; }

Sign parse_sign(std::string_view s) {
    if (s == "+") return Sign::plus;
    if (s == "-") return Sign::minus;
    throw Error(ErrorCode::invalid_parameter, "sign must be '+' or '-'");
}

SurfaceRef surface(const ManifoldDescriptor& m, std::string_view expr, Int genus, bool complement_simply_connected) {
    SurfaceRef s;
    s.cls = parse_class(m.lattice, expr);
    s.genus = genus;
    s.self_intersection = 0;
    s.complement_simply_connected = complement_simply_connected;
    return s;
}

ClassVector negate_structure(const ClassVector& k) { return -k; }

namespace {

void check_square_zero(const ManifoldDescriptor& m, const SurfaceRef& s) {
    if (s.cls.size() != m.lattice.rank()) throw Error(ErrorCode::basis_mismatch, "basis mismatch");
    if (s.genus < 0) throw Error(ErrorCode::invalid_parameter, "negative genus");
    if (s.self_intersection != 0)
        throw Error(ErrorCode::nonzero_self_intersection, "surface must have self-intersection 0");
    if (pairing(m.lattice, s.cls, s.cls) != 0)
        throw Error(ErrorCode::nonzero_self_intersection, "surface class has nonzero square in the lattice");
    if (coefficient_gcd(s.cls) != 1) throw Error(ErrorCode::divisible_class, "surface class is divisible");
}

std::optional<std::size_t> unit_index(const ClassVector& v) {
    std::optional<std::size_t> idx;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0) continue;
        if (v[i] != 1 || idx) return std::nullopt;
        idx = i;
    }
    return idx;
}

void mark_triples_touching(ManifoldDescriptor& m, const ClassVector& cls) {
    auto idx = unit_index(cls);
    if (!idx) return;
    const std::string& nm = m.lattice.name(*idx);
    for (auto& t : m.triples)
        if (t.t1 == nm || t.r == nm) t.used = true;
}

// Witness genus after sewing a genus-h surface into every transverse point.
void update_witness_genera(std::vector<Witness>& ws, const ClassVector& cls, Int h, bool positive) {
    if (h == 0) return;
    for (auto& w : ws) {
        const Int p = witness_pairing(w, cls);
        if (p == 0) continue;
        if (positive && p == 1 && w.genus) {
            w.genus = checked::add(*w.genus, h);
        } else if (w.genus) {
            w.genus.reset();
            w.provenance += "; genus unknown after surgery";
        }
    }
}

std::map<std::string, ParamValue> surface_params(const IntersectionLattice& lat, const SurfaceRef& s) {
    return {{"surface", format_class(lat, s.cls)},
            {"genus", s.genus},
            {"complement_sc", Int{s.complement_simply_connected ? 1 : 0}}};
}

bool infer_spin(const ManifoldDescriptor& m, bool fallback) {
    if (!m.symplectic) return fallback;
    return m.lattice.primitive_summand() && canonical_is_even(m.canonical);
}

struct GluingSide {
    std::size_t surface;  // basis index of the square-zero class
    std::size_t dual;     // its partner in a [[0,1],[1,b]] block
    Int dual_square;
};

GluingSide gluing_side(const ManifoldDescriptor& m, const SurfaceRef& s) {
    auto idx = unit_index(s.cls);
    if (!idx) throw Error(ErrorCode::precondition, "fibre sum surface must be a basis class");
    const auto& block = m.lattice.block_of(*idx);
    if (block.members.size() != 2)
        throw Error(ErrorCode::precondition, "fibre sum surface needs a rank-2 block with its dual");
    const std::size_t other = block.members[0] == *idx ? block.members[1] : block.members[0];
    if (m.lattice.entry(*idx, other) != 1)
        throw Error(ErrorCode::precondition, "fibre sum surface must pair 1 with its dual");
    return {*idx, other, m.lattice.entry(other, other)};
}

}  // namespace

ManifoldDescriptor fibre_sum(const ManifoldDescriptor& m, const SurfaceRef& sm, const ManifoldDescriptor& n,
                             const SurfaceRef& sn, const FibreSumOptions& options) {
    if (sm.genus != sn.genus) throw Error(ErrorCode::genus_mismatch, "fibre sum surfaces have different genus");
    check_square_zero(m, sm);
    check_square_zero(n, sn);
    const Int g = sm.genus;
    const GluingSide L = gluing_side(m, sm);
    const GluingSide Rt = gluing_side(n, sn);
    const std::string prefix =
        options.right_prefix.empty() ? fresh_stem(m.lattice, "s", ".") + "." : options.right_prefix;

    LatticeBuilder b;
    std::vector<std::optional<std::size_t>> map_m, map_n;

    // The gluing block on each side is replaced by span(Sigma_X, B_X).
    auto block_position = [](const IntersectionLattice& lat, std::size_t i) {
        const auto& blocks = lat.blocks();
        for (std::size_t k = 0; k < blocks.size(); ++k)
            if (std::find(blocks[k].members.begin(), blocks[k].members.end(), i) != blocks[k].members.end()) return k;
        return blocks.size();
    };
    b.add_lattice_except(m.lattice, {block_position(m.lattice, L.surface)}, "", map_m);
    const std::size_t sigma_x = b.size();
    const std::size_t b_x = sigma_x + 1;
    b.add_block({m.lattice.name(L.surface), m.lattice.name(L.dual)},
                {0, 1, 1, checked::add(L.dual_square, Rt.dual_square)});
    b.add_lattice_except(n.lattice, {block_position(n.lattice, Rt.surface)}, prefix, map_n);

    std::string rim;
    if (!options.no_rim_tori) {
        rim = fresh_stem(m.lattice, "rim", ".");
        for (Int j = 1; j <= 2 * g; ++j) {
            const std::string k = std::to_string(j);
            b.add_block({rim + ".t" + k, rim + ".d" + k}, {0, 1, 1, options.rim_dual_square});
        }
    }
    if (options.declare_rim_triple && (options.no_rim_tori || g != 1 || options.rim_dual_square != -2))
        throw Error(ErrorCode::precondition, "rim triple needs g = 1 rim tori with dual spheres of square -2");

    ManifoldDescriptor out;
    out.lattice = b.build(m.lattice.primitive_summand() && n.lattice.primitive_summand());
    const std::size_t rank = out.lattice.rank();

    auto target = [&](const std::vector<std::optional<std::size_t>>& map, const GluingSide& side,
                      std::size_t i) -> std::size_t {
        if (i == side.surface) return sigma_x;
        if (i == side.dual) return b_x;
        return *map[i];
    };
    auto embed = [&](const ClassVector& v, const std::vector<std::optional<std::size_t>>& map,
                     const GluingSide& side) {
        ClassVector r(rank);
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i] != 0) r[target(map, side, i)] = checked::add(r[target(map, side, i)], v[i]);
        return r;
    };

    out.canonical = embed(m.canonical, map_m, L) + embed(n.canonical, map_n, Rt);
    out.canonical[b_x] = checked::sub(out.canonical[b_x], checked::sub(checked::mul(2, g), 2));
    out.canonical[sigma_x] = checked::add(out.canonical[sigma_x], 2);

    out.e = checked::add(checked::add(m.e, n.e), checked::sub(checked::mul(4, g), 4));
    out.sigma = checked::add(m.sigma, n.sigma);
    out.simply_connected = m.simply_connected && n.simply_connected;
    out.symplectic = m.symplectic && n.symplectic;
    out.carries_full_canonical = m.carries_full_canonical && n.carries_full_canonical;
    out.spin = infer_spin(out, m.spin && n.spin);

    auto carry_witnesses = [&](const ManifoldDescriptor& src, const std::vector<std::optional<std::size_t>>& map,
                               const GluingSide& side, const std::string& name_prefix) {
        const std::string& dual_name = src.lattice.name(side.dual);
        for (const auto& w : src.witnesses) {
            if (w.name == dual_name) continue;
            if (w.pairings.at(side.surface) != 0) {
                out.notes.push_back("witness " + name_prefix + w.name + " dropped: meets the gluing surface");
                continue;
            }
            Witness nw = w;
            nw.name = name_prefix + w.name;
            nw.pairings.assign(rank, 0);
            for (std::size_t i = 0; i < w.pairings.size(); ++i) nw.pairings[target(map, side, i)] = w.pairings[i];
            out.witnesses.push_back(std::move(nw));
        }
    };
    carry_witnesses(m, map_m, L, "");
    carry_witnesses(n, map_n, Rt, prefix);

    // The two duals sew into B_X.
    const Witness* bm = find_witness(m, m.lattice.name(L.dual));
    const Witness* bn = find_witness(n, n.lattice.name(Rt.dual));
    if (bm && bn && bm->genus && bn->genus && bm->self_intersection && bn->self_intersection) {
        out.witnesses.push_back(class_witness(out.lattice, m.lattice.name(L.dual), ClassVector::unit(rank, b_x),
                                              checked::add(*bm->genus, *bn->genus),
                                              checked::add(*bm->self_intersection, *bn->self_intersection),
                                              bm->symplectic && bn->symplectic, "sewn dual B_X"));
    }

    out.triples = m.triples;
    for (auto t : n.triples) {
        t.t1 = prefix + t.t1;
        t.s1 = prefix + t.s1;
        t.r = prefix + t.r;
        t.s = prefix + t.s;
        out.triples.push_back(std::move(t));
    }
    {
        // Triples whose torus was a gluing surface are consumed.
        const std::string& sname = m.lattice.name(L.surface);
        const std::string nname = prefix + n.lattice.name(Rt.surface);
        for (auto& t : out.triples)
            if (t.t1 == sname || t.r == sname || t.t1 == nname || t.r == nname) t.used = true;
    }
    if (!options.no_rim_tori) {
        out.notes.push_back("rim tori modeled as " + std::to_string(2 * g) + " blocks [[0,1],[1," +
                            std::to_string(options.rim_dual_square) + "]]");
        if (options.declare_rim_triple) {
            for (const std::string& d : {rim + ".d1", rim + ".d2"})
                out.witnesses.push_back(class_witness(out.lattice, d, ClassVector::unit(rank, out.lattice.require_index(d)),
                                                      0, -2, false, "vanishing sphere dual to rim torus"));
            out.triples.push_back({rim + ".t1", rim + ".d1", rim + ".t2", rim + ".d2", false});
        }
    } else {
        out.notes.push_back("no rim tori (caller-asserted)");
    }

    std::map<std::string, ParamValue> params{{"surface_m", format_class(m.lattice, sm.cls)},
                                             {"surface_n", format_class(n.lattice, sn.cls)},
                                             {"genus", g},
                                             {"no_rim_tori", Int{options.no_rim_tori ? 1 : 0}},
                                             {"rim_dual_square", options.rim_dual_square},
                                             {"declare_rim_triple", Int{options.declare_rim_triple ? 1 : 0}},
                                             {"right_prefix", options.right_prefix}};
    out.recipe = make_recipe("fibre_sum", std::move(params), {m.recipe, n.recipe});
    return out;
}

ManifoldDescriptor knot_surgery(const ManifoldDescriptor& x, const SurfaceRef& t, Int h, Sign sign) {
    if (t.genus != 1) throw Error(ErrorCode::not_torus, "knot surgery needs a torus (genus 1)");
    check_square_zero(x, t);
    if (h < 0) throw Error(ErrorCode::invalid_parameter, "knot genus must be >= 0");

    ManifoldDescriptor out = x;
    const Int shift = checked::mul(sign == Sign::plus ? 2 : -2, h);
    out.canonical = x.canonical + shift * t.cls;
    out.simply_connected = x.simply_connected && t.complement_simply_connected;
    if (h > 0) {
        out.minimal = Tri::unknown;
        update_witness_genera(out.witnesses, t.cls, h, sign == Sign::plus);
        mark_triples_touching(out, t.cls);
    }
    auto params = surface_params(x.lattice, t);
    params["h"] = h;
    params["sign"] = std::string(to_string(sign));
    out.recipe = make_recipe("knot_surgery", std::move(params), {x.recipe});
    return out;
}

ManifoldDescriptor generalized_knot_surgery(const ManifoldDescriptor& m, const SurfaceRef& s, Int h) {
    if (s.genus <= 1) throw Error(ErrorCode::use_knot_surgery, "genus <= 1: use knot_surgery");
    if (h < 1) throw Error(ErrorCode::invalid_parameter, "generalized knot surgery needs h >= 1");
    check_square_zero(m, s);
    if (!m.simply_connected || !s.complement_simply_connected)
        throw Error(ErrorCode::precondition, "generalized knot surgery needs a simply-connected complement");

    const Int g = s.genus;
    const Int blocks = checked::mul(checked::mul(2, h), g - 1);
    const std::string stem = fresh_stem(m.lattice, "Y", ".");
    LatticeBuilder b;
    b.add_lattice(m.lattice);
    for (Int i = 1; i <= blocks; ++i) {
        const std::string k = std::to_string(i);
        b.add_block({stem + ".s" + k, stem + ".r" + k}, {2, 1, 1, 0});
    }

    ManifoldDescriptor out = m;
    out.lattice = b.build(m.lattice.primitive_summand());
    const std::size_t rank = out.lattice.rank();
    const ClassVector sigma = s.cls.extended(rank);
    out.canonical = m.canonical.extended(rank) + checked::mul(2, h) * sigma;
    out.e = checked::add(m.e, checked::mul(4, checked::mul(h, g - 1)));
    out.minimal = Tri::unknown;
    for (auto& w : out.witnesses) w.pairings.resize(rank, 0);
    update_witness_genera(out.witnesses, sigma, h, true);
    mark_triples_touching(out, sigma);

    auto params = surface_params(m.lattice, s);
    params["h"] = h;
    out.recipe = make_recipe("generalized_knot_surgery", std::move(params), {m.recipe});
    return out;
}

ManifoldDescriptor log_transform(const ManifoldDescriptor& x, Int p) {
    const auto& r = x.recipe;
    auto param = [&](const char* k) -> Int {
        auto it = r.params.find(k);
        if (it == r.params.end() || !std::holds_alternative<Int>(it->second)) return 0;
        return std::get<Int>(it->second);
    };
    if (r.operation != "elliptic_surface" || param("p") != 1 || param("q") != 1)
        throw Error(ErrorCode::not_elliptic, "log_transform needs an unsurgered E(n)");
    if (p < 1) throw Error(ErrorCode::invalid_parameter, "log_transform needs p >= 1");
    if (p == 1) return x;
    ManifoldDescriptor out = elliptic_surface(param("n"), p, 1);
    out.recipe = make_recipe("log_transform", {{"p", p}}, {x.recipe});
    return out;
}

ManifoldDescriptor blow_up(const ManifoldDescriptor& m) {
    std::string name;
    for (Int k = 1;; ++k) {
        name = "E" + std::to_string(k);
        if (!m.lattice.index_of(name)) break;
    }
    LatticeBuilder b;
    b.add_lattice(m.lattice);
    b.add_block({name}, {-1});
    ManifoldDescriptor out = m;
    out.lattice = b.build(m.lattice.primitive_summand());
    const std::size_t rank = out.lattice.rank();
    out.canonical = m.canonical.extended(rank);
    out.canonical[rank - 1] = 1;
    out.e = checked::add(m.e, 1);
    out.sigma = checked::sub(m.sigma, 1);
    out.minimal = Tri::no;
    out.spin = false;
    for (auto& w : out.witnesses) w.pairings.resize(rank, 0);
    out.witnesses.push_back(class_witness(out.lattice, name, ClassVector::unit(rank, rank - 1), 0, -1, true,
                                          "exceptional sphere"));
    out.recipe = make_recipe("blow_up", {}, {m.recipe});
    return out;
}

ManifoldDescriptor blow_down(const ManifoldDescriptor& m) {
    std::optional<std::size_t> idx;
    for (std::size_t i = 0; i < m.lattice.rank(); ++i) {
        const std::string& nm = m.lattice.name(i);
        if (nm.size() > 1 && nm[0] == 'E' && nm.find_first_not_of("0123456789", 1) == std::string::npos &&
            m.lattice.block_of(i).members.size() == 1 && m.lattice.entry(i, i) == -1 && m.canonical[i] == 1)
            idx = i;
    }
    if (!idx) throw Error(ErrorCode::precondition, "no exceptional class to blow down");
    const std::string name = m.lattice.name(*idx);

    ManifoldDescriptor out = m;
    out.lattice = m.lattice.without_singleton(*idx);
    auto drop = [&](std::vector<Int> v) {
        v.erase(v.begin() + static_cast<std::ptrdiff_t>(*idx));
        return v;
    };
    out.canonical = ClassVector(drop(m.canonical.coefficients));
    out.witnesses.clear();
    for (const auto& w : m.witnesses) {
        if (w.name == name) continue;
        Witness nw = w;
        nw.pairings = drop(w.pairings);
        out.witnesses.push_back(std::move(nw));
    }
    out.e = checked::sub(m.e, 1);
    out.sigma = checked::add(m.sigma, 1);
    out.minimal = Tri::unknown;
    out.spin = infer_spin(out, m.spin);
    out.recipe = make_recipe("blow_down", {}, {m.recipe});
    return out;
}

ManifoldDescriptor lagrangian_triple_surgery(const ManifoldDescriptor& m, std::size_t triple_index, Int a, Int em,
                                             Int h1, Int h2, Sign sign) {
    if (triple_index < 1 || triple_index > m.triples.size() || m.triples[triple_index - 1].used)
        throw Error(ErrorCode::undeclared_triple, "Lagrangian triple " + std::to_string(triple_index) +
                                                      " is not declared or already used");
    if (a < 1 || em < 1 || h1 < 0 || h2 < 0)
        throw Error(ErrorCode::invalid_parameter, "triple surgery needs a, em >= 1 and h1, h2 >= 0");
    const LagrangianTriple tri = m.triples[triple_index - 1];
    const auto& lat = m.lattice;
    const std::size_t t1 = lat.require_index(tri.t1), s1 = lat.require_index(tri.s1);
    const std::size_t r = lat.require_index(tri.r), s = lat.require_index(tri.s);
    if (lat.entry(t1, t1) != 0 || lat.entry(r, r) != 0 || lat.entry(t1, r) != 0 || lat.entry(t1, s1) != 1 ||
        lat.entry(r, s) != 1 || lat.entry(t1, s) != 0 || lat.entry(r, s1) != 0)
        throw Error(ErrorCode::undeclared_triple, "declared triple has inconsistent intersection data");

    // Fibre sum with E(em) along R: the g = 1 formula gives K_M + em R.
    const ManifoldDescriptor e_em = elliptic_surface(em, 1, 1);
    SurfaceRef rr{ClassVector::unit(lat.rank(), r), 1, 0, Sign::plus, true};
    SurfaceRef ff{ClassVector::unit(e_em.lattice.rank(), 0), 1, 0, Sign::plus, true};
    ManifoldDescriptor x = fibre_sum(m, rr, e_em, ff, FibreSumOptions{});
    x.notes.back() = "rim tori do not contribute (E(" + std::to_string(em) + ") summed along " + tri.r + ")";

    const std::size_t rank = x.lattice.rank();
    const std::size_t xt1 = x.lattice.require_index(tri.t1), xr = x.lattice.require_index(tri.r);
    const std::size_t xs1 = x.lattice.require_index(tri.s1), xs = x.lattice.require_index(tri.s);
    const ClassVector T1 = ClassVector::unit(rank, xt1);
    const ClassVector T2 = ClassVector::unit(rank, xr) - a * T1;

    x = knot_surgery(x, SurfaceRef{T1, 1, 0, sign, true}, h1, sign);
    x = knot_surgery(x, SurfaceRef{T2, 1, 0, Sign::plus, true}, h2, Sign::plus);

    const std::string k = std::to_string(triple_index);
    for (auto& w : x.witnesses) {
        if (w.name == tri.s) {
            w.name = "C2." + k;
            w.provenance = "C2: dual sphere S_2 sewn with a Seifert surface (C2.T2 = 1, C2.T1 = 0)";
        }
    }
    const ClassVector c1 = a * ClassVector::unit(rank, xs) + ClassVector::unit(rank, xs1);
    x.witnesses.push_back(class_witness(x.lattice, "C1." + k, c1, std::nullopt, std::nullopt, false,
                                        "C1: a*S + S1 (C1.T1 = 1, C1.T2 = 0); assumed-disjoint elsewhere"));
    x.triples[triple_index - 1].used = true;
    x.notes.insert(x.notes.begin(), m.notes.begin(), m.notes.end());

    x.recipe = make_recipe("lagrangian_triple_surgery",
                           {{"triple", static_cast<Int>(triple_index)},
                            {"a", a},
                            {"em", em},
                            {"h1", h1},
                            {"h2", h2},
                            {"sign", std::string(to_string(sign))}},
                           {m.recipe});
    return x;
}

}  // namespace symgeo
