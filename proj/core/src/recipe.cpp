#include "symgeo/recipe.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "symgeo/coverings.hpp"
#include "symgeo/surgery.hpp"

namespace symgeo {

namespace {

constexpr int kMaxDepth = 256;

class ParamReader {
public:
    explicit ParamReader(const ConstructionRecipe& r) : r_(r) {}

    Int integer(const std::string& key) { return get<Int>(key, "integer"); }
    std::string text(const std::string& key) { return get<std::string>(key, "string"); }
    std::vector<Int> list(const std::string& key) { return get<std::vector<Int>>(key, "integer list"); }
    bool flag(const std::string& key) {
        const Int v = integer(key);
        if (v != 0 && v != 1) fail("parameter '" + key + "' must be 0 or 1");
        return v == 1;
    }
    std::optional<Int> optional_integer(const std::string& key) {
        if (!r_.params.count(key)) return std::nullopt;
        return integer(key);
    }

    void inputs(std::size_t n) const {
        if (r_.inputs.size() != n)
            fail("operation '" + r_.operation + "' takes " + std::to_string(n) + " input(s), got " +
                 std::to_string(r_.inputs.size()));
    }

    void finish() const {
        for (const auto& [k, v] : r_.params)
            if (!used_.count(k)) fail("unknown parameter '" + k + "' for operation '" + r_.operation + "'");
    }

    [[noreturn]] void fail(const std::string& why) const { throw Error(ErrorCode::parse_error, why); }

private:
    template <class T>
    T get(const std::string& key, const char* type) {
        auto it = r_.params.find(key);
        if (it == r_.params.end()) fail("missing parameter '" + key + "' for operation '" + r_.operation + "'");
        if (!std::holds_alternative<T>(it->second)) fail("parameter '" + key + "' must be " + type);
        used_.insert(key);
        return std::get<T>(it->second);
    }

    const ConstructionRecipe& r_;
    std::set<std::string> used_;
};

using Handler = std::function<ManifoldDescriptor(ParamReader&, const std::vector<ManifoldDescriptor>&)>;

SurfaceRef read_surface(ParamReader& p, const ManifoldDescriptor& m, const std::string& key) {
    SurfaceRef s;
    s.cls = parse_class(m.lattice, p.text(key));
    s.genus = p.integer("genus");
    s.self_intersection = 0;
    return s;
}

const std::vector<std::pair<std::string, Handler>>& handlers() {
    static const std::vector<std::pair<std::string, Handler>> table = {
        {"elliptic_surface",
         [](ParamReader& p, const auto&) {
             p.inputs(0);
             return elliptic_surface(p.integer("n"), p.integer("p"), p.integer("q"));
         }},
        {"knot_product",
         [](ParamReader& p, const auto&) {
             p.inputs(0);
             return knot_product(p.integer("h"));
         }},
        {"surface_bundle_Y",
         [](ParamReader& p, const auto&) {
             p.inputs(0);
             return surface_bundle_Y(p.integer("g"), p.integer("h"));
         }},
        {"catalog",
         [](ParamReader& p, const auto&) {
             p.inputs(0);
             return catalog(p.text("name"), p.list("params"));
         }},
        {"singular_double_cover",
         [](ParamReader& p, const auto&) {
             p.inputs(0);
             return singular_double_cover(p.integer("n"), p.integer("m"));
         }},
        {"declare_witness",
         [](ParamReader& p, const auto& in) {
             p.inputs(1);
             const ClassVector cls = parse_class(in[0].lattice, p.text("class"));
             const std::string name = p.text("name");
             const auto genus = p.optional_integer("genus");
             const auto self = p.optional_integer("self");
             return declare_witness(in[0], name, cls, genus, self, p.flag("symplectic"));
         }},
        {"fibre_sum",
         [](ParamReader& p, const auto& in) {
             p.inputs(2);
             SurfaceRef sm = read_surface(p, in[0], "surface_m");
             SurfaceRef sn = read_surface(p, in[1], "surface_n");
             FibreSumOptions o;
             o.no_rim_tori = p.flag("no_rim_tori");
             o.rim_dual_square = p.integer("rim_dual_square");
             o.declare_rim_triple = p.flag("declare_rim_triple");
             o.right_prefix = p.text("right_prefix");
             return fibre_sum(in[0], sm, in[1], sn, o);
         }},
        {"knot_surgery",
         [](ParamReader& p, const auto& in) {
             p.inputs(1);
             SurfaceRef s = read_surface(p, in[0], "surface");
             s.complement_simply_connected = p.flag("complement_sc");
             const Sign sign = parse_sign(p.text("sign"));
             s.symplectic_sign = sign;
             return knot_surgery(in[0], s, p.integer("h"), sign);
         }},
        {"generalized_knot_surgery",
         [](ParamReader& p, const auto& in) {
             p.inputs(1);
             SurfaceRef s = read_surface(p, in[0], "surface");
             s.complement_simply_connected = p.flag("complement_sc");
             return generalized_knot_surgery(in[0], s, p.integer("h"));
         }},
        {"log_transform",
         [](ParamReader& p, const auto& in) {
             p.inputs(1);
             return log_transform(in[0], p.integer("p"));
         }},
        {"blow_up",
         [](ParamReader& p, const auto& in) {
             p.inputs(1);
             return blow_up(in[0]);
         }},
        {"blow_down",
         [](ParamReader& p, const auto& in) {
             p.inputs(1);
             return blow_down(in[0]);
         }},
        {"lagrangian_triple_surgery",
         [](ParamReader& p, const auto& in) {
             p.inputs(1);
             const Int triple = p.integer("triple");
             if (triple < 1) p.fail("triple index must be >= 1");
             return lagrangian_triple_surgery(in[0], static_cast<std::size_t>(triple), p.integer("a"),
                                              p.integer("em"), p.integer("h1"), p.integer("h2"),
                                              parse_sign(p.text("sign")));
         }},
        {"branched_cover",
         [](ParamReader& p, const auto& in) {
             p.inputs(1);
             BranchLocus locus;
             locus.d_square = p.integer("d_square");
             locus.k_dot_d = p.integer("k_dot_d");
             locus.connected = p.flag("connected");
             const std::string q = p.text("quotient");
             if (!q.empty()) locus.quotient_class = parse_class(in[0].lattice, q);
             return branched_cover(in[0], locus, p.integer("deg"));
         }},
        {"pluricanonical_cover",
         [](ParamReader& p, const auto& in) {
             p.inputs(1);
             return pluricanonical_cover(in[0], CoverParams::make(p.integer("m"), p.integer("d")));
         }},
    };
    return table;
}

std::vector<OperationSchema> make_schemas() {
    using K = ParamKind;
    auto i = [](std::string k) { return ParamSpec{std::move(k), K::integer, true}; };
    auto t = [](std::string k) { return ParamSpec{std::move(k), K::text, true}; };
    auto opt = [](std::string k) { return ParamSpec{std::move(k), K::integer, false}; };
    return {
        {"elliptic_surface", 0, {i("n"), i("p"), i("q")}},
        {"knot_product", 0, {i("h")}},
        {"surface_bundle_Y", 0, {i("g"), i("h")}},
        {"catalog", 0, {t("name"), {"params", K::integer_list, true}}},
        {"singular_double_cover", 0, {i("n"), i("m")}},
        {"declare_witness", 1, {t("name"), t("class"), i("symplectic"), opt("genus"), opt("self")}},
        {"fibre_sum", 2,
         {t("surface_m"), t("surface_n"), i("genus"), i("no_rim_tori"), i("rim_dual_square"),
          i("declare_rim_triple"), t("right_prefix")}},
        {"knot_surgery", 1, {t("surface"), i("genus"), i("complement_sc"), i("h"), t("sign")}},
        {"generalized_knot_surgery", 1, {t("surface"), i("genus"), i("complement_sc"), i("h")}},
        {"log_transform", 1, {i("p")}},
        {"blow_up", 1, {}},
        {"blow_down", 1, {}},
        {"lagrangian_triple_surgery", 1, {i("triple"), i("a"), i("em"), i("h1"), i("h2"), t("sign")}},
        {"branched_cover", 1, {i("d_square"), i("k_dot_d"), i("deg"), i("connected"), t("quotient")}},
        {"pluricanonical_cover", 1, {i("m"), i("d")}},
    };
}

const Handler* find_handler(std::string_view op) {
    for (const auto& [name, h] : handlers())
        if (name == op) return &h;
    return nullptr;
}

ManifoldDescriptor run(const ConstructionRecipe& r, int depth) {
    if (depth > kMaxDepth) throw Error(ErrorCode::parse_error, "recipe nesting too deep");
    check_recipe_node(r);
    const Handler* h = find_handler(r.operation);
    std::vector<ManifoldDescriptor> inputs;
    inputs.reserve(r.inputs.size());
    for (const auto& child : r.inputs) inputs.push_back(run(child, depth + 1));
    ParamReader reader(r);
    ManifoldDescriptor out = (*h)(reader, inputs);
    reader.finish();
    out.recipe.notes = r.notes;
    return out;
}

}  // namespace

std::string_view to_string(ParamKind k) noexcept {
    switch (k) {
        case ParamKind::integer: return "integer";
        case ParamKind::text: return "string";
        case ParamKind::integer_list: return "integer list";
    }
    return "?";
}

const ParamSpec* OperationSchema::find(std::string_view key) const {
    for (const auto& p : params)
        if (p.key == key) return &p;
    return nullptr;
}

const OperationSchema* find_schema(std::string_view op) {
    static const std::vector<OperationSchema> schemas = make_schemas();
    for (const auto& s : schemas)
        if (s.name == op) return &s;
    return nullptr;
}

void check_recipe_node(const ConstructionRecipe& node) {
    const OperationSchema* s = find_schema(node.operation);
    if (!s) throw Error(ErrorCode::unknown_operation, "unknown operation '" + node.operation + "'");
    auto fail = [&](const std::string& why) {
        throw Error(ErrorCode::parse_error, node.operation + ": " + why);
    };
    for (const auto& [key, value] : node.params) {
        const ParamSpec* spec = s->find(key);
        if (!spec) fail("unknown parameter '" + key + "'");
        const bool ok = (spec->kind == ParamKind::integer && std::holds_alternative<Int>(value)) ||
                        (spec->kind == ParamKind::text && std::holds_alternative<std::string>(value)) ||
                        (spec->kind == ParamKind::integer_list && std::holds_alternative<std::vector<Int>>(value));
        if (!ok) fail("parameter '" + key + "' must be " + std::string(to_string(spec->kind)));
    }
    for (const auto& spec : s->params)
        if (spec.required && !node.params.count(spec.key)) fail("missing parameter '" + spec.key + "'");
    if (node.inputs.size() != s->inputs)
        fail("takes " + std::to_string(s->inputs) + " input(s), got " + std::to_string(node.inputs.size()));
}

const std::vector<std::string>& registered_operations() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [name, h] : handlers()) v.push_back(name);
        return v;
    }();
    return names;
}

bool is_registered_operation(std::string_view op) { return find_schema(op) != nullptr; }

ManifoldDescriptor execute_recipe(const ConstructionRecipe& recipe) { return run(recipe, 0); }

}  // namespace symgeo
