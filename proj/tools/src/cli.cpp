#include "symgeo_cli/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "symgeo/coverings.hpp"
#include "symgeo/recipe.hpp"
#include "symgeo_cli/recipe_io.hpp"

namespace symgeo::cli {

namespace {

constexpr std::size_t kMaxScanPoints = 1'000'000;

Int to_int(const std::string& s, const std::string& what) {
    Int v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        throw Error(ErrorCode::invalid_parameter, what + ": expected an integer, got '" + s + "'");
    return v;
}

std::vector<Int> to_int_list(const std::string& s, const std::string& what) {
    std::vector<Int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_int(item, what));
    if (out.empty()) throw Error(ErrorCode::invalid_parameter, what + ": empty list");
    return out;
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

std::string join_params(const std::vector<std::pair<std::string, Int>>& kv) {
    std::string s;
    for (const auto& [k, v] : kv) s += (s.empty() ? "" : ";") + k + "=" + std::to_string(v);
    return s;
}

void need_args(const std::vector<std::string>& a, std::size_t lo, std::size_t hi, const std::string& usage) {
    if (a.size() < lo || a.size() > hi) throw Error(ErrorCode::invalid_parameter, "usage: construct " + usage);
}

struct Constructed {
    ManifoldDescriptor m;
    std::string extra;  // appended to the description
};

Constructed construct_from(const std::vector<std::string>& argv, std::uint64_t mask) {
    const std::string& name = argv.at(0);
    const std::vector<std::string> a(argv.begin() + 1, argv.end());
    auto I = [&](std::size_t i) { return to_int(a.at(i), name); };

    if (name == "homotopy_elliptic") {
        need_args(a, 2, 2, "homotopy_elliptic <n> <d>");
        return {homotopy_elliptic(I(0), I(1)), {}};
    }
    if (name == "spin_surface") {
        need_args(a, 3, 3, "spin_surface <d> <m> <t>");
        return {spin_surface(I(0), I(1), I(2)), {}};
    }
    if (name == "nonspin_surface") {
        need_args(a, 3, 3, "nonspin_surface <d> <n> <t>");
        return {nonspin_surface(I(0), I(1), I(2)), {}};
    }
    if (name == "negative_c1") {
        need_args(a, 2, 2, "negative_c1 <n> <r>");
        return {negative_c1(I(0), I(1)), {}};
    }
    if (name == "elliptic_surface") {
        need_args(a, 1, 3, "elliptic_surface <n> [<p> [<q>]]");
        return {elliptic_surface(I(0), a.size() > 1 ? I(1) : 1, a.size() > 2 ? I(2) : 1), {}};
    }
    if (name == "knot_product") {
        need_args(a, 1, 1, "knot_product <h>");
        return {knot_product(I(0)), {}};
    }
    if (name == "surface_bundle_Y") {
        need_args(a, 2, 2, "surface_bundle_Y <g> <h>");
        return {surface_bundle_Y(I(0), I(1)), {}};
    }
    if (name == "singular_double_cover") {
        need_args(a, 2, 2, "singular_double_cover <n> <m>");
        return {singular_double_cover(I(0), I(1)), {}};
    }
    if (name == "catalog") {
        need_args(a, 1, 3, "catalog <name> [<params>...]");
        std::vector<Int> ps;
        for (std::size_t i = 1; i < a.size(); ++i) ps.push_back(I(i));
        return {catalog(a[0], ps), {}};
    }
    if (name == "pluricanonical_cover") {
        need_args(a, 3, 5, "pluricanonical_cover <catalog-name> <m> <d> [<params>...]");
        std::vector<Int> ps;
        for (std::size_t i = 3; i < a.size(); ++i) ps.push_back(I(i));
        return {pluricanonical_cover(catalog(a[0], ps), CoverParams::make(I(1), I(2))), {}};
    }
    if (name == "persson_cover") {
        need_args(a, 4, 4, "persson_cover <m> <d> <x> <y>");
        return {persson_cover(CoverParams::make(I(0), I(1)), I(2), I(3)), {}};
    }
    if (name == "family") {
        need_args(a, 4, 5, "family <regime> <d> <d0,d1,...> <n-or-m> [<t>]");
        FamilyRequest rq;
        rq.regime = parse_regime(a[0]);
        rq.d = I(1);
        rq.divisors = to_int_list(a[2], "divisors");
        if (rq.regime == Regime::c1sq_zero) {
            if (a.size() != 4) throw Error(ErrorCode::invalid_parameter, "c1sq_zero takes no t");
            rq.n = I(3);
        } else {
            rq.m = I(3);
            rq.t = a.size() > 4 ? I(4) : 1;
        }
        const auto q = q_set(rq.d, rq.divisors);
        std::string extra = "Q:";
        for (auto it = q.rbegin(); it != q.rend(); ++it) extra += " " + std::to_string(*it);
        return {family_member(rq, mask), extra + "\nsign_mask: " + std::to_string(mask) + "\n"};
    }
    throw Error(ErrorCode::invalid_parameter, "unknown constructor '" + name + "'");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::invalid_parameter, "cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::invalid_parameter, "cannot write '" + path + "'");
    out << text;
}

// --- realizable -------------------------------------------------------------

std::string realizable(Int chi, Int c1, Int d) {
    if (d < 1) throw Error(ErrorCode::invalid_parameter, "d must be >= 1");
    if (chi < 1) return "unknown (chi_h < 1 is outside the covered geography)";
    const Int sigma = c1 - 8 * chi;
    if (sigma >= 0) return "unknown (non-negative signature is outside the covered geography)";
    if (c1 < 0 && d != 1) return "obstructed: c1^2 < 0 forces a non-minimal manifold, so d = 1";
    if (c1 != 0 && c1 % (d * d) != 0) return "obstructed: d^2 must divide c1^2";
    if (d % 2 == 0 && c1 % (2 * d * d) != 0) return "obstructed: 2d^2 must divide c1^2 for even d";
    if (d % 2 == 0 && checked::mod(sigma, 16) != 0) return "obstructed: even d forces spin, Rochlin needs 16 | sigma";
    if (d % 2 == 1 && sigma % 8 == 0 && c1 % (8 * d * d) != 0)
        return "obstructed: 8 | sigma with odd d needs 8d^2 | c1^2";

    auto check = [&](const ManifoldDescriptor& m, const std::string& label) -> std::string {
        const auto cert = divisibility(m);
        if (m.c1_sq() == c1 && derived_invariants(m).chi_h == chi && cert.certified && cert.value() == d &&
            validate(m).ok())
            return "realized: " + label;
        return {};
    };
    std::string found;
    if (c1 < 0) {
        found = check(negative_c1(chi, -c1), "negative_c1(n=" + std::to_string(chi) + ";r=" + std::to_string(-c1) + ")");
    } else if (c1 == 0) {
        if (chi % 2 == 1 && d % 2 == 0) return "obstructed: odd chi_h with c1^2 = 0 needs odd d";
        found = check(homotopy_elliptic(chi, d),
                      "homotopy_elliptic(n=" + std::to_string(chi) + ";d=" + std::to_string(d) + ")");
    } else if (d % 2 == 0) {
        const Int t = c1 / (2 * d * d);
        const Int rest = 4 * chi - t * d * d;
        if (t >= 1 && rest > 0 && rest % 8 == 0) {
            const Int m = rest / 8;
            found = check(spin_surface(d, m, t), "spin_surface(d=" + std::to_string(d) + ";m=" +
                                                     std::to_string(m) + ";t=" + std::to_string(t) + ")");
        }
    } else if (c1 % (8 * d * d) == 0) {
        const Int t = c1 / (8 * d * d);
        const Int n = chi - t * d * d;
        if (t >= 1 && n >= 2) {
            found = check(nonspin_surface(d, n, t), "nonspin_surface(d=" + std::to_string(d) + ";n=" +
                                                        std::to_string(n) + ";t=" + std::to_string(t) + ")");
        }
    }
    if (!found.empty()) return found;
    return "unknown (no constructor covers this point; not a non-existence claim)";
}

}  // namespace

std::string describe(const ManifoldDescriptor& m, bool with_checks) {
    std::ostringstream os;
    const auto cert = divisibility(m);
    const auto report = validate(m);
    os << "e: " << m.e << '\n' << "sigma: " << m.sigma << '\n' << "c1_sq: " << m.c1_sq() << '\n';
    try {
        const auto inv = derived_invariants(m);
        os << "chi_h: " << inv.chi_h << '\n';
        os << "b2_plus: " << (inv.b2_plus ? std::to_string(*inv.b2_plus) : "n/a") << '\n';
    } catch (const Error&) {
        os << "chi_h: n/a\nb2_plus: n/a\n";
    }
    os << "spin: " << yes_no(m.spin) << '\n'
       << "simply_connected: " << yes_no(m.simply_connected) << '\n'
       << "symplectic: " << yes_no(m.symplectic) << '\n'
       << "minimal: " << to_string(m.minimal) << '\n'
       << "canonical: " << format_class(m.lattice, m.canonical) << '\n';
    if (cert.certified)
        os << "divisibility: " << cert.value() << " (certified)\n";
    else
        os << "divisibility: uncertified (lower=" << cert.lower << ", upper=" << cert.upper << ")\n";
    if (with_checks)
        for (const auto& c : report.checks)
            os << "  [" << (c.passed ? "pass" : "FAIL") << "] " << c.name << (c.detail.empty() ? "" : ": ") << c.detail
               << '\n';
    os << (report.ok() ? "VALID" : "INVALID") << '\n';
    return os.str();
}

std::string tables_csv(const std::string& which) {
    std::vector<std::pair<std::string, std::string>> surfaces;
    if (which == "barlow" || which == "both") surfaces.emplace_back("barlow", "barlow");
    if (which == "leepark" || which == "both") surfaces.emplace_back("leepark", "lee_park");
    if (surfaces.empty()) throw Error(ErrorCode::invalid_parameter, "--which must be barlow, leepark or both");
    std::ostringstream os;
    os << "surface,d,m,ma,Delta,e,c1_sq,chi_h,b2_plus,sigma\n";
    for (const auto& [label, entry] : surfaces) {
        const ManifoldDescriptor base = catalog(entry);
        for (Int d = 3; d <= 6; ++d)
            for (Int m = 2; m <= d; ++m) {
                if ((d - 1) % (m - 1) != 0) continue;
                const CoverParams p = CoverParams::make(m, d);
                const ManifoldDescriptor x = pluricanonical_cover(base, p);
                const auto inv = derived_invariants(x);
                os << label << ',' << d << ',' << m << ',' << p.n << ',' << p.delta << ',' << x.e << ','
                   << x.c1_sq() << ',' << inv.chi_h << ',' << *inv.b2_plus << ',' << x.sigma << '\n';
            }
    }
    return os.str();
}

std::vector<RangeSpec> parse_ranges(const std::string& text) {
    std::vector<RangeSpec> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        const auto colon = item.find(':', eq == std::string::npos ? 0 : eq);
        if (eq == std::string::npos || eq == 0)
            throw Error(ErrorCode::invalid_parameter, "range '" + item + "' must look like var=lo:hi");
        RangeSpec r;
        r.var = item.substr(0, eq);
        if (colon == std::string::npos) {
            r.lo = r.hi = to_int(item.substr(eq + 1), r.var);
        } else {
            r.lo = to_int(item.substr(eq + 1, colon - eq - 1), r.var);
            r.hi = to_int(item.substr(colon + 1), r.var);
        }
        if (r.lo > r.hi) throw Error(ErrorCode::invalid_parameter, "empty range for '" + r.var + "'");
        if (std::any_of(out.begin(), out.end(), [&](const RangeSpec& o) { return o.var == r.var; }))
            throw Error(ErrorCode::invalid_parameter, "duplicate range for '" + r.var + "'");
        out.push_back(r);
    }
    return out;
}

std::vector<ScanRow> scan(const std::string& regime, const std::vector<RangeSpec>& ranges) {
    std::string ctor;
    std::vector<std::string> vars;
    if (regime == "c1sq_zero" || regime == "homotopy_elliptic") {
        ctor = "homotopy_elliptic";
        vars = {"n", "d"};
    } else if (regime == "spin_positive" || regime == "spin_surface") {
        ctor = "spin_surface";
        vars = {"d", "m", "t"};
    } else if (regime == "nonspin_positive" || regime == "nonspin_surface") {
        ctor = "nonspin_surface";
        vars = {"d", "n", "t"};
    } else if (regime == "negative_c1") {
        ctor = "negative_c1";
        vars = {"n", "r"};
    } else {
        throw Error(ErrorCode::invalid_parameter, "unknown regime '" + regime + "'");
    }

    std::vector<RangeSpec> ordered;
    std::size_t points = 1;
    for (const auto& v : vars) {
        auto it = std::find_if(ranges.begin(), ranges.end(), [&](const RangeSpec& r) { return r.var == v; });
        if (it == ranges.end()) throw Error(ErrorCode::invalid_parameter, "missing range for '" + v + "'");
        ordered.push_back(*it);
        points *= static_cast<std::size_t>(it->hi - it->lo + 1);
        if (points > kMaxScanPoints) throw Error(ErrorCode::invalid_parameter, "scan region too large");
    }
    for (const auto& r : ranges)
        if (std::find(vars.begin(), vars.end(), r.var) == vars.end())
            throw Error(ErrorCode::invalid_parameter, "regime '" + regime + "' has no variable '" + r.var + "'");

    std::vector<ScanRow> rows;
    std::vector<Int> cur(ordered.size());
    for (std::size_t i = 0; i < ordered.size(); ++i) cur[i] = ordered[i].lo;
    while (true) {
        std::vector<std::pair<std::string, Int>> kv;
        for (std::size_t i = 0; i < vars.size(); ++i) kv.emplace_back(vars[i], cur[i]);
        try {
            ManifoldDescriptor m;
            if (ctor == "homotopy_elliptic") m = homotopy_elliptic(cur[0], cur[1]);
            else if (ctor == "spin_surface") m = spin_surface(cur[0], cur[1], cur[2]);
            else if (ctor == "nonspin_surface") m = nonspin_surface(cur[0], cur[1], cur[2]);
            else m = negative_c1(cur[0], cur[1]);
            rows.push_back({ctor, join_params(kv), std::move(m)});
        } catch (const Error& e) {
            // Inadmissible parameter points are simply not realized.
            if (e.code() != ErrorCode::invalid_parameter && e.code() != ErrorCode::spin_parity_obstruction) throw;
        }
        std::size_t k = cur.size();
        while (k > 0) {
            --k;
            if (cur[k] < ordered[k].hi) {
                ++cur[k];
                break;
            }
            cur[k] = ordered[k].lo;
            if (k == 0) return rows;
        }
    }
}

std::string scan_csv_header() { return "constructor,params,chi_h,c1_sq,e,sigma,spin,divisibility,certified"; }

std::string scan_csv_row(const ScanRow& row) {
    const auto& m = row.descriptor;
    const auto cert = divisibility(m);
    std::ostringstream os;
    os << row.constructor << ',' << row.params << ',' << derived_invariants(m).chi_h << ',' << m.c1_sq() << ','
       << m.e << ',' << m.sigma << ',' << yes_no(m.spin) << ',' << (cert.certified ? cert.value() : cert.lower) << ','
       << yes_no(cert.certified);
    return os.str();
}

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact invariants, canonical classes and divisibility certificates of 4-manifold constructions",
                 "symgeo"};
    app.require_subcommand(1);

    auto* construct = app.add_subcommand("construct", "Run a constructor and print the descriptor");
    std::vector<std::string> construct_args;
    std::string recipe_out;
    std::uint64_t mask = 0;
    bool checks = false;
    construct->add_option("args", construct_args, "<constructor> <params...>")->required()->allow_extra_args();
    construct->add_option("--recipe-out", recipe_out, "Write the construction recipe to this file");
    construct->add_option("--mask", mask, "Sign pattern for 'family' (bit i = minus on triple i+1)");
    construct->add_flag("--checks", checks, "List every validation check");

    auto* verify = app.add_subcommand("verify", "Re-execute a recipe file and validate the result");
    std::string verify_path;
    verify->add_option("file", verify_path)->required();
    verify->add_flag("--checks", checks, "List every validation check");

    auto* scan_cmd = app.add_subcommand("scan", "Emit CSV of realized geography points");
    std::string regime, ranges_text, scan_out, recipe_dir;
    scan_cmd->add_option("--regime", regime,
                         "c1sq_zero | spin_positive | nonspin_positive | negative_c1")
        ->required();
    scan_cmd->add_option("--ranges", ranges_text, "e.g. n=1:10,d=1:5")->required();
    scan_cmd->add_option("--out", scan_out, "CSV output path (default stdout)");
    scan_cmd->add_option("--recipe-dir", recipe_dir, "Also write one recipe file per row into this directory");

    auto* tables = app.add_subcommand("tables", "Reproduce the pluricanonical covering tables");
    std::string which = "both";
    tables->add_option("--which", which)->check(CLI::IsMember({"barlow", "leepark", "both"}));

    auto* qset = app.add_subcommand("qset", "Print the Q-set of a divisor list");
    std::string q_d, q_list;
    qset->add_option("d", q_d)->required();
    qset->add_option("divisors", q_list, "d0,d1,...,dN")->required();

    auto* phi = app.add_subcommand("phi", "Geography transport (e, c1^2) -> (m(e+Delta c), m d^2 c)");
    Int phi_m = 0, phi_d = 0;
    bool inverse = false;
    std::vector<std::string> phi_args;
    phi->add_option("--m", phi_m)->required();
    phi->add_option("--d", phi_d)->required();
    phi->add_flag("--inverse", inverse);
    phi->add_option("point", phi_args, "<e> <c>")->required()->expected(2);

    auto* real = app.add_subcommand("realizable", "Search constructors and obstructions for (chi_h, c1^2, d)");
    std::vector<std::string> real_args;
    real->add_option("point", real_args, "<chi_h> <c1_sq> <d>")->required()->expected(3);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n' << app.help();
        return kUsageError;
    }

    try {
        if (construct->parsed()) {
            const Constructed c = construct_from(construct_args, mask);
            out << c.extra << describe(c.m, checks);
            if (!recipe_out.empty()) write_file(recipe_out, serialize_recipe(c.m.recipe));
            return validate(c.m).ok() ? kSuccess : kValidationFailure;
        }
        if (verify->parsed()) {
            const ConstructionRecipe r = parse_recipe(read_file(verify_path));
            const ManifoldDescriptor m = execute_recipe(r);
            out << "operation: " << r.operation << '\n' << describe(m, checks);
            return validate(m).ok() ? kSuccess : kValidationFailure;
        }
        if (scan_cmd->parsed()) {
            const auto rows = scan(regime, parse_ranges(ranges_text));
            std::ostringstream csv;
            csv << scan_csv_header() << '\n';
            bool all_valid = true;
            for (const auto& row : rows) {
                csv << scan_csv_row(row) << '\n';
                all_valid = all_valid && validate(row.descriptor).ok();
                if (!recipe_dir.empty()) {
                    std::filesystem::create_directories(recipe_dir);
                    std::string file = row.constructor + "_" + row.params;
                    std::replace(file.begin(), file.end(), ';', '_');
                    std::replace(file.begin(), file.end(), '=', '-');
                    write_file((std::filesystem::path(recipe_dir) / (file + ".recipe")).string(),
                               serialize_recipe(row.descriptor.recipe));
                }
            }
            if (scan_out.empty()) out << csv.str();
            else write_file(scan_out, csv.str());
            return all_valid ? kSuccess : kValidationFailure;
        }
        if (tables->parsed()) {
            out << tables_csv(which);
            return kSuccess;
        }
        if (qset->parsed()) {
            const auto q = q_set(to_int(q_d, "d"), to_int_list(q_list, "divisors"));
            std::string line;
            for (auto it = q.rbegin(); it != q.rend(); ++it) line += (line.empty() ? "" : " ") + std::to_string(*it);
            out << line << '\n';
            return kSuccess;
        }
        if (phi->parsed()) {
            const CoverParams p = CoverParams::make(phi_m, phi_d);
            const Int e = to_int(phi_args[0], "e"), c = to_int(phi_args[1], "c");
            if (inverse) {
                const auto [x, y] = phi_inverse(p, Rational(e), Rational(c));
                out << x.str() << ' ' << y.str() << '\n';
            } else {
                const auto [x, y] = phi_map(p, e, c);
                out << x << ' ' << y << '\n';
            }
            return kSuccess;
        }
        if (real->parsed()) {
            out << realizable(to_int(real_args[0], "chi_h"), to_int(real_args[1], "c1_sq"),
                              to_int(real_args[2], "d"))
                << '\n';
            return kSuccess;
        }
    } catch (const Error& e) {
        err << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }
    return kUsageError;
}

}  // namespace symgeo::cli
