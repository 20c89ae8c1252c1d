#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "argvar/cli.hpp"
#include "argvar/errors.hpp"

namespace argvar::cli {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw ParseError(path + ": " + msg);
}

const json& field(const json& j, const std::string& path, const std::string& key) {
    if (!j.is_object()) fail(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(path, "missing field '" + key + "'");
    return *it;
}

double num(const json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    return j.get<double>();
}

int integer(const json& j, const std::string& path) {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    return j.get<int>();
}

std::string str(const json& j, const std::string& path) {
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
}

Cx cx(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2) fail(path, "expected [re, im]");
    return {num(j[0], path + "[0]"), num(j[1], path + "[1]")};
}

json cx_json(Cx z) { return json::array({z.real(), z.imag()}); }

std::vector<Cx> cx_list(const json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array of [re, im] pairs");
    std::vector<Cx> out;
    for (size_t i = 0; i < j.size(); ++i)
        out.push_back(cx(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

json cx_list_json(const std::vector<Cx>& v) {
    json a = json::array();
    for (Cx z : v) a.push_back(cx_json(z));
    return a;
}

// --- expressions -------------------------------------------------------------

holo::ExprPtr expr_from(const json& j, const std::string& path) {
    std::string op = str(field(j, path, "op"), path + ".op");
    auto sub = [&](const char* key) {
        return expr_from(field(j, path, key), path + "." + key);
    };
    if (op == "const") return holo::constant(cx(field(j, path, "value"), path + ".value"));
    if (op == "z") return holo::coordinate();
    if (op == "sum") return holo::sum(sub("lhs"), sub("rhs"));
    if (op == "prod") return holo::product(sub("lhs"), sub("rhs"));
    if (op == "quot") return holo::quotient(sub("num"), sub("den"));
    if (op == "pow")
        return holo::int_pow(sub("base"),
                             integer(field(j, path, "exponent"), path + ".exponent"));
    if (op == "exp") return holo::exponential(sub("arg"));
    if (op == "log") {
        int branch = 0;
        if (j.contains("branch")) branch = integer(j["branch"], path + ".branch");
        return holo::logarithm(sub("arg"), branch);
    }
    if (op == "affine")
        return holo::affine(cx(field(j, path, "a"), path + ".a"),
                            cx(field(j, path, "b"), path + ".b"));
    if (op == "roots")
        return holo::from_roots(cx_list(field(j, path, "roots"), path + ".roots"));
    if (op == "compose") return holo::compose(sub("outer"), sub("inner"));
    fail(path, "unknown op '" + op + "'");
}

json expr_json(const holo::ExprPtr& e) {
    using namespace holo;
    json j;
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, ConstNode>) {
                j = {{"op", "const"}, {"value", cx_json(n.value)}};
            } else if constexpr (std::is_same_v<T, CoordNode>) {
                j = {{"op", "z"}};
            } else if constexpr (std::is_same_v<T, SumNode>) {
                j = {{"op", "sum"}, {"lhs", expr_json(n.lhs)}, {"rhs", expr_json(n.rhs)}};
            } else if constexpr (std::is_same_v<T, ProductNode>) {
                j = {{"op", "prod"}, {"lhs", expr_json(n.lhs)}, {"rhs", expr_json(n.rhs)}};
            } else if constexpr (std::is_same_v<T, QuotientNode>) {
                j = {{"op", "quot"}, {"num", expr_json(n.num)}, {"den", expr_json(n.den)}};
            } else if constexpr (std::is_same_v<T, IntPowNode>) {
                j = {{"op", "pow"}, {"base", expr_json(n.base)}, {"exponent", n.exponent}};
            } else if constexpr (std::is_same_v<T, ExpNode>) {
                j = {{"op", "exp"}, {"arg", expr_json(n.arg)}};
            } else if constexpr (std::is_same_v<T, LogNode>) {
                j = {{"op", "log"}, {"arg", expr_json(n.arg)}, {"branch", n.branch}};
            } else if constexpr (std::is_same_v<T, AffineNode>) {
                j = {{"op", "affine"}, {"a", cx_json(n.a)}, {"b", cx_json(n.b)}};
            } else if constexpr (std::is_same_v<T, RootsNode>) {
                j = {{"op", "roots"}, {"roots", cx_list_json(n.roots)}};
            } else if constexpr (std::is_same_v<T, ComposeNode>) {
                j = {{"op", "compose"},
                     {"outer", expr_json(n.outer)},
                     {"inner", expr_json(n.inner)}};
            }
        },
        e->node());
    return j;
}

// --- regions and curves --------------------------------------------------------

geom::Region region_from(const json& j, const std::string& path) {
    geom::Region r;
    std::string shape = str(field(j, path, "shape"), path + ".shape");
    if (shape == "disk") {
        r.shape = geom::Disk{cx(field(j, path, "center"), path + ".center"),
                             num(field(j, path, "radius"), path + ".radius")};
    } else if (shape == "rect") {
        r.shape = geom::Rect{cx(field(j, path, "lo"), path + ".lo"),
                             cx(field(j, path, "hi"), path + ".hi")};
    } else if (shape == "polygon") {
        r.shape = geom::Polygon{cx_list(field(j, path, "vertices"), path + ".vertices")};
    } else if (shape == "annulus_sector") {
        r.shape = geom::AnnulusSector{cx(field(j, path, "center"), path + ".center"),
                                      num(field(j, path, "r_in"), path + ".r_in"),
                                      num(field(j, path, "r_out"), path + ".r_out"),
                                      num(field(j, path, "a0"), path + ".a0"),
                                      num(field(j, path, "a1"), path + ".a1")};
    } else {
        fail(path, "unknown shape '" + shape + "'");
    }
    if (j.contains("open")) {
        if (!j["open"].is_boolean()) fail(path + ".open", "expected a boolean");
        r.open = j["open"].get<bool>();
    }
    try {
        geom::validate_region(r);
    } catch (const Error& e) {
        throw ValidationError(path + ": " + e.what());
    }
    return r;
}

json region_json(const geom::Region& r) {
    json j;
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, geom::Disk>) {
                j = {{"shape", "disk"}, {"center", cx_json(s.center)},
                     {"radius", s.radius}};
            } else if constexpr (std::is_same_v<T, geom::Rect>) {
                j = {{"shape", "rect"}, {"lo", cx_json(s.lo)}, {"hi", cx_json(s.hi)}};
            } else if constexpr (std::is_same_v<T, geom::Polygon>) {
                j = {{"shape", "polygon"}, {"vertices", cx_list_json(s.vertices)}};
            } else if constexpr (std::is_same_v<T, geom::AnnulusSector>) {
                j = {{"shape", "annulus_sector"}, {"center", cx_json(s.center)},
                     {"r_in", s.r_in}, {"r_out", s.r_out}, {"a0", s.a0}, {"a1", s.a1}};
            }
        },
        r.shape);
    if (r.open) j["open"] = true;
    return j;
}

geom::Curve curve_from(const json& j, const std::string& path) {
    const json& segs = field(j, path, "segments");
    if (!segs.is_array() || segs.empty()) fail(path + ".segments", "expected a nonempty array");
    geom::Curve c;
    for (size_t i = 0; i < segs.size(); ++i) {
        std::string p = path + ".segments[" + std::to_string(i) + "]";
        const json& s = segs[i];
        std::string type = str(field(s, p, "type"), p + ".type");
        if (type == "line") {
            c.segments.push_back(geom::LineSeg{cx(field(s, p, "p"), p + ".p"),
                                               cx(field(s, p, "q"), p + ".q")});
        } else if (type == "arc") {
            c.segments.push_back(geom::ArcSeg{cx(field(s, p, "center"), p + ".center"),
                                              num(field(s, p, "radius"), p + ".radius"),
                                              num(field(s, p, "a0"), p + ".a0"),
                                              num(field(s, p, "a1"), p + ".a1")});
        } else if (type == "analytic") {
            c.segments.push_back(
                geom::AnalyticSeg{expr_from(field(s, p, "path"), p + ".path")});
        } else {
            fail(p, "unknown segment type '" + type + "'");
        }
    }
    try {
        geom::validate_curve(c);
    } catch (const Error& e) {
        throw ValidationError(path + ": " + e.what());
    }
    return c;
}

json curve_json(const geom::Curve& c) {
    json segs = json::array();
    for (const auto& s : c.segments) {
        std::visit(
            [&](const auto& seg) {
                using T = std::decay_t<decltype(seg)>;
                if constexpr (std::is_same_v<T, geom::LineSeg>) {
                    segs.push_back({{"type", "line"}, {"p", cx_json(seg.p)},
                                    {"q", cx_json(seg.q)}});
                } else if constexpr (std::is_same_v<T, geom::ArcSeg>) {
                    segs.push_back({{"type", "arc"}, {"center", cx_json(seg.center)},
                                    {"radius", seg.radius}, {"a0", seg.a0},
                                    {"a1", seg.a1}});
                } else if constexpr (std::is_same_v<T, geom::AnalyticSeg>) {
                    segs.push_back({{"type", "analytic"}, {"path", expr_json(seg.path)}});
                }
            },
            s);
    }
    return {{"segments", std::move(segs)}};
}

cover::CoverSpec cover_from(const json& j, const std::string& path) {
    cover::CoverSpec c;
    std::string kind = str(field(j, path, "kind"), path + ".kind");
    if (kind == "trivial") c.kind = cover::CoverSpec::Kind::Trivial;
    else if (kind == "log") c.kind = cover::CoverSpec::Kind::Log;
    else if (kind == "root") c.kind = cover::CoverSpec::Kind::Root;
    else fail(path + ".kind", "unknown cover kind '" + kind + "'");
    if (j.contains("branch")) c.branch_point = cx(j["branch"], path + ".branch");
    if (j.contains("order")) c.order = integer(j["order"], path + ".order");
    try {
        cover::validate_cover(c);
    } catch (const Error& e) {
        throw ValidationError(path + ": " + e.what());
    }
    return c;
}

json cover_json(const cover::CoverSpec& c) {
    std::string kind = c.kind == cover::CoverSpec::Kind::Trivial ? "trivial"
                       : c.kind == cover::CoverSpec::Kind::Log   ? "log"
                                                                 : "root";
    json j = {{"kind", kind}, {"branch", cx_json(c.branch_point)}};
    if (c.kind == cover::CoverSpec::Kind::Root) j["order"] = c.order;
    return j;
}

cover::SurfaceRegion sregion_from(const json& j, const std::string& path,
                                  const cover::CoverSpec& cov) {
    if (j.contains("lifted_annulus")) {
        const json& a = j["lifted_annulus"];
        std::string p = path + ".lifted_annulus";
        return cover::lifted_annulus(cov, num(field(a, p, "r_in"), p + ".r_in"),
                                     num(field(a, p, "r_out"), p + ".r_out"),
                                     num(field(a, p, "theta0"), p + ".theta0"),
                                     num(field(a, p, "theta1"), p + ".theta1"));
    }
    const json& pieces = field(j, path, "pieces");
    if (!pieces.is_array() || pieces.empty())
        fail(path + ".pieces", "expected a nonempty array");
    cover::SurfaceRegion r;
    r.cover = cov;
    for (size_t i = 0; i < pieces.size(); ++i) {
        std::string p = path + ".pieces[" + std::to_string(i) + "]";
        r.pieces.push_back(
            {integer(field(pieces[i], p, "sheet"), p + ".sheet"),
             region_from(field(pieces[i], p, "region"), p + ".region")});
    }
    return r;
}

json sregion_json(const cover::SurfaceRegion& r) {
    json pieces = json::array();
    for (const auto& p : r.pieces)
        pieces.push_back({{"sheet", p.sheet}, {"region", region_json(p.region)}});
    return {{"pieces", std::move(pieces)}};
}

// --- validation ----------------------------------------------------------------

const geom::Region& need_region(const Scenario& s, const std::string& name,
                                const std::string& check) {
    auto it = s.regions.find(name);
    if (it == s.regions.end())
        throw ValidationError("check '" + check + "' requires planar region '" +
                              name + "'");
    return it->second;
}

const cover::SurfaceRegion& need_sregion(const Scenario& s, const std::string& name,
                                         const std::string& check) {
    auto it = s.sregions.find(name);
    if (it == s.sregions.end())
        throw ValidationError("check '" + check + "' requires surface region '" +
                              name + "'");
    return it->second;
}

void need_gamma(const Scenario& s, const std::string& check) {
    if (!s.gamma)
        throw ValidationError("check '" + check + "' requires a curve 'gamma'");
}

void check_contained(const geom::Region& K, const geom::Region& U,
                     const std::string& what) {
    try {
        (void)geom::gap(K, U);
    } catch (const ContainmentError& e) {
        throw ValidationError(what + ": " + e.what());
    }
}

void validate_scenario(const Scenario& s) {
    if (s.id.empty()) throw ValidationError("scenario id must be nonempty");
    if (!s.f) throw ValidationError("scenario has no function");
    if (s.checks.empty()) throw ValidationError("scenario requests no checks");
    const auto& known = known_checks();
    for (const auto& c : s.checks) {
        if (std::find(known.begin(), known.end(), c) == known.end())
            throw ValidationError("unknown check '" + c + "'");
        bool surf = s.cov && s.cov->kind != cover::CoverSpec::Kind::Trivial;
        if (c == "growth_zeros") {
            if (surf && s.sregions.count("K")) {
                need_sregion(s, "K", c);
                need_sregion(s, "U", c);
            } else {
                check_contained(need_region(s, "K", c), need_region(s, "U", c),
                                "growth_zeros: K inside U");
            }
        } else if (c == "theorem1") {
            need_gamma(s, c);
            const auto& u2 = need_region(s, "U2", c);
            const auto& u1 = need_region(s, "U1", c);
            const auto& u = need_region(s, "U", c);
            check_contained(u2, u1, "theorem1: U2 inside U1");
            check_contained(u1, u, "theorem1: U1 inside U");
        } else if (c == "theorem2") {
            if (!surf)
                throw ValidationError("check 'theorem2' requires a nontrivial cover");
            need_gamma(s, c);
            need_sregion(s, "U2", c);
            need_sregion(s, "U1", c);
            need_sregion(s, "U", c);
        } else if (c == "lemma1") {
            need_gamma(s, c);
            check_contained(need_region(s, "U2", c), need_region(s, "U1", c),
                            "lemma1: U2 inside U1");
        } else if (c == "lemma2") {
            if (s.p_roots.empty())
                throw ValidationError("check 'lemma2' requires 'p_roots'");
            const auto& u2 = need_region(s, "U2", c);
            const auto& u1 = need_region(s, "U1", c);
            const auto& u = need_region(s, "U", c);
            check_contained(u2, u1, "lemma2: U2 inside U1");
            check_contained(u1, u, "lemma2: U1 inside U");
        } else if (c == "lemma3" || c == "koebe") {
            need_gamma(s, c);
            need_region(s, "U", c);
            if (!s.basepoint)
                throw ValidationError("check '" + c + "' requires a 'basepoint'");
        } else if (c == "eq14") {
            need_gamma(s, c);
            if (s.p_roots.empty())
                throw ValidationError("check 'eq14' requires 'p_roots'");
        }
    }
}

}  // namespace

const std::vector<std::string>& known_checks() {
    static const std::vector<std::string> k = {"growth_zeros", "theorem1", "theorem2",
                                               "lemma1",       "lemma2",   "lemma3",
                                               "koebe",        "eq14"};
    return k;
}

Scenario parse_scenario_text(const std::string& text, const std::string& origin) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(origin + ": " + e.what());
    }
    if (!j.is_object()) throw ParseError(origin + ": top level must be an object");

    Scenario s;
    s.id = str(field(j, origin, "id"), origin + ".id");
    if (j.contains("seed")) {
        if (!j["seed"].is_number_integer()) fail(origin + ".seed", "expected an integer");
        s.seed = j["seed"].get<uint64_t>();
    }
    const json& checks = field(j, origin, "checks");
    if (!checks.is_array()) fail(origin + ".checks", "expected an array");
    for (size_t i = 0; i < checks.size(); ++i)
        s.checks.push_back(str(checks[i], origin + ".checks[" + std::to_string(i) + "]"));

    s.f = expr_from(field(j, origin, "function"), origin + ".function");

    if (j.contains("cover")) s.cov = cover_from(j["cover"], origin + ".cover");

    if (j.contains("regions")) {
        const json& r = j["regions"];
        if (!r.is_object()) fail(origin + ".regions", "expected an object");
        for (auto it = r.begin(); it != r.end(); ++it)
            s.regions.emplace(it.key(),
                              region_from(it.value(), origin + ".regions." + it.key()));
    }
    if (j.contains("surface_regions")) {
        if (!s.cov)
            throw ValidationError(origin + ": surface_regions require a 'cover'");
        const json& r = j["surface_regions"];
        if (!r.is_object()) fail(origin + ".surface_regions", "expected an object");
        for (auto it = r.begin(); it != r.end(); ++it)
            s.sregions.emplace(
                it.key(), sregion_from(it.value(),
                                       origin + ".surface_regions." + it.key(), *s.cov));
    }
    if (j.contains("gamma")) {
        s.gamma = curve_from(j["gamma"], origin + ".gamma");
        if (j["gamma"].contains("start_sheet"))
            s.gamma_start_sheet =
                integer(j["gamma"]["start_sheet"], origin + ".gamma.start_sheet");
    }
    if (j.contains("p_roots")) s.p_roots = cx_list(j["p_roots"], origin + ".p_roots");
    if (j.contains("basepoint")) s.basepoint = cx(j["basepoint"], origin + ".basepoint");
    if (j.contains("grid")) {
        const json& g = j["grid"];
        s.grid.h = num(field(g, origin + ".grid", "h"), origin + ".grid.h");
        if (g.contains("levels"))
            s.grid.levels = integer(g["levels"], origin + ".grid.levels");
        if (s.grid.h <= 0.0 || s.grid.levels < 1)
            throw ValidationError(origin + ".grid: h must be > 0 and levels >= 1");
    }
    if (j.contains("tol")) {
        s.check_tol = num(j["tol"], origin + ".tol");
        if (s.check_tol < 0.0) throw ValidationError(origin + ".tol: must be >= 0");
    }

    validate_scenario(s);
    return s;
}

Scenario parse_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario_text(buf.str(), path);
}

std::string serialize_scenario(const Scenario& s) {
    json j;
    j["id"] = s.id;
    j["seed"] = s.seed;
    j["checks"] = s.checks;
    j["function"] = expr_json(s.f);
    if (s.cov) j["cover"] = cover_json(*s.cov);
    if (!s.regions.empty()) {
        json r = json::object();
        for (const auto& [name, reg] : s.regions) r[name] = region_json(reg);
        j["regions"] = std::move(r);
    }
    if (!s.sregions.empty()) {
        json r = json::object();
        for (const auto& [name, reg] : s.sregions) r[name] = sregion_json(reg);
        j["surface_regions"] = std::move(r);
    }
    if (s.gamma) {
        j["gamma"] = curve_json(*s.gamma);
        if (s.gamma_start_sheet != 0) j["gamma"]["start_sheet"] = s.gamma_start_sheet;
    }
    if (!s.p_roots.empty()) j["p_roots"] = cx_list_json(s.p_roots);
    if (s.basepoint) j["basepoint"] = cx_json(*s.basepoint);
    j["grid"] = {{"h", s.grid.h}, {"levels", s.grid.levels}};
    j["tol"] = s.check_tol;
    return j.dump(2) + "\n";
}

}  // namespace argvar::cli
