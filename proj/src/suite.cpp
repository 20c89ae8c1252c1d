#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>

#include "argvar/cli.hpp"
#include "argvar/errors.hpp"
#include "argvar/rng.hpp"

namespace argvar::cli {

namespace {

bounds::BoundCheck dispatch_check(const Scenario& s, const std::string& name) {
    bool surf = s.cov && s.cov->kind != cover::CoverSpec::Kind::Trivial;
    if (name == "growth_zeros") {
        if (surf && s.sregions.count("K"))
            return bounds::check_growth_and_zeros(s.f, s.sregions.at("K"),
                                                  s.sregions.at("U"), s.grid);
        return bounds::check_growth_and_zeros(s.f, s.regions.at("K"),
                                              s.regions.at("U"), s.grid);
    }
    if (name == "theorem1")
        return bounds::check_theorem1(s.f, *s.gamma, s.regions.at("U2"),
                                      s.regions.at("U1"), s.regions.at("U"), s.grid);
    if (name == "theorem2") {
        auto lifted = cover::lift_curve(*s.gamma, *s.cov, s.gamma_start_sheet);
        return bounds::check_theorem2(s.f, lifted, s.sregions.at("U2"),
                                      s.sregions.at("U1"), s.sregions.at("U"), s.grid);
    }
    if (name == "lemma1")
        return bounds::check_lemma1(s.f, *s.gamma, s.regions.at("U2"),
                                    s.regions.at("U1"), s.grid);
    if (name == "lemma2")
        return bounds::check_lemma2(s.f, s.p_roots, s.regions.at("U2"),
                                    s.regions.at("U1"), s.regions.at("U"), s.grid);
    if (name == "lemma3" || name == "koebe") {
        auto phi = geom::conformal_to_disk(s.regions.at("U"), *s.basepoint);
        double eps = geom::gap_curve(*s.gamma, s.regions.at("U"));
        if (eps <= 0.0)
            throw HypothesisError(name + ": gamma is not strictly inside U");
        return name == "lemma3" ? bounds::check_lemma3(phi, *s.gamma, eps)
                                : bounds::koebe_ratio_check(phi, *s.gamma, eps);
    }
    if (name == "eq14")
        return bounds::check_submultiplicativity(s.f, holo::from_roots(s.p_roots),
                                                 *s.gamma);
    throw ValidationError("unknown check '" + name + "'");
}

std::string indexed_id(const std::string& kind, int i) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s-%04d", kind.c_str(), i);
    return buf;
}

geom::Curve circle(Cx c, double r) {
    return {{geom::ArcSeg{c, r, 0.0, kTwoPi}}};
}

// --- per-kind generators (recipes documented in the README; draw order is
// --- load-bearing for reproducibility) ----------------------------------------

Scenario gen_growth_zeros(rng::Counter& g) {
    Scenario s;
    int d = g.uniform_int(1, 8);
    double R = g.uniform(1.5, 3.0);
    bool eccentric = g.next_double() < 0.5;
    Cx c = eccentric ? g.in_disk(0.0, 0.25 * R) : Cx(0.0);
    double rK = g.uniform(0.35, 0.6) * (R - std::abs(c));
    std::vector<Cx> roots;
    while (int(roots.size()) < d) {
        Cx r = g.in_disk(0.0, 0.85 * R);
        if (std::abs(std::abs(r - c) - rK) >= 0.05 * rK) roots.push_back(r);
    }
    s.f = holo::from_roots(std::move(roots));
    s.regions.emplace("K", geom::Region{geom::Disk{c, rK}});
    s.regions.emplace("U", geom::Region{geom::Disk{0.0, R}});
    s.grid = {rK / 6.0, 2};
    s.checks = {"growth_zeros"};
    return s;
}

Scenario gen_theorem1(rng::Counter& g) {
    Scenario s;
    double r2 = g.uniform(1.0, 1.5);
    double rg = g.uniform(0.35, 0.6) * r2;
    double g1 = g.uniform(0.4, 0.8) * r2;
    double g2 = g.uniform(0.4, 0.8) * r2;
    int d = g.uniform_int(1, 5);
    std::vector<Cx> roots;
    while (int(roots.size()) < d) {
        Cx r = g.in_disk(0.0, 0.95 * (r2 + g1));
        if (std::abs(std::abs(r) - rg) >= 0.07 * r2) roots.push_back(r);
    }
    s.f = holo::from_roots(std::move(roots));
    s.gamma = circle(0.0, rg);
    s.regions.emplace("U2", geom::Region{geom::Disk{0.0, r2}});
    s.regions.emplace("U1", geom::Region{geom::Disk{0.0, r2 + g1}});
    s.regions.emplace("U", geom::Region{geom::Disk{0.0, r2 + g1 + g2}});
    s.grid = {r2 / 8.0, 2};
    s.checks = {"theorem1"};
    return s;
}

Scenario gen_theorem2(rng::Counter& g) {
    Scenario s;
    double rg = g.uniform(1.0, 2.0);
    double j2 = g.uniform(1.75, 2.0);
    int d = g.uniform_int(1, 3);
    cover::CoverSpec cov;
    cov.kind = cover::CoverSpec::Kind::Log;
    cov.branch_point = 0.0;
    s.cov = cov;
    std::vector<Cx> zroots;
    double lo = std::log(0.5 * rg), mid = std::log(rg), hi = std::log(1.5 * rg);
    for (int k = 0; k < d; ++k) {
        double re = g.next_double() < 0.5 ? g.uniform(lo + 0.08, mid - 0.1)
                                          : g.uniform(mid + 0.1, hi - 0.08);
        double im = g.uniform(-j2 + 0.1, kTwoPi + j2 - 0.1);
        zroots.emplace_back(re, im);
    }
    s.f = holo::from_roots(std::move(zroots));
    s.gamma = circle(0.0, rg);
    s.gamma_start_sheet = 0;
    s.sregions.emplace("U2",
                       cover::lifted_annulus(cov, 0.5 * rg, 1.5 * rg, -j2, kTwoPi + j2));
    s.sregions.emplace("U1", cover::lifted_annulus(cov, 0.27 * rg, 1.73 * rg,
                                                   -j2 - 0.53, kTwoPi + j2 + 0.53));
    s.sregions.emplace("U", cover::lifted_annulus(cov, 0.13 * rg, 1.87 * rg,
                                                  -j2 - 1.06, kTwoPi + j2 + 1.06));
    s.grid = {0.1 * rg, 2};
    s.checks = {"theorem2"};
    return s;
}

Scenario gen_lemma1(rng::Counter& g) {
    Scenario s;
    double r2 = g.uniform(1.0, 1.5);
    double rg = g.uniform(0.35, 0.6) * r2;
    double g1 = g.uniform(0.4, 0.8) * r2;
    Cx a = g.in_disk(0.0, 0.4);
    Cx b = g.in_disk(0.0, 0.8);
    auto z = holo::coordinate();
    s.f = holo::exponential(holo::sum(holo::product(holo::constant(a), holo::int_pow(z, 2)),
                                      holo::product(holo::constant(b), z)));
    s.gamma = circle(0.0, rg);
    s.regions.emplace("U2", geom::Region{geom::Disk{0.0, r2}});
    s.regions.emplace("U1", geom::Region{geom::Disk{0.0, r2 + g1}});
    s.grid = {r2 / 8.0, 2};
    s.checks = {"lemma1"};
    return s;
}

Scenario gen_lemma2(rng::Counter& g) {
    Scenario s;
    double r2 = g.uniform(0.8, 1.2);
    double g1 = g.uniform(0.5, 1.0);
    double g2 = g.uniform(0.5, 1.0);
    int d = g.uniform_int(1, 4);
    Cx c = g.in_disk(0.0, 0.4);
    std::vector<Cx> roots;
    while (int(roots.size()) < d) {
        Cx r = g.in_disk(0.0, 0.9 * (r2 + g1));
        if (std::abs(std::abs(r) - r2) >= 0.03) roots.push_back(r);
    }
    s.p_roots = roots;
    auto z = holo::coordinate();
    s.f = holo::product(holo::exponential(holo::product(holo::constant(c), z)),
                        holo::from_roots(std::move(roots)));
    s.regions.emplace("U2", geom::Region{geom::Disk{0.0, r2}});
    s.regions.emplace("U1", geom::Region{geom::Disk{0.0, r2 + g1}});
    s.regions.emplace("U", geom::Region{geom::Disk{0.0, r2 + g1 + g2}});
    s.grid = {r2 / 8.0, 2};
    s.checks = {"lemma2"};
    return s;
}

/// Shared geometry for lemma3 and koebe: random disk automorphism data plus a
/// curve drawn from {circle, regular polygon, analytically perturbed circle},
/// kept well inside the disk so the measured gap is bounded below.
Scenario gen_disk_automorphism(rng::Counter& g, const std::string& check) {
    Scenario s;
    double R = g.uniform(1.0, 2.0);
    Cx b = g.in_disk(0.0, 0.4 * R);
    int shape = g.uniform_int(0, 2);
    Cx c;
    double r = 0.0;
    do {
        c = g.in_disk(0.0, 0.3 * R);
        r = g.uniform(0.15, 0.3) * R;
    } while (std::abs(c) + r > 0.62 * R);
    if (shape == 0) {
        s.gamma = circle(c, r);
    } else if (shape == 1) {
        int k = g.uniform_int(3, 6);
        double phase = g.uniform(0.0, kTwoPi);
        geom::Curve poly;
        for (int j = 0; j < k; ++j) {
            Cx p = c + std::polar(r, phase + kTwoPi * j / k);
            Cx q = c + std::polar(r, phase + kTwoPi * (j + 1) / k);
            poly.segments.push_back(geom::LineSeg{p, q});
        }
        s.gamma = poly;
    } else {
        double alpha = g.uniform(0.05, 0.15);
        Cx i2pi(0.0, kTwoPi);
        auto w = holo::exponential(holo::affine(i2pi, 0.0));
        auto path = holo::sum(
            holo::sum(holo::constant(c), holo::product(holo::constant(r), w)),
            holo::product(holo::constant(r * alpha), holo::int_pow(w, 3)));
        s.gamma = geom::Curve{{geom::AnalyticSeg{path}}};
    }
    s.f = holo::coordinate();  // unused by these checks, required by the schema
    s.basepoint = b;
    s.regions.emplace("U", geom::Region{geom::Disk{0.0, R}});
    s.checks = {check};
    return s;
}

Scenario gen_eq14(rng::Counter& g) {
    Scenario s;
    double rg = g.uniform(0.8, 1.5);
    int dp = g.uniform_int(1, 3);
    int dF = g.uniform_int(1, 3);
    auto draw_roots = [&](int d) {
        std::vector<Cx> roots;
        while (int(roots.size()) < d) {
            Cx r = g.in_disk(0.0, 2.0 * rg);
            if (std::abs(std::abs(r) - rg) >= 0.07 * rg) roots.push_back(r);
        }
        return roots;
    };
    std::vector<Cx> pr = draw_roots(dp);
    std::vector<Cx> fr = draw_roots(dF);
    s.p_roots = pr;
    s.f = holo::product(holo::from_roots(std::move(pr)), holo::from_roots(std::move(fr)));
    s.gamma = circle(0.0, rg);
    s.checks = {"eq14"};
    return s;
}

}  // namespace

Report run_scenario(const Scenario& s) {
    Report rep;
    rep.scenario_id = s.id;
    rep.seed = s.seed;
    auto t0 = std::chrono::steady_clock::now();
    for (const auto& name : s.checks) {
        CheckRecord rec;
        rec.check = name;
        try {
            bounds::BoundCheck c = dispatch_check(s, name);
            if (s.check_tol != 1e-6) {
                double budget = 0.0;
                if (auto it = c.inputs.find("error_budget"); it != c.inputs.end())
                    budget = it->second;
                c.holds = c.lhs <= c.rhs * (1.0 + s.check_tol) + budget;
                c.slack = c.rhs - c.lhs;
            }
            for (const char* key : {"epsilon", "D", "gamma_length", "kappa"})
                if (auto it = c.inputs.find(key); it != c.inputs.end())
                    rep.measured[key] = it->second;
            rec.status = "ok";
            rec.result = std::move(c);
        } catch (const HypothesisError& e) {
            rec.status = "hypothesis_error";
            rec.message = e.what();
        }
        rep.records.push_back(std::move(rec));
    }
    rep.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

std::vector<Scenario> generate_suite(uint64_t seed, int n, const std::string& kind) {
    const auto& known = known_checks();
    if (std::find(known.begin(), known.end(), kind) == known.end())
        throw ValidationError("unknown suite kind '" + kind + "'");
    std::vector<Scenario> out;
    out.reserve(size_t(n));
    for (int i = 0; i < n; ++i) {
        rng::Counter g(seed, uint64_t(i));
        Scenario s;
        if (kind == "growth_zeros") s = gen_growth_zeros(g);
        else if (kind == "theorem1") s = gen_theorem1(g);
        else if (kind == "theorem2") s = gen_theorem2(g);
        else if (kind == "lemma1") s = gen_lemma1(g);
        else if (kind == "lemma2") s = gen_lemma2(g);
        else if (kind == "lemma3" || kind == "koebe") s = gen_disk_automorphism(g, kind);
        else s = gen_eq14(g);
        s.id = indexed_id(kind, i);
        s.seed = seed;
        out.push_back(std::move(s));
    }
    return out;
}

SuiteSummary run_suite(uint64_t seed, int n, const std::string& kind) {
    SuiteSummary sum;
    sum.kind = kind;
    sum.seed = seed;
    sum.n = n;
    sum.scenarios = generate_suite(seed, n, kind);
    std::vector<double> slacks;
    for (const auto& s : sum.scenarios) {
        Report r = run_scenario(s);
        for (const auto& rec : r.records) {
            if (!rec.result) {
                ++sum.hypothesis_errors;
                continue;
            }
            if (rec.result->holds) ++sum.holds; else ++sum.fails;
            double num = std::max(rec.result->rhs, 1e-300);
            double den = std::max(rec.result->lhs, 1e-6);
            slacks.push_back(std::clamp(std::log10(num / den), -308.0, 308.0));
        }
        sum.reports.push_back(std::move(r));
    }
    if (!slacks.empty()) {
        std::sort(slacks.begin(), slacks.end());
        size_t m = slacks.size();
        sum.median_log10_slack =
            m % 2 ? slacks[m / 2] : 0.5 * (slacks[m / 2 - 1] + slacks[m / 2]);
    }
    return sum;
}

int exit_code_for(const std::vector<Report>& reports) {
    bool any_fail = false, any_hyp = false;
    for (const auto& r : reports)
        for (const auto& rec : r.records) {
            if (!rec.result) any_hyp = true;
            else if (!rec.result->holds) any_fail = true;
        }
    if (any_hyp) return 2;
    return any_fail ? 1 : 0;
}

const std::vector<std::pair<std::string, int>>& check_all_battery() {
    static const std::vector<std::pair<std::string, int>> battery = {
        {"growth_zeros", 1000}, {"theorem1", 300}, {"theorem2", 50},
        {"lemma1", 200},        {"lemma2", 200},   {"lemma3", 200},
        {"koebe", 200},         {"eq14", 200},
    };
    return battery;
}

}  // namespace argvar::cli
