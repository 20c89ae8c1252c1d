// Acceptance battery: one pass/fail line per criterion, exit 0 iff all pass.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "argvar/cli.hpp"
#include "argvar/errors.hpp"
#include "argvar/rng.hpp"

using namespace argvar;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void verdict(int idx, const std::string& desc, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s%s%s\n", ok ? "PASS" : "FAIL", idx, desc.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a, double b = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

// ---------------------------------------------------------------------------

void criterion1_zero_counts() {
    auto t0 = Clock::now();
    int wrong = 0;
    for (int i = 0; i < 500; ++i) {
        rng::Counter g(101, uint64_t(i));
        int d = g.uniform_int(1, 8);
        double R = g.uniform(1.0, 2.0);
        geom::Region reg;
        if (i % 2 == 0)
            reg.shape = geom::Disk{0.0, R};
        else
            reg.shape = geom::Rect{Cx(-R, -R), Cx(R, R)};
        std::vector<Cx> roots;
        for (int k = 0; k < d; ++k) roots.push_back(g.in_disk(0.0, 0.7 * R));
        int n = bounds::count_zeros(holo::from_roots(std::move(roots)), reg);
        if (n != d) ++wrong;
    }
    double dt = seconds_since(t0);
    verdict(1, "argument-principle zero counts exact on 500 random polynomials",
            wrong == 0 && dt < 60.0,
            fmt("wrong=%.0f elapsed=%.1fs", double(wrong), dt));
}

void criterion2_variation_exactness() {
    bool ok = true;
    std::string detail;
    geom::Curve unit_circle{{geom::ArcSeg{0.0, 1.0, 0.0, kTwoPi}}};
    double worst_monomial = 0.0;
    for (int n = 1; n <= 10; ++n) {
        double v = bounds::variation_of_argument(holo::int_pow(holo::coordinate(), n),
                                                 unit_circle);
        worst_monomial = std::max(worst_monomial, std::abs(v - kTwoPi * n));
    }
    if (worst_monomial > 1e-6) ok = false;

    // 50 Blaschke-product-style rationals vs a dense-sampling oracle
    double worst_rational = 0.0;
    for (int i = 0; i < 50; ++i) {
        rng::Counter g(202, uint64_t(i));
        int k = g.uniform_int(1, 4);
        holo::ExprPtr f = holo::constant(1.0);
        for (int j = 0; j < k; ++j) {
            Cx a = g.in_disk(0.0, 0.7);
            auto factor = holo::quotient(holo::affine(1.0, -a),
                                         holo::affine(-std::conj(a), 1.0));
            f = holo::product(f, factor);
        }
        double v = bounds::variation_of_argument(f, unit_circle);
        const int m = 100000;
        double oracle = 0.0, prev = std::arg(holo::eval(f, Cx(1.0, 0.0)));
        for (int s = 1; s <= m; ++s) {
            double th = kTwoPi * s / m;
            double cur = std::arg(holo::eval(f, std::polar(1.0, th)));
            double d = cur - prev;
            while (d > kPi) d -= kTwoPi;
            while (d < -kPi) d += kTwoPi;
            oracle += std::abs(d);
            prev = cur;
        }
        worst_rational = std::max(worst_rational, std::abs(v - oracle));
    }
    if (worst_rational > 1e-4) ok = false;
    verdict(2, "variation of argument exact on monomials, matches dense oracle", ok,
            fmt("monomial_err=%.3g rational_err=%.3g", worst_monomial, worst_rational));
}

void suite_criterion(int idx, const std::string& desc, const std::string& kind, int n,
                     const std::function<bool(const cli::SuiteSummary&, std::string&)>&
                         extra = nullptr) {
    cli::SuiteSummary s = cli::run_suite(7, n, kind);
    bool ok = s.fails == 0 && s.hypothesis_errors == 0 && s.holds > 0;
    std::string detail = fmt("violations=%.0f hypothesis_errors=%.0f",
                             double(s.fails), double(s.hypothesis_errors)) +
                         fmt(" median_log10_slack=%.4g", s.median_log10_slack);
    if (extra && !extra(s, detail)) ok = false;
    verdict(idx, desc, ok, detail);
}

void criterion4_theorem1() {
    suite_criterion(4, "Theorem 1 on 300 randomized scenarios (D/eps > 3, +2pi form)",
                    "theorem1", 300,
                    [](const cli::SuiteSummary& s, std::string& detail) {
                        int bad = 0;
                        for (const auto& r : s.reports)
                            for (const auto& rec : r.records) {
                                if (!rec.result) continue;
                                const auto& in = rec.result->inputs;
                                if (in.at("D") / in.at("epsilon") <= 3.0) ++bad;
                                if (in.at("intermediate_form_holds") != 1.0) ++bad;
                            }
                        detail += fmt(" ratio_or_2pi_failures=%.0f", double(bad));
                        return bad == 0;
                    });
}

void criterion5_theorem2() {
    suite_criterion(
        5, "Theorem 2 on 50 log-cover scenarios + pi_gap deck invariance", "theorem2",
        50, [](const cli::SuiteSummary& s, std::string& detail) {
            int bad = 0;
            double worst = 0.0;
            for (const auto& sc : s.scenarios) {
                auto shift = [](cover::SurfaceRegion r, int k) {
                    for (auto& p : r.pieces) p.sheet += k;
                    return r;
                };
                const auto& u2 = sc.sregions.at("U2");
                const auto& u1 = sc.sregions.at("U1");
                if (u2.pieces.size() < 2) ++bad;  // must span >= 1.5 sheets
                double g0 = cover::pi_gap(u2, u1);
                double g2 = cover::pi_gap(shift(u2, 2), shift(u1, 2));
                worst = std::max(worst, std::abs(g0 - g2));
                auto c0 = cover::lift_curve(*sc.gamma, *sc.cov, sc.gamma_start_sheet);
                auto c2 = cover::lift_curve(*sc.gamma, *sc.cov, sc.gamma_start_sheet + 2);
                worst = std::max(worst, std::abs(cover::pi_gap(c0, u2) -
                                                 cover::pi_gap(c2, shift(u2, 2))));
                if (worst > 1e-9) ++bad;
            }
            detail += fmt(" deck_invariance_err=%.3g", worst);
            return bad == 0;
        });
}

void criterion7_lemma3_koebe() {
    auto scenarios = cli::generate_suite(7, 200, "lemma3");
    int fails = 0, hyp = 0;
    for (auto& s : scenarios) {
        s.checks = {"lemma3", "koebe"};
        cli::Report r = cli::run_scenario(s);
        for (const auto& rec : r.records) {
            if (!rec.result) ++hyp;
            else if (!rec.result->holds) ++fails;
        }
    }
    verdict(7, "Lemma 3 and Koebe ratio bound on 200 disk-automorphism scenarios",
            fails == 0 && hyp == 0,
            fmt("violations=%.0f hypothesis_errors=%.0f", double(fails), double(hyp)));
}

void criterion8_poincare_grid() {
    int bad = 0;
    double min_slack = 1e300;
    for (int i = 0; i < 20; ++i) {
        for (int j = 0; j < 20; ++j) {
            double R = 1.0 + 0.25 * j;
            double t = (i + 1) / 21.0;  // r/R in (0, 1)
            double r = t * R;
            double rho = geom::poincare_distance_disk(Cx(-t, 0.0), Cx(t, 0.0));
            double bound = 2.0 * (2.0 * r) / (R - r);  // 2D/eps, both exact
            if (rho > bound * (1.0 + 1e-9)) ++bad;
            min_slack = std::min(min_slack, bound - rho);
        }
    }
    verdict(8, "Poincare diameter vs 2D/eps on a 20x20 concentric-disk grid", bad == 0,
            fmt("violations=%.0f min_slack=%.4g", double(bad), min_slack));
}

void criterion9_bernstein_exact() {
    double worst = 0.0;
    for (int d : {1, 3, 7}) {
        for (auto [r, R] : std::vector<std::pair<double, double>>{
                 {0.5, 2.0}, {1.0, 3.0}, {0.25, 1.5}}) {
            auto b = bounds::bernstein_index(
                holo::int_pow(holo::coordinate(), d),
                geom::Region{geom::Disk{0.0, r}}, geom::Region{geom::Disk{0.0, R}});
            double expect = d * std::log(R / r);
            worst = std::max(worst, std::abs(b.B - expect) / expect);
        }
    }
    verdict(9, "bernstein_index(z^d, disk r, disk R) = d log(R/r)", worst <= 1e-5,
            fmt("worst_rel_err=%.3g", worst));
}

std::string read_stripped(const fs::path& p, bool strip_elapsed) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (!strip_elapsed) return buf.str();
    std::istringstream lines(buf.str());
    std::string line, out;
    while (std::getline(lines, line))
        if (line.find("elapsed") == std::string::npos) out += line + "\n";
    return out;
}

void criterion10_determinism() {
    fs::path base = fs::temp_directory_path() / "argvar_acceptance";
    fs::remove_all(base);
    fs::create_directories(base);
    auto run = [&](const std::string& dir) {
        std::string cmd = std::string(ARGVAR_CLI_PATH) + " check-all --seed 7 --out " +
                          (base / dir).string() + " >/dev/null 2>&1";
        int rc = std::system(cmd.c_str());
        return rc != -1 && WEXITSTATUS(rc) == 0;
    };
    bool ok = run("a") && run("b");
    int compared = 0, differing = 0;
    if (ok) {
        for (const auto& e : fs::recursive_directory_iterator(base / "a")) {
            if (!e.is_regular_file()) continue;
            fs::path rel = fs::relative(e.path(), base / "a");
            fs::path other = base / "b" / rel;
            ++compared;
            if (!fs::exists(other)) { ++differing; continue; }
            bool json = e.path().extension() == ".json";
            if (read_stripped(e.path(), json) != read_stripped(other, json))
                ++differing;
        }
        if (compared == 0 || differing > 0) ok = false;
    }
    verdict(10, "check-all --seed 7 twice is byte-identical modulo timing", ok,
            fmt("files=%.0f differing=%.0f", double(compared), double(differing)));
    fs::remove_all(base);
}

}  // namespace

int main() {
    auto t0 = Clock::now();
    criterion1_zero_counts();
    criterion2_variation_exactness();
    suite_criterion(3, "Growth-and-Zeros on 1000 randomized polynomial scenarios",
                    "growth_zeros", 1000);
    criterion4_theorem1();
    criterion5_theorem2();
    suite_criterion(6, "Lemma 2 on 200 scenarios with F = f/p computed directly",
                    "lemma2", 200);
    criterion7_lemma3_koebe();
    criterion8_poincare_grid();
    criterion9_bernstein_exact();
    criterion10_determinism();
    std::printf("acceptance: %d/10 criteria passed (%.1fs)\n", 10 - g_failures,
                seconds_since(t0));
    return g_failures == 0 ? 0 : 1;
}
