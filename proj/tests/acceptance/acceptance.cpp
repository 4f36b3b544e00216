// Acceptance checks: one PASS/FAIL line per criterion.
//
//   opnet_acceptance [--only N] [--update-golden] [--jobs J]

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "../unit/oracles.hpp"
#include "opnet/distributions.hpp"
#include "opnet/dynamics.hpp"
#include "opnet/formation.hpp"
#include "opnet/graph_metrics.hpp"
#include "opnet/hk.hpp"
#include "opnet/io.hpp"
#include "opnet/polarization.hpp"
#include "opnet/rational.hpp"
#include "opnet/spectral.hpp"
#include "opnet/sweep.hpp"
#include "opnet/thresholds.hpp"

using namespace opnet;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

int g_jobs = 0;
bool g_update_golden = false;

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

ModelParams fig_params(double V, int max_steps = 200) {
    ModelParams p;
    p.n = 101;
    p.f = 0.5;
    p.V = V;
    p.max_steps = max_steps;
    return p;
}

Trajectory fig_run(double V) { return run(fig_params(V), uniform_grid(101)); }

int final_components(const Trajectory& tr) { return static_cast<int>(weak_components(tr.final_graph).size()); }

// ---------------------------------------------------------------------------
// Knife edge, shared by criteria 1, 2, 3 and 10.

struct KnifeEdge {
    bool bracket_ok = false;
    double lo = 0.0;  // persistent side
    double hi = 0.0;  // non-persistent side
    int runs = 0;
};

const KnifeEdge& knife_edge() {
    static const KnifeEdge edge = [] {
        KnifeEdge e;
        auto persistent = [&](long k) {
            ++e.runs;
            const auto tr = fig_run(static_cast<double>(k) * 1e-7);
            return tr.classification == Classification::persistent_disagreement;
        };
        // bisection on the 1e-7 grid of [0.034, 0.036]
        long a = 340000, b = 360000;
        if (!persistent(a) || persistent(b)) return e;
        while (b - a > 1) {
            const long m = (a + b) / 2;
            (persistent(m) ? a : b) = m;
        }
        e.bracket_ok = true;
        e.lo = static_cast<double>(a) * 1e-7;
        e.hi = static_cast<double>(b) * 1e-7;
        return e;
    }();
    return edge;
}

const Trajectory& fig1a() {
    static const Trajectory tr = fig_run(knife_edge().lo);
    return tr;
}
const Trajectory& fig1b() {
    static const Trajectory tr = fig_run(knife_edge().hi);
    return tr;
}

// ---------------------------------------------------------------------------

Outcome criterion_1() {
    std::ostringstream d;
    const auto a = fig_run(0.0350916);
    const auto b = fig_run(0.0350917);
    const bool a_ok = a.classification == Classification::persistent_disagreement && final_components(a) == 2;
    bool b_ok = final_components(b) == 1 && has_sign_change(b, b.tol.sign_change);
    const auto& xb = b.final_profile();
    for (std::size_t i = 0; i < xb.size(); ++i) b_ok = b_ok && std::abs(xb[i] - 0.5) <= 1e-6;
    d << "literal V=0.0350916 -> " << (a.classification ? to_string(*a.classification) : "unterminated") << " ("
      << final_components(a) << " components), V=0.0350917 -> "
      << (b.classification ? to_string(*b.classification) : "unterminated") << " (" << final_components(b)
      << " components, x[50]=" << fmt("%.6f", xb[50]) << "): " << (a_ok && b_ok ? "met" : "not met");
    if (a_ok && b_ok) return {true, d.str()};

    const auto& e = knife_edge();
    if (!e.bracket_ok) {
        d << "; fallback: no regime flip inside [0.034, 0.036]";
        return {false, d.str()};
    }
    const auto& lo = fig1a();
    const auto& hi = fig1b();
    const bool ok = lo.classification == Classification::persistent_disagreement &&
                    hi.classification == Classification::temporary_disagreement;
    d << "; fallback: V* in [" << fmt("%.7f", e.lo) << ", " << fmt("%.7f", e.hi) << "] after " << e.runs
      << " runs, below " << (lo.classification ? to_string(*lo.classification) : "unterminated") << " ("
      << final_components(lo) << " components), above "
      << (hi.classification ? to_string(*hi.classification) : "unterminated") << " (consensus "
      << fmt("%.5f", hi.final_profile()[50]) << ")";
    return {ok, d.str()};
}

// First t from which the graph never changes again.
int frozen_from(const Trajectory& tr) {
    int t = tr.steps();
    while (t > 1 && tr.graphs[static_cast<std::size_t>(t - 2)] == tr.graphs[static_cast<std::size_t>(t - 1)]) --t;
    return t;
}

Outcome criterion_2() {
    std::ostringstream d;
    const auto& a = fig1a();
    const int frozen = frozen_from(a);
    const bool a_ok = frozen == 6;
    d << "persistent side (V=" << fmt("%.7f", a.params.V) << ") graph frozen from period " << frozen;

    const auto& b = fig1b();
    const std::size_t n = b.initial.size();
    int jump = -1;
    for (int t = 1; t <= b.steps(); ++t) {
        if (b.graphs[static_cast<std::size_t>(t - 1)].edge_count() == n * (n - 1)) {
            jump = t;
            break;
        }
    }
    bool b_ok = jump > 1;
    int plateau = 0;
    if (b_ok) {
        const auto& before = b.graphs[static_cast<std::size_t>(jump - 2)];
        for (int t = jump - 1; t >= 1 && b.graphs[static_cast<std::size_t>(t - 1)] == before; --t) ++plateau;
        b_ok = plateau >= 20 && plateau <= 35;
        d << "; temporary side (V=" << fmt("%.7f", b.params.V) << ") plateau of " << plateau << " periods ("
          << jump - plateau << "-" << jump - 1 << ", " << before.edge_count() << " links), complete at period "
          << jump;
    } else {
        d << "; temporary side never becomes complete";
    }
    return {a_ok && b_ok, d.str()};
}

Outcome criterion_3() {
    const auto& b = fig1b();
    const double f = b.params.f;
    const double n = static_cast<double>(b.initial.size());
    std::vector<double> lam;
    for (const auto& g : b.graphs) lam.push_back(second_eigenvalue_modulus(hearing_matrix(g, f)));
    const double peak = *std::max_element(lam.begin(), lam.end());
    const auto peak_t = std::max_element(lam.begin(), lam.end()) - lam.begin() + 1;
    bool rises = false;
    for (std::size_t t = 1; t < lam.size(); ++t) rises = rises || lam[t] > lam[t - 1] + 1e-9;
    const double expected = (1 - f) - f / (n - 1);
    const double final_value = lam.back();
    const bool ok = rises && final_value < peak - 1e-6 && std::abs(final_value - expected) <= 1e-8;
    std::ostringstream d;
    d << "|lambda2| " << fmt("%.4f", lam.front()) << " at t=1, peak " << fmt("%.4f", peak) << " at t=" << peak_t
      << ", final " << fmt("%.10f", final_value) << " vs (1-f)-f/(n-1) = " << fmt("%.10f", expected);
    return {ok, d.str()};
}

Outcome criterion_4() {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> uV(1e-4, 0.2), uf(0.01, 0.99), u(0.0, 1.0);
    int bad = 0, linked = 0, equal_cases = 0;
    for (int k = 0; k < 1000; ++k) {
        ModelParams p;
        p.n = 2;
        p.V = uV(rng);
        p.f = uf(rng);
        const double xi = threshold_xi(p.V, p.f);
        double gap;
        if (k % 10 == 0) {
            gap = xi;
            ++equal_cases;
        } else {
            gap = 2.0 * xi * u(rng);
        }
        const OpinionProfile x({0.0, gap});
        const auto g = form_network(p, x);
        const bool expect = gap <= xi;
        const bool both = g.has_edge(0, 1) && g.has_edge(1, 0);
        const bool none = g.edge_count() == 0;
        if (!(expect ? both : none)) ++bad;
        linked += both;
    }
    std::ostringstream d;
    d << "1000 triples (" << equal_cases << " at gap = xi), " << linked << " linked, " << bad << " mismatches";
    return {bad == 0, d.str()};
}

// ---------------------------------------------------------------------------

struct OrderViolations {
    int runs_failed = 0;
    std::map<std::string, int> kinds;       // property -> runs violating it
    std::map<int, std::pair<int, int>> by_f;  // f decile -> (failed, total)
    double max_residual = 0.0;
};

bool refines(const std::vector<std::vector<int>>& fine, const std::vector<std::vector<int>>& coarse, std::size_t n) {
    std::vector<int> owner(n);
    for (std::size_t c = 0; c < coarse.size(); ++c)
        for (int v : coarse[c]) owner[static_cast<std::size_t>(v)] = static_cast<int>(c);
    for (const auto& comp : fine)
        for (int v : comp)
            if (owner[static_cast<std::size_t>(v)] != owner[static_cast<std::size_t>(comp.front())]) return false;
    return true;
}

OrderViolations order_suite(UpdateRule rule) {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> un(2, 40);
    std::uniform_real_distribution<double> uV(1e-4, 0.1), uf(0.01, 0.99);
    OrderViolations out;
    for (int k = 0; k < 200; ++k) {
        ModelParams p;
        p.n = un(rng);
        p.V = uV(rng);
        p.f = uf(rng);
        p.rule = rule;
        p.max_steps = 200;
        const OpinionProfile x0(oracle::random_sorted(rng, p.n));
        const auto tr = run(p, x0);
        std::map<std::string, bool> hit;
        for (int t = 1; t <= tr.steps(); ++t) {
            const auto& g = tr.graphs[static_cast<std::size_t>(t - 1)];
            const auto& x = tr.at(t);
            const auto& prev = tr.at(t - 1);
            if (!x.ordered()) hit["ordered"] = true;
            if (!g.is_windowed()) hit["windowed"] = true;
            // window endpoints taken over the owner's closed neighbourhood; with
            // open ones every clique would count as a violation
            int last_lo = -1, last_hi = -1;
            for (std::size_t i = 0; i < g.size(); ++i) {
                const auto& row = g.row(i);
                if (row.empty()) continue;
                const int lo = std::min(row.front(), static_cast<int>(i));
                const int hi = std::max(row.back(), static_cast<int>(i));
                if (lo < last_lo || hi < last_hi) hit["endpoints"] = true;
                last_lo = lo;
                last_hi = hi;
            }
            if (t > 1 && !refines(weak_components(g), weak_components(tr.graphs[static_cast<std::size_t>(t - 2)]),
                                  g.size()))
                hit["irreversibility"] = true;
            if (x.min() < prev.min() - 1e-15 || x.max() > prev.max() + 1e-15) hit["hull"] = true;
            const auto rep = solve_best_responses(g, prev.values(), std::vector<double>(g.size(), p.f));
            out.max_residual = std::max(out.max_residual, rep.residual);
            if (rep.residual >= 1e-10) hit["residual"] = true;
        }
        const int decile = std::min(9, static_cast<int>(p.f * 10));
        auto& cell = out.by_f[decile];
        ++cell.second;
        if (!hit.empty()) {
            ++out.runs_failed;
            ++cell.first;
            for (const auto& [kind, _] : hit) ++out.kinds[kind];
        }
    }
    return out;
}

std::string describe(const OrderViolations& v) {
    std::ostringstream d;
    d << v.runs_failed << "/200 runs violate";
    for (const auto& [kind, count] : v.kinds) d << ' ' << kind << '=' << count;
    d << "; failing by f decile:";
    for (const auto& [decile, c] : v.by_f) d << ' ' << fmt("%.1f", decile / 10.0) << ':' << c.first << '/' << c.second;
    d << "; max residual " << fmt("%.1e", v.max_residual);
    return d.str();
}

Outcome criterion_5() {
    const auto hearing = order_suite(UpdateRule::hearing);
    const auto simultaneous = order_suite(UpdateRule::simultaneous);
    std::ostringstream d;
    d << "hearing rule: " << describe(hearing) << " | simultaneous solve (diagnostic): " << describe(simultaneous);
    return {hearing.runs_failed == 0, d.str()};
}

Outcome criterion_6() {
    std::mt19937_64 rng(6);
    std::uniform_int_distribution<int> un(2, 8);
    std::uniform_real_distribution<double> uV(1e-4, 0.1), uf(0.01, 0.99);
    int agents = 0, bad = 0;
    for (int k = 0; k < 100; ++k) {
        ModelParams p;
        p.n = un(rng);
        p.V = uV(rng);
        p.f = uf(rng);
        const auto x = oracle::random_sorted(rng, p.n);
        const OpinionProfile prof(x);
        for (int i = 0; i < p.n; ++i, ++agents)
            if (best_window(p, prof, i) != oracle::best_subset(p.V, p.f, x, i)) ++bad;
    }
    std::uniform_int_distribution<int> small(2, 4);
    int games = 0, eq_total = 0, game_bad = 0;
    for (int k = 0; k < 40; ++k, ++games) {
        const int n = small(rng);
        auto inst = RationalInstance::homogeneous(oracle::random_sorted(rng, n), uf(rng), uV(rng));
        const auto w = enumerate_equilibria(inst, DeviationSet::windows, g_jobs == 0 ? 1 : g_jobs);
        const auto s = enumerate_equilibria(inst, DeviationSet::all_subsets, g_jobs == 0 ? 1 : g_jobs);
        bool same = w.size() == s.size();
        for (std::size_t e = 0; same && e < w.size(); ++e) same = w[e].graph == s[e].graph;
        game_bad += !same;
        eq_total += static_cast<int>(w.size());
    }
    std::ostringstream d;
    d << agents << " best responses on 100 instances (n<=8), " << bad << " differ from subset search; " << games
      << " games (n<=4), " << eq_total << " window equilibria, " << game_bad << " enumerations differ";
    return {bad == 0 && game_bad == 0, d.str()};
}

// ---------------------------------------------------------------------------

bool reaches_consensus(const SweepCell& c) {
    return c.classification == Classification::monotone_consensus ||
           c.classification == Classification::temporary_disagreement;
}

Outcome criterion_7() {
    SweepConfig cfg;
    cfg.jobs = g_jobs;
    const auto cells = run_sweep(cfg, uniform_grid(cfg.n));
    int p5_cells = 0, p5_bad = 0, p6_cells = 0, p6_bad = 0, p6_late = 0, temp = 0, temp_bad = 0, temp_asym = 0, wide = 0,
        wide_bad = 0, errors = 0, unterminated = 0;
    std::vector<std::string> wide_cells;
    const auto x0 = uniform_grid(cfg.n);
    // largest |x_i + x_{n-1-i} - 1| at the end of a rerun: nonzero when a
    // tie broke the mirror symmetry of the uniform start
    auto asymmetry = [&](const SweepCell& c, int steps) {
        ModelParams p;
        p.n = cfg.n;
        p.f = c.f;
        p.V = c.V;
        p.max_steps = steps;
        RunOptions opt;
        opt.keep_graphs = false;
        const auto tr = run(p, x0, opt);
        double a = 0.0;
        const auto& x = tr.final_profile();
        for (std::size_t i = 0; i < x.size(); ++i) a = std::max(a, std::abs(x[i] + x[x.size() - 1 - i] - 1.0));
        return std::pair{a, tr};
    };
    for (const auto& c : cells) {
        if (!c.error.empty()) ++errors;
        if (!c.classification) ++unterminated;
        const auto rf = region_predicates(c.V, c.f);
        if (rf.consensus) {
            ++p5_cells;
            if (c.classification == Classification::persistent_disagreement || c.components_final != 1) ++p5_bad;
        }
        if (rf.divergence) {
            ++p6_cells;
            if (c.components_final < 2) {
                // undecided at the horizon: the divergence bound is a long-run statement
                if (c.classification) {
                    ++p6_bad;
                } else {
                    ++p6_late;
                    const auto [a, tr] = asymmetry(c, 500);
                    if (final_components(tr) < 2) ++p6_bad;
                }
            }
        }
        if (c.classification == Classification::temporary_disagreement) {
            ++temp;
            if (c.diameter_t1 != 4) {
                ++temp_bad;
                if (asymmetry(c, cfg.max_steps).first > 1e-9) ++temp_asym;
            }
        }
        if (!c.diameter_t1 || *c.diameter_t1 >= 5) {
            ++wide;
            if (reaches_consensus(c)) {
                ++wide_bad;
                wide_cells.push_back("f=" + fmt("%.4f", c.f) + " V=" + fmt("%.5f", c.V));
            }
        }
    }
    std::ostringstream d;
    d << cells.size() << " cells (n=81, T=20): consensus region " << p5_bad << "/" << p5_cells << " violations, divergence region " << p6_bad
      << "/" << p6_cells << " (" << p6_late << " undecided at T=20 rerun to 500 steps), temporary with diameter != 4: "
      << temp_bad << "/" << temp << " (" << temp_asym << " with broken mirror symmetry)"
      << ", diameter >= 5 reaching consensus: " << wide_bad << "/" << wide;
    for (const auto& w : wide_cells) d << " [" << w << "]";
    d << " (" << unterminated << " unterminated, " << errors << " errors)";
    return {p5_bad == 0 && p6_bad == 0 && temp_bad == 0 && wide_bad == 0 && errors == 0, d.str()};
}

// Each z >= 0 whose condition holds costs one more hop from an extreme agent
// to the other end (z = 0: the extreme agent alone cannot span [0,1]).
int predicted_diameter(double V, double f) {
    int z = 0;
    while (z < 1000 && diameter_condition(V, f, z)) ++z;
    return z + 1;
}

struct DiameterMatch {
    int total = 0;
    int match = 0;
    int far = 0;  // mismatches with no differently predicted neighbour
    std::map<std::string, int> offsets;
};

DiameterMatch diameter_match(int points) {
    SweepConfig cfg;
    cfg.n = 80;
    cfg.f_points = points;
    cfg.v_points = points;
    const auto fs = linspace(cfg.f_lo, cfg.f_hi, cfg.f_points);
    const auto vs = linspace(cfg.v_lo, cfg.v_hi, cfg.v_points);
    const auto x0 = uniform_grid(cfg.n);
    const int rows = cfg.f_points, cols = cfg.v_points;
    std::vector<int> pred(static_cast<std::size_t>(rows * cols));
    std::vector<std::optional<int>> actual(pred.size());
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            ModelParams p;
            p.n = cfg.n;
            p.f = fs[static_cast<std::size_t>(r)];
            p.V = vs[static_cast<std::size_t>(c)];
            const std::size_t k = static_cast<std::size_t>(r * cols + c);
            pred[k] = predicted_diameter(p.V, p.f);
            actual[k] = directed_diameter(form_network(p, x0, std::max(1, g_jobs)));
        }
    DiameterMatch m;
    m.total = rows * cols;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            const std::size_t k = static_cast<std::size_t>(r * cols + c);
            if (actual[k] == pred[k]) {
                ++m.match;
                continue;
            }
            m.offsets[actual[k] ? std::to_string(*actual[k] - pred[k]) : "inf"]++;
            bool near = false;
            for (int dr = -1; dr <= 1; ++dr)
                for (int dc = -1; dc <= 1; ++dc) {
                    const int rr = r + dr, cc = c + dc;
                    if (rr < 0 || cc < 0 || rr >= rows || cc >= cols) continue;
                    near = near || pred[static_cast<std::size_t>(rr * cols + cc)] != pred[k];
                }
            m.far += !near;
        }
    return m;
}

std::string describe(const DiameterMatch& m) {
    std::ostringstream d;
    d << m.match << "/" << m.total << " match (" << fmt("%.1f", 100.0 * m.match / m.total)
      << "%), mismatches (actual-predicted):";
    for (const auto& [o, cnt] : m.offsets) d << ' ' << o << 'x' << cnt;
    d << ", " << m.far << " away from a boundary";
    return d.str();
}

// Judged on a 100x100 grid (the full sweep preset); the 25x25 sweep grid
// is reported alongside.
Outcome criterion_8() {
    const auto fine = diameter_match(100);
    const auto coarse = diameter_match(25);
    const bool ok = fine.match >= 0.95 * fine.total && fine.far == 0;
    return {ok, "n=80, 100x100: " + describe(fine) + "; 25x25: " + describe(coarse)};
}

Outcome criterion_9() {
    const auto x0 = uniform_grid(101);
    const auto hk_g = hk_neighborhoods(0.2, x0);
    int hk_max = 0;
    for (std::size_t i = 0; i < hk_g.size(); ++i) hk_max = std::max(hk_max, hk_g.degree(i));
    const int hk_ext = std::min(hk_g.degree(0), hk_g.degree(100));

    const auto st = run(fig_params(0.02, 500), x0);
    const auto in = in_degrees(st.first_graph);
    const int st_max = *std::max_element(in.begin(), in.end());
    const bool degrees_ok = hk_ext == 20 && hk_max == 40 && std::abs(in[0] - 19) <= 1 && std::abs(in[100] - 19) <= 1 &&
                            std::abs(st_max - 44) <= 2;

    const auto hk = hk_run(0.5, 0.2, x0, 2000);
    auto sorted = [](std::span<const double> s) {
        std::vector<double> v(s.begin(), s.end());
        std::sort(v.begin(), v.end());
        return v;
    };
    const int hk_clusters = count_clusters(sorted(hk.final_profile().values()), 1e-6);
    const int st_clusters = count_clusters(sorted(st.final_profile().values()), 1e-6);
    const bool clusters_ok = hk.termination == Termination::steady_state && hk_clusters >= 2 && st_clusters >= 2 &&
                             std::abs(hk_clusters - st_clusters) <= 1;
    std::ostringstream d;
    d << "step 1: HK extreme " << hk_ext << ", max " << hk_max << "; strategic in-degree extremes " << in[0] << "/"
      << in[100] << ", max " << st_max << "; long run clusters HK " << hk_clusters << " (" << hk.steps()
      << " steps), strategic " << st_clusters << " (" << st.steps() << " steps)";
    return {degrees_ok && clusters_ok, d.str()};
}

Outcome criterion_10() {
    const std::vector<double> alphas{0.8, 1.0, 1.6};
    bool ok = true;
    std::ostringstream d;
    for (int which = 0; which < 2; ++which) {
        const auto& tr = which == 0 ? fig1b() : fig1a();
        const auto series = opinion_series(tr);
        d << (which == 0 ? "consensus run:" : "; disconnected run:");
        for (double a : alphas) {
            std::vector<double> P;
            for (const auto& x : series) P.push_back(esteban_ray(x, {1.0, a, 10}));
            const auto peak = std::max_element(P.begin(), P.end());
            // first step within round-off of the maximum
            const long peak_t = std::find_if(P.begin(), P.end(), [&](double v) { return v >= *peak - 1e-12; }) - P.begin();
            const bool rises = *peak > P.front() + 1e-12;
            const bool end_ok = which == 0 ? P.back() < 1e-9 : P.back() > 0.01;
            ok = ok && rises && peak_t < 10 && end_ok;
            d << " a=" << fmt("%g", a) << " P0=" << fmt("%.4f", P.front()) << " peak " << fmt("%.4f", *peak) << "@t"
              << peak_t << " final " << fmt("%.3g", P.back());
        }
    }
    return {ok, d.str()};
}

// ---------------------------------------------------------------------------

std::string graph_text(const PeerGraph& g) {
    std::string s;
    for (std::size_t i = 0; i < g.size(); ++i)
        for (int j : g.row(i)) s += (s.empty() ? "" : ",") + std::to_string(i) + ">" + std::to_string(j);
    return s.empty() ? "empty" : s;
}

std::string example_b1_report() {
    std::ostringstream r;
    const double f = 1.0 / 3;
    const std::vector<double> theta{0.0, 0.5, 1.0};
    const PeerGraph left(std::vector<PeerSet>{{1}, {0}, {}});
    const PeerGraph right(std::vector<PeerSet>{{}, {2}, {1}});
    r << "# three agents, theta = (0, 1/2, 1), f = 1/3, V sampled inside (1/32, 3/64)\n";
    r << "# left = 0<->1 with 2 isolated, right = 1<->2 with 0 isolated; deviations over all subsets\n";
    r << "V,equilibria,left,right,both,list\n";
    for (int k = 1; k <= 20; ++k) {
        const double V = 1.0 / 32 + (3.0 / 64 - 1.0 / 32) * k / 21.0;
        const auto inst = RationalInstance::homogeneous(theta, f, V);
        const auto eq = enumerate_equilibria(inst, DeviationSet::all_subsets);
        bool has_left = false, has_right = false;
        std::string list;
        for (const auto& e : eq) {
            has_left = has_left || e.graph == left;
            has_right = has_right || e.graph == right;
            list += (list.empty() ? "" : " | ") + graph_text(e.graph);
        }
        r << fmt("%.10f", V) << ',' << eq.size() << ',' << (has_left ? "yes" : "no") << ','
          << (has_right ? "yes" : "no") << ',' << (has_left && has_right ? "yes" : "no") << ',' << list << '\n';
    }
    return r.str();
}

Outcome criterion_11() {
    std::ostringstream d;
    const auto two = RationalInstance::homogeneous({0.0, 0.5}, 1.0 / 3, 0.04);
    const auto x = solve_given_network(two, PeerGraph::complete(2));
    const bool exact = std::abs(x[0] - 0.125) <= 1e-12 && std::abs(x[1] - 0.375) <= 1e-12;
    d << "mutual pair solves to (" << fmt("%.15f", x[0]) << ", " << fmt("%.15f", x[1]) << ")";

    const std::string report = example_b1_report();
    const std::string path = std::string(OPNET_GOLDEN_DIR) + "/example_b1.txt";
    if (g_update_golden) {
        std::ofstream(path) << report;
        d << "; golden file rewritten";
    }
    std::ifstream in(path);
    std::stringstream golden;
    golden << in.rdbuf();
    const bool same = in.good() || in.eof() ? golden.str() == report : false;
    int both = 0, points = 0;
    std::istringstream lines(report);
    for (std::string line; std::getline(lines, line);) {
        if (line.empty() || line[0] == '#' || line[0] == 'V') continue;
        ++points;
        std::vector<std::string> cols;
        std::stringstream ls(line);
        for (std::string c; std::getline(ls, c, ',');) cols.push_back(c);
        both += cols.size() > 4 && cols[4] == "yes";
    }
    d << "; both mirror equilibria at " << both << "/" << points << " sampled V; report "
      << (same ? "matches" : "differs from") << " golden file";
    return {exact && same, d.str()};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance checks"};
    int only = 0;
    app.add_option("--only", only, "run a single criterion (1-11)")->check(CLI::Range(1, 11));
    app.add_flag("--update-golden", g_update_golden, "rewrite the golden files");
    app.add_option("--jobs", g_jobs, "worker threads for the sweep, 0 = hardware")->check(CLI::NonNegativeNumber);
    CLI11_PARSE(app, argc, argv);

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"regime split at the knife edge", criterion_1},
        {"graph freeze and explosion", criterion_2},
        {"second eigenvalue trajectory", criterion_3},
        {"two-agent link threshold", criterion_4},
        {"ordered configurations", criterion_5},
        {"brute-force equivalence", criterion_6},
        {"phase diagram propositions", criterion_7},
        {"period-1 diameter prediction", criterion_8},
        {"bounded-confidence comparison", criterion_9},
        {"polarization curves", criterion_10},
        {"three-agent example audit", criterion_11},
    };
    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        if (only != 0 && static_cast<int>(k) + 1 != only) continue;
        Outcome o;
        try {
            o = criteria[k].second();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        failed += !o.pass;
        std::cout << "criterion " << k + 1 << " " << (o.pass ? "PASS" : "FAIL") << " " << criteria[k].first << ": "
                  << o.detail << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
