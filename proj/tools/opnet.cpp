// opnet: command-line front end for the opinion/network co-evolution model.
//
//   opnet simulate --n 101 --f 0.5 --V 0.035 --dist uniform --plot
//   opnet sweep --n 81 --steps 20 --grid 25x25 --jobs 4 --plot
//   opnet hk --n 101 --f 0.5 --eps 0.2
//   opnet rational --theta 0,0.5,1 --f 0.333333 --V 0.04 --enumerate
//   opnet analyze out/run.json --polarization --alpha 0.8,1.0,1.6
//
// Exit codes: 0 ok, 1 runtime error, 2 bad flags.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "opnet/distributions.hpp"
#include "opnet/dynamics.hpp"
#include "opnet/formation.hpp"
#include "opnet/graph_metrics.hpp"
#include "opnet/hk.hpp"
#include "opnet/io.hpp"
#include "opnet/rational.hpp"
#include "opnet/sweep.hpp"
#include "opnet/thresholds.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace opnet;

namespace {

// flag errors found after parsing
struct FlagError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DistFlags {
    std::string name = "uniform";
    double variance = 0.0546;
    double mode_gap = 0.5;
    double mode_width = 0.3;

    void add(CLI::App* app) {
        app->add_option("--dist", name, "initial distribution")
            ->check(CLI::IsMember({"uniform", "normal", "bimodal"}))
            ->capture_default_str();
        app->add_option("--variance", variance, "target variance for --dist normal")->capture_default_str();
        app->add_option("--mode-gap", mode_gap, "distance between bimodal centres")->capture_default_str();
        app->add_option("--mode-width", mode_width, "width of each bimodal block")->capture_default_str();
    }

    OpinionProfile make(int n, json& meta) const {
        meta["name"] = name;
        meta["n"] = n;
        if (name == "uniform") return uniform_grid(n);
        if (name == "normal") {
            PiecewiseNormalInfo info;
            auto x = piecewise_normal(n, variance, &info);
            meta["target_variance"] = variance;
            meta["construction"] = "five symmetric gap blocks, spacings s*r^2, s*r, s (tails to centre)";
            meta["tail_gaps"] = info.tail_gaps;
            meta["shoulder_gaps"] = info.shoulder_gaps;
            meta["centre_gaps"] = info.centre_gaps;
            meta["ratio"] = info.ratio;
            meta["centre_spacing"] = info.centre_spacing;
            meta["variance"] = info.variance;
            return x;
        }
        meta["mode_gap"] = mode_gap;
        meta["mode_width"] = mode_width;
        return bimodal(n, mode_gap, mode_width);
    }
};

json flags_json(const CLI::App* app) {
    json j = json::object();
    for (const CLI::Option* opt : app->get_options()) {
        const std::string name = opt->get_name();
        if (name == "--help" || name.empty()) continue;
        if (opt->count() > 0) {
            const auto& r = opt->results();
            j[name] = r.size() == 1 ? json(r.front()) : json(r);
        } else {
            j[name] = opt->get_default_str();
        }
    }
    return j;
}

std::vector<double> parse_list(const std::string& s, const char* what) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw FlagError(std::string("bad number '") + item + "' in " + what);
        }
    }
    if (out.empty()) throw FlagError(std::string("empty list for ") + what);
    return out;
}

void write_file(const fs::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    out << content;
}

template <class Fn>
void write_with(const fs::path& p, Fn fn) {
    std::ostringstream os;
    fn(os);
    write_file(p, os.str());
}

json result_json(const Trajectory& tr) {
    json r;
    r["termination"] = to_string(tr.termination);
    r["steps"] = tr.steps();
    r["classification"] = tr.classification ? json(to_string(*tr.classification)) : json(nullptr);
    const auto comps = weak_components(tr.final_graph);
    r["components_final"] = comps.size();
    r["component_means"] = component_means(tr.final_graph, tr.final_profile());
    if (tr.classification && *tr.classification != Classification::persistent_disagreement) {
        double s = 0.0;
        for (double v : tr.final_profile().values()) s += v;
        r["consensus_value"] = s / static_cast<double>(tr.final_profile().size());
    } else {
        r["consensus_value"] = nullptr;
    }
    return r;
}

// ---- simulate ----

struct SimulateFlags {
    int n = 101;
    double f = 0.5;
    double V = 0.0;
    int steps = 200;
    std::string rule = "hearing";
    bool edges = false;
    bool plot = false;
    std::string alphas = "0.8,1.0,1.6";
    int segments = 10;
    int jobs = 1;
    std::string out = ".";
    DistFlags dist;
};

void cmd_simulate(const SimulateFlags& fl, const CLI::App* app) {
    const auto alphas = parse_list(fl.alphas, "--alpha");
    ModelParams p;
    p.n = fl.n;
    p.f = fl.f;
    p.V = fl.V;
    p.max_steps = fl.steps;
    p.rule = update_rule_from_string(fl.rule);
    try {
        p.validate();
    } catch (const std::invalid_argument& e) {
        throw FlagError(e.what());
    }
    json dist_meta;
    const OpinionProfile x0 = fl.dist.make(fl.n, dist_meta);

    RunOptions opt;
    opt.jobs = fl.jobs;
    const Trajectory tr = run(p, x0, opt);
    const auto series = opinion_series(tr);
    const auto metrics = step_metrics(tr.graphs, series, p.f, alphas, fl.segments);

    json rec;
    rec["command"] = "simulate";
    rec["flags"] = flags_json(app);
    rec["params"] = {{"n", p.n}, {"f", p.f}, {"V", p.V}, {"max_steps", p.max_steps}, {"rule", to_string(p.rule)}};
    rec["initial_distribution"] = dist_meta;
    rec["decisions"] = decision_metadata(tr.tol, p.rule);
    rec["result"] = result_json(tr);
    rec["metrics"] = metrics_json(metrics, alphas);
    rec["polarization"] = {{"K", 1.0}, {"segments", fl.segments}, {"alpha", alphas}};
    rec["trajectory"] = series;

    const fs::path dir(fl.out);
    fs::create_directories(dir);
    write_file(dir / "run.json", rec.dump(2) + "\n");
    write_with(dir / "trajectory.csv", [&](std::ostream& os) { write_trajectory_csv(os, series); });
    if (fl.edges) write_with(dir / "edges.csv", [&](std::ostream& os) { write_edges_csv(os, tr.graphs); });
    if (fl.plot) {
        std::ostringstream title;
        title << "n=" << p.n << " f=" << format_real(p.f) << " V=" << format_real(p.V);
        write_with(dir / "trajectory.svg", [&](std::ostream& os) { write_trajectory_svg(os, series, title.str()); });
    }
    std::cout << "steps " << tr.steps() << " (" << to_string(tr.termination) << "), classification "
              << (tr.classification ? to_string(*tr.classification) : "unterminated") << ", components "
              << rec["result"]["components_final"] << "\n";
}

// ---- sweep ----

struct SweepFlags {
    int n = 81;
    int steps = 20;
    std::string grid = "25x25";
    std::string f_range = "0.05,0.95";
    std::string v_range = "0.002,0.2";
    std::string rule = "hearing";
    int jobs = 1;
    bool plot = false;
    bool full = false;
    std::string out = ".";
    DistFlags dist;
};

void cmd_sweep(const SweepFlags& fl, const CLI::App* app) {
    SweepConfig cfg;
    cfg.n = fl.n;
    cfg.max_steps = fl.steps;
    cfg.jobs = fl.jobs;
    cfg.rule = update_rule_from_string(fl.rule);
    std::string grid = fl.full ? "100x100" : fl.grid;
    const auto x = grid.find('x');
    try {
        if (x == std::string::npos) throw std::invalid_argument(grid);
        cfg.f_points = std::stoi(grid.substr(0, x));
        cfg.v_points = std::stoi(grid.substr(x + 1));
    } catch (const std::exception&) {
        throw FlagError("--grid expects AxB, got '" + grid + "'");
    }
    const auto fr = parse_list(fl.f_range, "--f-range");
    const auto vr = parse_list(fl.v_range, "--V-range");
    if (fr.size() != 2 || vr.size() != 2) throw FlagError("ranges take two values lo,hi");
    cfg.f_lo = fr[0];
    cfg.f_hi = fr[1];
    cfg.v_lo = vr[0];
    cfg.v_hi = vr[1];
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw FlagError(e.what());
    }
    json dist_meta;
    const OpinionProfile x0 = fl.dist.make(fl.n, dist_meta);
    const auto cells = run_sweep(cfg, x0);

    const fs::path dir(fl.out);
    fs::create_directories(dir);
    write_with(dir / "grid.csv", [&](std::ostream& os) { write_sweep_csv(os, cells); });
    if (fl.plot) write_with(dir / "heatmap.svg", [&](std::ostream& os) { write_heatmap_svg(os, cells, cfg); });
    json meta;
    meta["command"] = "sweep";
    meta["flags"] = flags_json(app);
    meta["initial_distribution"] = dist_meta;
    meta["decisions"] = decision_metadata(RunTolerances{}, cfg.rule);
    meta["grid_order"] = "f-major: row k covers f[k / V_points], V[k % V_points]";
    write_file(dir / "sweep.json", meta.dump(2) + "\n");

    int errors = 0;
    for (const auto& c : cells) errors += c.error.empty() ? 0 : 1;
    std::cout << cells.size() << " cells written to " << (dir / "grid.csv").string();
    if (errors) std::cout << " (" << errors << " failed)";
    std::cout << "\n";
}

// ---- hk ----

struct HkFlags {
    int n = 101;
    double f = 0.5;
    double eps = 0.2;
    int steps = 200;
    bool plot = false;
    bool edges = false;
    std::string out = ".";
    DistFlags dist;
};

void cmd_hk(const HkFlags& fl, const CLI::App* app) {
    if (fl.n < 2) throw FlagError("--n must be at least 2");
    json dist_meta;
    const OpinionProfile x0 = fl.dist.make(fl.n, dist_meta);
    const HkTrajectory tr = hk_run(fl.f, fl.eps, x0, fl.steps);
    const auto series = opinion_series(tr);
    const auto& g1 = tr.graphs.front();
    const int extreme = std::min(g1.degree(0), g1.degree(g1.size() - 1));
    int max_degree = 0;
    for (std::size_t i = 0; i < g1.size(); ++i) max_degree = std::max(max_degree, g1.degree(i));

    const auto& xf = tr.final_profile();
    const int clusters = count_clusters(xf.values(), 1e-6);
    json rec;
    rec["command"] = "hk";
    rec["flags"] = flags_json(app);
    rec["params"] = {{"n", fl.n}, {"f", fl.f}, {"eps", fl.eps}, {"max_steps", fl.steps}};
    rec["initial_distribution"] = dist_meta;
    rec["decisions"] = {{"neighbourhood", "|x_j - x_i| <= eps (+1e-12), self included in the mean"},
                        {"degree", "neighbours excluding self"},
                        {"steady_state", "largest opinion change below 1e-9"}};
    rec["result"] = {{"termination", to_string(tr.termination)},
                     {"steps", tr.steps()},
                     {"clusters_final", clusters},
                     {"step1_extreme_degree", extreme},
                     {"step1_max_degree", max_degree}};
    rec["trajectory"] = series;

    const fs::path dir(fl.out);
    fs::create_directories(dir);
    write_file(dir / "run.json", rec.dump(2) + "\n");
    write_with(dir / "trajectory.csv", [&](std::ostream& os) { write_trajectory_csv(os, series); });
    if (fl.edges) write_with(dir / "edges.csv", [&](std::ostream& os) { write_edges_csv(os, tr.graphs); });
    if (fl.plot) {
        write_with(dir / "trajectory.svg", [&](std::ostream& os) {
            write_trajectory_svg(os, series, "HK n=" + std::to_string(fl.n) + " eps=" + format_real(fl.eps));
        });
    }
    std::cout << "step 1: extreme degree " << extreme << ", max degree " << max_degree << "\n"
              << "steps " << tr.steps() << " (" << to_string(tr.termination) << "), clusters " << clusters << "\n";
}

// ---- rational ----

struct RationalFlags {
    std::string theta;
    std::string f = "0.333333";
    double V = 0.0;
    bool enumerate = false;
    bool subsets = false;
    std::string graph;
    int jobs = 1;
    std::string out = ".";
};

// "0>1,1>0" -> rows
PeerGraph parse_graph(const std::string& s, std::size_t n) {
    std::vector<PeerSet> rows(n);
    std::stringstream ss(s);
    std::string edge;
    while (std::getline(ss, edge, ',')) {
        if (edge.empty()) continue;
        const auto gt = edge.find('>');
        try {
            if (gt == std::string::npos) throw std::invalid_argument(edge);
            const int a = std::stoi(edge.substr(0, gt));
            const int b = std::stoi(edge.substr(gt + 1));
            if (a < 0 || a >= static_cast<int>(n)) throw std::out_of_range(edge);
            rows[static_cast<std::size_t>(a)].push_back(b);
        } catch (const std::exception&) {
            throw FlagError("--graph expects src>dst pairs, got '" + edge + "'");
        }
    }
    try {
        return PeerGraph(std::move(rows));
    } catch (const std::exception& e) {
        throw FlagError(std::string("--graph: ") + e.what());
    }
}

json graph_json(const PeerGraph& g) {
    json rows = json::array();
    for (const auto& r : g.rows()) rows.push_back(r);
    return rows;
}

void cmd_rational(const RationalFlags& fl, const CLI::App* app) {
    auto theta = parse_list(fl.theta, "--theta");
    auto fv = parse_list(fl.f, "--f");
    if (fv.size() == 1) fv.assign(theta.size(), fv.front());
    if (fv.size() != theta.size()) throw FlagError("--f takes one value or one per agent");
    RationalInstance inst{theta, fv, fl.V};
    try {
        inst.validate();
    } catch (const std::invalid_argument& e) {
        throw FlagError(e.what());
    }
    const auto set = fl.subsets ? DeviationSet::all_subsets : DeviationSet::windows;

    json rec;
    rec["command"] = "rational";
    rec["flags"] = flags_json(app);
    rec["instance"] = {{"theta", inst.theta}, {"f", inst.f_vec}, {"V", inst.V}};
    rec["deviations"] = fl.subsets ? "all subsets" : "windows";
    const bool common_f = std::all_of(fv.begin(), fv.end(), [&](double v) { return v == fv.front(); });
    if (common_f) {
        rec["phi"] = threshold_phi(inst.V, fv.front());
        rec["component_lower_bound"] = component_lower_bound(inst);
    }

    if (!fl.graph.empty()) {
        const PeerGraph g = parse_graph(fl.graph, theta.size());
        const auto chk = is_nash(inst, g, set);
        json c;
        c["graph"] = graph_json(g);
        c["opinions"] = solve_given_network(inst, g);
        c["is_nash"] = chk.is_nash;
        if (!chk.is_nash) c["witness"] = {{"agent", chk.agent}, {"deviation", chk.deviation}, {"gain", chk.gain}};
        rec["check"] = c;
        std::cout << "graph is " << (chk.is_nash ? "" : "not ") << "a Nash equilibrium";
        if (!chk.is_nash) std::cout << " (agent " << chk.agent << " gains " << format_real(chk.gain) << ")";
        std::cout << "\n";
    }

    if (fl.enumerate) {
        const auto eqs = enumerate_equilibria(inst, set, fl.jobs);
        json arr = json::array();
        for (const auto& e : eqs) {
            arr.push_back({{"graph", graph_json(e.graph)}, {"opinions", e.opinions},
                           {"components", weak_components(e.graph).size()}});
        }
        rec["equilibria"] = arr;
        std::cout << eqs.size() << " equilibria\n";
        for (const auto& e : eqs) {
            std::cout << "  rows";
            for (const auto& r : e.graph.rows()) {
                std::cout << " {";
                for (std::size_t k = 0; k < r.size(); ++k) std::cout << (k ? "," : "") << r[k];
                std::cout << "}";
            }
            std::cout << "  x =";
            for (double v : e.opinions) std::cout << ' ' << format_real(v);
            std::cout << "\n";
        }
        // myopic contrast: period-1 network of myopic agents on the same opinions
        if (common_f && std::is_sorted(theta.begin(), theta.end())) {
            ModelParams p;
            p.n = static_cast<int>(theta.size());
            p.f = fv.front();
            p.V = inst.V;
            const PeerGraph myopic = form_network(p, OpinionProfile(theta));
            const bool among = std::any_of(eqs.begin(), eqs.end(), [&](const Equilibrium& e) { return e.graph == myopic; });
            rec["myopic_graph"] = graph_json(myopic);
            rec["myopic_is_equilibrium"] = among;
            std::cout << "myopic period-1 graph is " << (among ? "" : "not ") << "among the equilibria\n";
        }
    }
    const fs::path dir(fl.out);
    fs::create_directories(dir);
    write_file(dir / "rational.json", rec.dump(2) + "\n");
}

// ---- analyze ----

struct AnalyzeFlags {
    std::string run_json;
    bool polarization = false;
    std::string alphas = "0.8,1.0,1.6";
    int segments = 10;
    std::string out;
};

void cmd_analyze(const AnalyzeFlags& fl) {
    std::ifstream in(fl.run_json);
    if (!in) throw std::runtime_error("cannot read " + fl.run_json);
    const json rec = json::parse(in);
    const auto alphas = parse_list(fl.alphas, "--alpha");
    if (fl.segments < 2) throw FlagError("--segments must be at least 2");
    const auto series = rec.at("trajectory").get<std::vector<std::vector<double>>>();
    const std::string command = rec.at("command").get<std::string>();
    const auto& params = rec.at("params");
    const double f = params.at("f").get<double>();

    // graphs are recomputed from the stored opinions
    std::vector<PeerGraph> graphs;
    if (command == "simulate") {
        ModelParams p;
        p.n = params.at("n").get<int>();
        p.f = f;
        p.V = params.at("V").get<double>();
        p.rule = update_rule_from_string(params.at("rule").get<std::string>());
        for (std::size_t t = 0; t + 1 < series.size(); ++t) graphs.push_back(form_network(p, OpinionProfile(series[t])));
    } else if (command == "hk") {
        const double eps = params.at("eps").get<double>();
        for (std::size_t t = 0; t + 1 < series.size(); ++t) graphs.push_back(hk_neighborhoods(eps, OpinionProfile(series[t])));
    } else {
        throw std::runtime_error("cannot analyze a '" + command + "' record");
    }
    const auto metrics = step_metrics(graphs, series, f, alphas, fl.segments);

    const fs::path dir = fl.out.empty() ? fs::path(fl.run_json).parent_path() : fs::path(fl.out);
    if (!dir.empty()) fs::create_directories(dir);
    json m;
    m["source"] = fl.run_json;
    m["metrics"] = metrics_json(metrics, alphas);
    write_file(dir / "metrics.json", m.dump(2) + "\n");
    if (fl.polarization) {
        write_with(dir / "polarization.csv",
                   [&](std::ostream& os) { write_polarization_csv(os, series, alphas, fl.segments); });
    }
    std::cout << metrics.size() << " steps analysed\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Co-evolution of opinions and strategically formed peer networks"};
    app.require_subcommand(1);

    SimulateFlags sim;
    auto* s = app.add_subcommand("simulate", "run one trajectory");
    s->add_option("--n", sim.n, "number of agents")->capture_default_str();
    s->add_option("--f", sim.f, "flexibility in (0,1)")->capture_default_str();
    s->add_option("--V", sim.V, "benefit per link")->required();
    s->add_option("--steps", sim.steps, "horizon")->capture_default_str();
    s->add_option("--rule", sim.rule, "opinion update")->check(CLI::IsMember({"hearing", "simultaneous"}))->capture_default_str();
    s->add_flag("--edges", sim.edges, "write edges.csv");
    s->add_flag("--plot", sim.plot, "write trajectory.svg");
    s->add_option("--alpha", sim.alphas, "polarization alphas")->capture_default_str();
    s->add_option("--segments", sim.segments, "polarization segments")->capture_default_str();
    s->add_option("--jobs", sim.jobs, "threads for network formation")->check(CLI::PositiveNumber)->capture_default_str();
    s->add_option("--out", sim.out, "output directory")->capture_default_str();
    sim.dist.add(s);

    SweepFlags sw;
    auto* w = app.add_subcommand("sweep", "(V, f) grid of runs");
    w->add_option("--n", sw.n, "number of agents")->capture_default_str();
    w->add_option("--steps", sw.steps, "horizon per cell")->capture_default_str();
    w->add_option("--grid", sw.grid, "f points x V points")->capture_default_str();
    w->add_option("--f-range", sw.f_range, "lo,hi")->capture_default_str();
    w->add_option("--V-range", sw.v_range, "lo,hi")->capture_default_str();
    w->add_option("--rule", sw.rule, "opinion update")->check(CLI::IsMember({"hearing", "simultaneous"}))->capture_default_str();
    w->add_option("--jobs", sw.jobs, "worker threads (0 = all cores)")->check(CLI::NonNegativeNumber)->capture_default_str();
    w->add_flag("--plot", sw.plot, "write heatmap.svg");
    w->add_flag("--full", sw.full, "100x100 grid");
    w->add_option("--out", sw.out, "output directory")->capture_default_str();
    sw.dist.add(w);

    HkFlags hk;
    auto* h = app.add_subcommand("hk", "bounded-confidence baseline");
    h->add_option("--n", hk.n, "number of agents")->capture_default_str();
    h->add_option("--f", hk.f, "weight on the neighbourhood mean")->capture_default_str();
    h->add_option("--eps", hk.eps, "confidence radius")->capture_default_str();
    h->add_option("--steps", hk.steps, "horizon")->capture_default_str();
    h->add_flag("--plot", hk.plot, "write trajectory.svg");
    h->add_flag("--edges", hk.edges, "write edges.csv");
    h->add_option("--out", hk.out, "output directory")->capture_default_str();
    hk.dist.add(h);

    RationalFlags ra;
    auto* r = app.add_subcommand("rational", "one-shot game with rational agents");
    r->add_option("--theta", ra.theta, "ordered initial opinions, comma separated")->required();
    r->add_option("--f", ra.f, "flexibility, one value or one per agent")->capture_default_str();
    r->add_option("--V", ra.V, "benefit per link")->required();
    r->add_flag("--enumerate", ra.enumerate, "list all pure equilibria");
    r->add_flag("--subsets", ra.subsets, "allow arbitrary peer subsets, not only windows");
    r->add_option("--graph", ra.graph, "check a network, e.g. 0>1,1>0");
    r->add_option("--jobs", ra.jobs, "threads for enumeration")->check(CLI::PositiveNumber)->capture_default_str();
    r->add_option("--out", ra.out, "output directory")->capture_default_str();

    AnalyzeFlags an;
    auto* a = app.add_subcommand("analyze", "recompute metrics from a run.json");
    a->add_option("run_json", an.run_json, "record written by simulate or hk")->required();
    a->add_flag("--polarization", an.polarization, "write polarization.csv");
    a->add_option("--alpha", an.alphas, "polarization alphas")->capture_default_str();
    a->add_option("--segments", an.segments, "polarization segments")->capture_default_str();
    a->add_option("--out", an.out, "output directory (default: next to run.json)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (s->parsed()) cmd_simulate(sim, s);
        else if (w->parsed()) cmd_sweep(sw, w);
        else if (h->parsed()) cmd_hk(hk, h);
        else if (r->parsed()) cmd_rational(ra, r);
        else if (a->parsed()) cmd_analyze(an);
    } catch (const std::invalid_argument& e) {
        // bad flag values surface as invalid_argument from validation
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
