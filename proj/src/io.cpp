#include "opnet/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "opnet/formation.hpp"
#include "opnet/graph_metrics.hpp"
#include "opnet/polarization.hpp"
#include "opnet/spectral.hpp"
#include "opnet/thresholds.hpp"

namespace opnet {

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {
std::string label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}
}  // namespace

std::vector<std::vector<double>> opinion_series(const Trajectory& tr) {
    std::vector<std::vector<double>> s;
    s.reserve(static_cast<std::size_t>(tr.steps()) + 1);
    for (int t = 0; t <= tr.steps(); ++t) s.push_back(tr.at(t).vector());
    return s;
}

std::vector<std::vector<double>> opinion_series(const HkTrajectory& tr) {
    std::vector<std::vector<double>> s{tr.initial.vector()};
    for (const auto& p : tr.profiles) s.push_back(p.vector());
    return s;
}

void write_trajectory_csv(std::ostream& out, const std::vector<std::vector<double>>& series) {
    out << "t,agent,opinion\n";
    for (std::size_t t = 0; t < series.size(); ++t) {
        for (std::size_t i = 0; i < series[t].size(); ++i) out << t << ',' << i << ',' << format_real(series[t][i]) << '\n';
    }
}

void write_edges_csv(std::ostream& out, const std::vector<PeerGraph>& graphs) {
    out << "t,src,dst\n";
    for (std::size_t t = 0; t < graphs.size(); ++t) {
        for (std::size_t i = 0; i < graphs[t].size(); ++i) {
            for (int j : graphs[t].row(i)) out << t + 1 << ',' << i << ',' << j << '\n';
        }
    }
}

std::vector<int> in_degrees(const PeerGraph& g) {
    std::vector<int> d(g.size(), 0);
    for (const auto& row : g.rows()) {
        for (int j : row) ++d[static_cast<std::size_t>(j)];
    }
    return d;
}

std::vector<StepMetrics> step_metrics(const std::vector<PeerGraph>& graphs,
                                      const std::vector<std::vector<double>>& series, double f,
                                      const std::vector<double>& alphas, int segments, double K) {
    if (series.size() != graphs.size() + 1) throw std::invalid_argument("need one graph per step");
    std::vector<StepMetrics> out;
    for (std::size_t k = 0; k < graphs.size(); ++k) {
        const auto& g = graphs[k];
        StepMetrics m;
        m.t = static_cast<int>(k) + 1;
        m.diameter = directed_diameter(g);
        m.components = static_cast<int>(weak_components(g).size());
        m.lambda2 = second_eigenvalue_modulus(hearing_matrix(g, f));
        for (double a : alphas) m.polarization.push_back(esteban_ray(series[k + 1], {K, a, segments}));
        const auto in = in_degrees(g);
        m.min_in_degree = *std::min_element(in.begin(), in.end());
        m.max_in_degree = *std::max_element(in.begin(), in.end());
        for (std::size_t i = 0; i < g.size(); ++i) m.max_out_degree = std::max(m.max_out_degree, g.degree(i));
        out.push_back(std::move(m));
    }
    return out;
}

nlohmann::json metrics_json(const std::vector<StepMetrics>& metrics, const std::vector<double>& alphas) {
    auto arr = nlohmann::json::array();
    for (const auto& m : metrics) {
        nlohmann::json j;
        j["t"] = m.t;
        j["diameter"] = m.diameter ? nlohmann::json(*m.diameter) : nlohmann::json("inf");
        j["components"] = m.components;
        j["lambda2"] = m.lambda2;
        j["in_degree_min"] = m.min_in_degree;
        j["in_degree_max"] = m.max_in_degree;
        j["out_degree_max"] = m.max_out_degree;
        auto pol = nlohmann::json::object();
        for (std::size_t a = 0; a < alphas.size(); ++a) pol[label(alphas[a])] = m.polarization[a];
        j["polarization"] = pol;
        arr.push_back(j);
    }
    return arr;
}

std::string_view to_string(UpdateRule rule) {
    return rule == UpdateRule::hearing ? "hearing" : "simultaneous";
}

UpdateRule update_rule_from_string(std::string_view s) {
    if (s == "hearing") return UpdateRule::hearing;
    if (s == "simultaneous") return UpdateRule::simultaneous;
    throw std::invalid_argument("unknown update rule '" + std::string(s) + "'");
}

nlohmann::json decision_metadata(const RunTolerances& tol, UpdateRule rule) {
    nlohmann::json j;
    j["update_rule"] = to_string(rule);
    j["update_rule_note"] = rule == UpdateRule::hearing
                                ? "x_t = W_t x_{t-1}, W_t = (1-f)I + f D_t"
                                : "x_t solves x = f D_t x + (1-f) x_{t-1}";
    j["tie_break"] = {"link over isolation when the best window scores 0",
                      "lexicographically smallest sorted index sequence (prefix first)"};
    j["tie_tolerance"] = kTieTolerance;
    j["peer_sets"] = "contiguous windows of the other agents in opinion order (index order while the profile is ordered)";
    j["isolated_agents"] = "keep their opinion; hearing matrix row D_ii = 1";
    j["steady_state"] = "graph unchanged from the previous step, every weak component complete, "
                        "per-component opinion range below steady_range";
    j["tolerances"] = {{"steady_range", tol.steady_range},
                       {"sign_change", tol.sign_change},
                       {"distinct_opinions", tol.distinct_opinions},
                       {"settled_change", tol.settled_change},
                       {"solver_residual", 1e-10}};
    j["polarization_bins"] = "[k/s, (k+1)/s), last bin closed";
    return j;
}

void write_polarization_csv(std::ostream& out, const std::vector<std::vector<double>>& series,
                            const std::vector<double>& alphas, int segments, double K) {
    out << 't';
    for (double a : alphas) out << ",P_" << label(a);
    out << '\n';
    for (std::size_t t = 0; t < series.size(); ++t) {
        out << t;
        for (double a : alphas) out << ',' << format_real(esteban_ray(series[t], {K, a, segments}));
        out << '\n';
    }
}

namespace {

constexpr double kW = 800, kH = 500, kL = 60, kR = 20, kT = 40, kB = 50;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

void svg_open(std::ostream& out, const std::string& title) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << kW / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << title << "</text>\n";
}

void axes(std::ostream& out, double x0, double x1, double y0, double y1, const std::string& xl, const std::string& yl) {
    out << "<rect x=\"" << kL << "\" y=\"" << kT << "\" width=\"" << kW - kL - kR << "\" height=\"" << kH - kT - kB
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int k = 0; k <= 4; ++k) {
        const double fx = kL + (kW - kL - kR) * k / 4.0;
        const double fy = kH - kB - (kH - kT - kB) * k / 4.0;
        out << "<text x=\"" << num(fx) << "\" y=\"" << kH - kB + 16 << "\" text-anchor=\"middle\">"
            << num(x0 + (x1 - x0) * k / 4.0) << "</text>\n";
        out << "<text x=\"" << kL - 6 << "\" y=\"" << num(fy + 4) << "\" text-anchor=\"end\">"
            << num(y0 + (y1 - y0) * k / 4.0) << "</text>\n";
    }
    out << "<text x=\"" << kW / 2 << "\" y=\"" << kH - 12 << "\" text-anchor=\"middle\">" << xl << "</text>\n";
    out << "<text x=\"16\" y=\"" << kH / 2 << "\" transform=\"rotate(-90 16 " << kH / 2 << ")\" text-anchor=\"middle\">"
        << yl << "</text>\n";
}

}  // namespace

void write_trajectory_svg(std::ostream& out, const std::vector<std::vector<double>>& series, const std::string& title) {
    if (series.empty()) throw std::invalid_argument("empty series");
    const double tmax = std::max<double>(1.0, static_cast<double>(series.size() - 1));
    double lo = 0.0, hi = 1.0;
    for (const auto& x : series) {
        for (double v : x) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    auto px = [&](double t) { return kL + (kW - kL - kR) * t / tmax; };
    auto py = [&](double v) { return kH - kB - (kH - kT - kB) * (v - lo) / (hi - lo); };
    svg_open(out, title);
    axes(out, 0.0, tmax, lo, hi, "t", "opinion");
    const std::size_t n = series.front().size();
    for (std::size_t i = 0; i < n; ++i) {
        out << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"0.8\" points=\"";
        for (std::size_t t = 0; t < series.size(); ++t) out << num(px(static_cast<double>(t))) << ',' << num(py(series[t][i])) << ' ';
        out << "\"/>\n";
    }
    out << "</svg>\n";
}

void write_heatmap_svg(std::ostream& out, const std::vector<SweepCell>& cells, const SweepConfig& config) {
    const double x0 = config.f_lo, x1 = config.f_hi, y0 = config.v_lo, y1 = config.v_hi;
    const double cw = (kW - kL - kR) / config.f_points;
    const double ch = (kH - kT - kB) / config.v_points;
    auto px = [&](double f) { return kL + (kW - kL - kR) * (f - x0) / (x1 - x0); };
    auto py = [&](double v) { return kH - kB - (kH - kT - kB) * (v - y0) / (y1 - y0); };
    static const char* palette[] = {"#ffffff", "#1a9850", "#91cf60", "#d9ef8b", "#fee08b", "#fc8d59", "#d73027", "#7f0000"};
    svg_open(out, "period-1 directed diameter");
    for (std::size_t k = 0; k < cells.size(); ++k) {
        const std::size_t row = k / static_cast<std::size_t>(config.v_points);
        const std::size_t col = k % static_cast<std::size_t>(config.v_points);
        const auto& c = cells[k];
        int idx = 7;  // infinite or error
        if (c.error.empty() && c.diameter_t1) idx = std::min(*c.diameter_t1, 6);
        out << "<rect x=\"" << num(kL + cw * static_cast<double>(row)) << "\" y=\""
            << num(kH - kB - ch * static_cast<double>(col + 1)) << "\" width=\"" << num(cw) << "\" height=\""
            << num(ch) << "\" fill=\"" << palette[idx] << "\"><title>f=" << format_real(c.f) << " V="
            << format_real(c.V) << " diameter=" << (c.diameter_t1 ? std::to_string(*c.diameter_t1) : "inf")
            << "</title></rect>\n";
    }
    out << "<g clip-path=\"none\">\n";
    auto curve = [&](auto fn, const char* colour, const char* dash) {
        out << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\"" << dash << " points=\"";
        for (int k = 0; k <= 200; ++k) {
            const double f = x0 + (x1 - x0) * k / 200.0;
            const double v = std::clamp(fn(f), y0, y1);
            out << num(px(f)) << ',' << num(py(v)) << ' ';
        }
        out << "\"/>\n";
    };
    for (int z = 1; z <= 5; ++z) curve([z](double f) { return diameter_boundary(f, z); }, "black", "");
    curve([](double f) { return consensus_boundary(f); }, "blue", " stroke-dasharray=\"6 3\"");
    curve([](double f) { return divergence_boundary(f); }, "red", " stroke-dasharray=\"6 3\"");
    out << "</g>\n";
    axes(out, x0, x1, y0, y1, "f", "V");
    for (int d = 1; d <= 7; ++d) {
        out << "<rect x=\"" << kW - kR - 150 << "\" y=\"" << kT + 4 + 14 * (d - 1) << "\" width=\"10\" height=\"10\" fill=\""
            << palette[d] << "\" stroke=\"black\"/><text x=\"" << kW - kR - 136 << "\" y=\"" << kT + 13 + 14 * (d - 1)
            << "\">" << (d == 7 ? std::string("inf") : d == 6 ? std::string(">=6") : std::to_string(d)) << "</text>\n";
    }
    out << "</svg>\n";
}

}  // namespace opnet
