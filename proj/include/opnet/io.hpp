#pragma once

// Serialisation: run records, CSV series and static SVG plots.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "opnet/dynamics.hpp"
#include "opnet/hk.hpp"
#include "opnet/sweep.hpp"

namespace opnet {

// %.17g, round-trip exact.
std::string format_real(double v);

// x_0, x_1, ... as plain vectors.
std::vector<std::vector<double>> opinion_series(const Trajectory& tr);
std::vector<std::vector<double>> opinion_series(const HkTrajectory& tr);

// t,agent,opinion with t starting at 0 (initial profile).
void write_trajectory_csv(std::ostream& out, const std::vector<std::vector<double>>& series);
// t,src,dst with graphs[0] as t = 1.
void write_edges_csv(std::ostream& out, const std::vector<PeerGraph>& graphs);

struct StepMetrics {
    int t = 0;
    std::optional<int> diameter;  // empty = infinite
    int components = 0;
    double lambda2 = 0.0;
    std::vector<double> polarization;  // one per alpha
    int min_in_degree = 0;
    int max_in_degree = 0;
    int max_out_degree = 0;
};

// Per-step metrics of graphs[t-1] and x_t; lambda2 of the hearing matrix.
std::vector<StepMetrics> step_metrics(const std::vector<PeerGraph>& graphs,
                                      const std::vector<std::vector<double>>& series, double f,
                                      const std::vector<double>& alphas, int segments, double K = 1.0);

std::vector<int> in_degrees(const PeerGraph& g);

nlohmann::json metrics_json(const std::vector<StepMetrics>& metrics, const std::vector<double>& alphas);

// Tie-break stack, tolerances and conventions, embedded in every run record.
nlohmann::json decision_metadata(const RunTolerances& tol, UpdateRule rule);

std::string_view to_string(UpdateRule rule);
UpdateRule update_rule_from_string(std::string_view s);

// t,P_alpha1,P_alpha2,... polarization per step, t from 0.
void write_polarization_csv(std::ostream& out, const std::vector<std::vector<double>>& series,
                            const std::vector<double>& alphas, int segments, double K = 1.0);

// Line plot of every agent's opinion over t.
void write_trajectory_svg(std::ostream& out, const std::vector<std::vector<double>>& series,
                          const std::string& title);

// f on the horizontal, V on the vertical axis, cells coloured by period-1
// diameter; analytic diameter curves (z = 1..5) and the consensus /
// divergence boundaries drawn on top.
void write_heatmap_svg(std::ostream& out, const std::vector<SweepCell>& cells, const SweepConfig& config);

}  // namespace opnet
