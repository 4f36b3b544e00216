#include "opnet/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "opnet/errors.hpp"
#include "opnet/formation.hpp"
#include "opnet/graph_metrics.hpp"

namespace opnet {

std::string_view to_string(Termination t) {
    switch (t) {
        case Termination::steady_state: return "steady_state";
        case Termination::horizon_reached: return "horizon_reached";
    }
    return "unknown";
}

std::string_view to_string(Classification c) {
    switch (c) {
        case Classification::monotone_consensus: return "monotone_consensus";
        case Classification::temporary_disagreement: return "temporary_disagreement";
        case Classification::persistent_disagreement: return "persistent_disagreement";
    }
    return "unknown";
}

Classification classification_from_string(std::string_view s) {
    if (s == "monotone_consensus") return Classification::monotone_consensus;
    if (s == "temporary_disagreement") return Classification::temporary_disagreement;
    if (s == "persistent_disagreement") return Classification::persistent_disagreement;
    throw std::invalid_argument("unknown classification '" + std::string(s) + "'");
}

std::pair<PeerGraph, OpinionProfile> step(const ModelParams& params, const OpinionProfile& x_prev, int jobs) {
    PeerGraph graph = form_network(params, x_prev, jobs);
    OpinionProfile next = update_opinions(params, graph, x_prev);
    return {std::move(graph), std::move(next)};
}

bool components_settled(const PeerGraph& graph, const OpinionProfile& x, double range_tol) {
    for (const auto& comp : weak_components(graph)) {
        double lo = x[static_cast<std::size_t>(comp.front())];
        double hi = lo;
        for (int v : comp) {
            lo = std::min(lo, x[static_cast<std::size_t>(v)]);
            hi = std::max(hi, x[static_cast<std::size_t>(v)]);
        }
        if (hi - lo >= range_tol) return false;
        if (!induces_complete(graph, comp)) return false;
    }
    return true;
}

std::vector<double> component_means(const PeerGraph& graph, const OpinionProfile& x) {
    std::vector<double> means;
    for (const auto& comp : weak_components(graph)) {
        double sum = 0.0;
        for (int v : comp) sum += x[static_cast<std::size_t>(v)];
        means.push_back(sum / static_cast<double>(comp.size()));
    }
    return means;
}

Trajectory run(const ModelParams& params, const OpinionProfile& initial, const RunOptions& options) {
    params.validate();
    if (static_cast<int>(initial.size()) != params.n) {
        throw std::invalid_argument("initial profile has " + std::to_string(initial.size()) +
                                    " agents, params say " + std::to_string(params.n));
    }
    Trajectory traj;
    traj.params = params;
    traj.initial = initial;
    traj.tol = options.tol;
    traj.profiles.reserve(static_cast<std::size_t>(std::min(params.max_steps, 1024)));

    const OpinionProfile* x_prev = &traj.initial;
    for (int t = 1; t <= params.max_steps; ++t) {
        auto [graph, x] = step(params, *x_prev, options.jobs);
        const bool same_graph = (t == 1) || graph == traj.final_graph;
        const bool steady = same_graph && components_settled(graph, x, options.tol.steady_range);
        if (t == 1) traj.first_graph = graph;
        if (!traj.first_disorder && !x.ordered()) traj.first_disorder = t;
        traj.profiles.push_back(std::move(x));
        if (options.keep_graphs) traj.graphs.push_back(graph);
        traj.final_graph = std::move(graph);
        x_prev = &traj.profiles.back();
        if (steady) {
            traj.termination = Termination::steady_state;
            break;
        }
    }
    try {
        traj.classification = classify(traj);
    } catch (const UnterminatedTrajectory&) {
        traj.classification.reset();
    }
    return traj;
}

bool has_sign_change(const Trajectory& trajectory, double tol) {
    const std::size_t n = trajectory.initial.size();
    for (std::size_t i = 0; i < n; ++i) {
        int last_sign = 0;
        for (int t = 1; t <= trajectory.steps(); ++t) {
            const double dx = trajectory.at(t)[i] - trajectory.at(t - 1)[i];
            if (std::abs(dx) <= tol) continue;
            const int sign = dx > 0 ? 1 : -1;
            if (last_sign != 0 && sign != last_sign) return true;
            last_sign = sign;
        }
    }
    return false;
}

Classification classify(const Trajectory& trajectory) {
    if (trajectory.profiles.empty()) throw UnterminatedTrajectory("trajectory has no steps");
    const auto& tol = trajectory.tol;
    const auto& x = trajectory.final_profile();

    // Components never merge, so separated component limits stay separated
    // even on a run that has not settled yet.
    auto means = component_means(trajectory.final_graph, x);
    std::sort(means.begin(), means.end());
    const int distinct = count_clusters(means, tol.distinct_opinions);
    if (distinct >= 2) return Classification::persistent_disagreement;

    if (trajectory.termination == Termination::horizon_reached) {
        const auto& prev = trajectory.at(trajectory.steps() - 1);
        double moved = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) moved = std::max(moved, std::abs(x[i] - prev[i]));
        if (moved > tol.settled_change) {
            throw UnterminatedTrajectory("run stopped at the horizon while opinions still move by " +
                                         std::to_string(moved));
        }
    }
    return has_sign_change(trajectory, tol.sign_change) ? Classification::temporary_disagreement
                                                        : Classification::monotone_consensus;
}

}  // namespace opnet
