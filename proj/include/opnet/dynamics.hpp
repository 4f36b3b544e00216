#pragma once

// Discrete-time co-evolution of peer choices and opinions.
//
// Each step: opinions from t-1 are given, every agent picks her peers on that
// snapshot, then opinions are updated on the new graph according to
// params.rule (hearing matrix by default, or the simultaneous solve).

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "opnet/model.hpp"

namespace opnet {

enum class Termination { steady_state, horizon_reached };

enum class Classification { monotone_consensus, temporary_disagreement, persistent_disagreement };

std::string_view to_string(Termination t);
std::string_view to_string(Classification c);
Classification classification_from_string(std::string_view s);

// Tolerances that decide termination and classification.
struct RunTolerances {
    double steady_range = 1e-9;       // per-component opinion range at steady state
    double sign_change = 1e-12;       // increments at or below this are ignored
    double distinct_opinions = 1e-6;  // component limits closer than this coincide
    double settled_change = 1e-6;     // horizon runs with a larger last move are unsettled
};

struct RunOptions {
    bool keep_graphs = true;  // otherwise only the first and final graph are kept
    int jobs = 1;             // worker threads for network formation
    RunTolerances tol{};
};

struct Trajectory {
    ModelParams params;
    OpinionProfile initial;
    std::vector<OpinionProfile> profiles;  // profiles[t-1] is x_t
    std::vector<PeerGraph> graphs;         // graphs[t-1] is G_t, when kept
    PeerGraph first_graph;
    PeerGraph final_graph;
    Termination termination = Termination::horizon_reached;
    std::optional<Classification> classification;  // absent when the run has not settled
    std::optional<int> first_disorder;             // first t with x_t out of index order
    RunTolerances tol{};

    int steps() const { return static_cast<int>(profiles.size()); }
    const OpinionProfile& final_profile() const { return profiles.empty() ? initial : profiles.back(); }
    // x_t for t in [0, steps()].
    const OpinionProfile& at(int t) const { return t == 0 ? initial : profiles.at(static_cast<std::size_t>(t - 1)); }
};

std::pair<PeerGraph, OpinionProfile> step(const ModelParams& params, const OpinionProfile& x_prev,
                                          int jobs = 1);

// True when every weak component of `graph` is complete and its opinion range
// in `x` is below `range_tol`.
bool components_settled(const PeerGraph& graph, const OpinionProfile& x, double range_tol);

Trajectory run(const ModelParams& params, const OpinionProfile& initial, const RunOptions& options = {});

// Throws UnterminatedTrajectory for a horizon-limited single-component run
// whose last move exceeds tol.settled_change.
Classification classify(const Trajectory& trajectory);

// True when some agent's opinion increments change sign (ignoring |dx| <= tol).
bool has_sign_change(const Trajectory& trajectory, double tol);

// Means of the weak components of the final graph, in component order.
std::vector<double> component_means(const PeerGraph& graph, const OpinionProfile& x);

}  // namespace opnet
