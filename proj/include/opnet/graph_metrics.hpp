#pragma once

#include <optional>
#include <vector>

#include "opnet/model.hpp"

namespace opnet {

// Longest shortest directed path over all ordered pairs, by BFS from every
// node. std::nullopt when some node cannot reach another (infinite diameter).
std::optional<int> directed_diameter(const PeerGraph& graph);

// Connected components of the symmetrised graph. Each component is sorted and
// components are ordered by their smallest member.
std::vector<std::vector<int>> weak_components(const PeerGraph& graph);

// True when every member of `component` links to every other member.
bool induces_complete(const PeerGraph& graph, const std::vector<int>& component);

// Number of groups after splitting the sorted values wherever consecutive
// values differ by more than `gap`.
int count_clusters(std::span<const double> sorted_values, double gap);

}  // namespace opnet
