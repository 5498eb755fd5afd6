#pragma once
// JSON and DOT serialization for instances and graphs.

#include <string>

#include "congestlab/gadgets.hpp"
#include "congestlab/graph.hpp"

namespace congestlab {

std::string graph_to_json(const Graph& g);
Graph graph_from_json(const std::string& text);

std::string instance_to_json(const LowerBoundInstance& inst);
LowerBoundInstance instance_from_json(const std::string& text);

// Graphviz rendering; cut edges (when a partition is present) are dashed.
std::string graph_to_dot(const Graph& g, const Partition* part = nullptr);

}  // namespace congestlab
