#pragma once
#include <string>
#include <vector>

#include "gsm/graph.hpp"

namespace gsm {

enum class TaskKind {
  node_degree,
  cycle_check,
  triangle_count,
  connectivity,
  color_counts,
  shortest_path,
};

TaskKind task_kind_from_name(const std::string& name);
std::string task_kind_name(TaskKind kind);

struct TaskLabel {
  TaskKind kind;
  std::vector<int> node_values;            // node_degree
  bool flag = false;                       // cycle_check, connectivity
  long long scalar = 0;                    // triangle_count
  std::vector<long long> counts;           // color_counts
  std::vector<std::vector<int>> matrix;    // shortest_path, -1 = unreachable
};

// Exact reference labels; ground truth for everything else.
TaskLabel oracle(const Graph& g, TaskKind kind);

long long oracle_triangle_count(const Graph& g);
bool oracle_has_cycle(const Graph& g);
std::vector<long long> oracle_color_counts(const Graph& g);  // throws if colors missing
std::vector<std::vector<int>> oracle_all_pairs_distances(const Graph& g);

// Exact count of vertex subsets of g whose induced subgraph is isomorphic to H.
long long oracle_induced_occurrences(const Graph& g, const Graph& H);

std::string task_label_to_json(const TaskLabel& label);

}  // namespace gsm
