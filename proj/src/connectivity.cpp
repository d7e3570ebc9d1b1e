#include "gsm/connectivity.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>

#include "json.hpp"

namespace gsm {

namespace {

struct WindowEdge {
  int u, v;
  int label;
};

// Windowed component-label automaton. Holds <= k+1 edges; the label alphabet is
// 0..k (at most k+1 symbols, recycled on release). Terminal slots, when set,
// follow their component through merges and seal when it is orphan-evicted.
class WindowAutomaton {
 public:
  WindowAutomaton(int k, bool strict) : k_(k), strict_(strict) {
    if (k < 0) throw std::invalid_argument("stream: k must be >= 0");
    for (int l = k; l >= 0; --l) free_labels_.push_back(l);
  }

  void set_terminals(int v1, int v2) {
    term_node_[0] = v1;
    term_node_[1] = v2;
    terminals_ = true;
  }

  void step(int idx, int u, int v) {
    if (u == v || u < 0 || v < 0) throw std::invalid_argument("stream: bad edge");
    if (strict_) {
      for (int w : {u, v}) {
        auto it = last_seen_.find(w);
        if (it != last_seen_.end() && idx - it->second > k_) violations_.push_back(idx);
        last_seen_[w] = idx;
      }
    }
    if (static_cast<int>(window_.size()) == k_ + 1) evict_oldest();
    append(u, v);
    max_window_ = std::max(max_window_, static_cast<int>(window_.size()));
  }

  bool single_component() const {
    for (const auto& we : window_)
      if (we.label != window_.front().label) return false;
    return true;
  }

  bool alive() const { return alive_; }
  int max_window() const { return max_window_; }
  const std::vector<int>& violations() const { return violations_; }
  std::size_t seen_node_count() const { return last_seen_.size(); }
  bool terminals_met() const { return latched_; }
  bool terminal_sealed_apart() const { return sealed_apart_; }

 private:
  void evict_oldest() {
    const WindowEdge old = window_.front();
    bool unique = true;
    for (std::size_t j = 1; j < window_.size(); ++j)
      if (window_[j].label == old.label) {
        unique = false;
        break;
      }
    window_.pop_front();
    if (unique) {
      alive_ = false;
      // the evicted component is sealed; a terminal inside it can never meet the other
      if (terminals_ && !latched_)
        for (int s : {0, 1})
          if (term_label_[s] == old.label) {
            term_label_[s] = -1;
            sealed_apart_ = true;
          }
      free_labels_.push_back(old.label);
    }
  }

  void append(int u, int v) {
    int chosen = -1;
    for (const auto& we : window_)
      if (touches(we, u, v)) {
        chosen = we.label;
        break;
      }
    if (chosen < 0) {
      chosen = free_labels_.back();
      free_labels_.pop_back();
    } else {
      for (const auto& we : window_)
        if (we.label != chosen && touches(we, u, v)) relabel(we.label, chosen);
    }
    window_.push_back({u, v, chosen});
    if (terminals_) {
      for (int s : {0, 1})
        if (u == term_node_[s] || v == term_node_[s]) term_label_[s] = chosen;
      if (!latched_ && term_label_[0] >= 0 && term_label_[0] == term_label_[1])
        latched_ = true;
    }
  }

  static bool touches(const WindowEdge& we, int u, int v) {
    return we.u == u || we.v == u || we.u == v || we.v == v;
  }

  void relabel(int from, int to) {
    for (auto& we : window_)
      if (we.label == from) we.label = to;
    if (terminals_)
      for (int s : {0, 1})
        if (term_label_[s] == from) term_label_[s] = to;
    free_labels_.push_back(from);
  }

  int k_;
  bool strict_;
  bool alive_ = true;
  std::deque<WindowEdge> window_;
  std::vector<int> free_labels_;
  std::map<int, int> last_seen_;  // strict only
  std::vector<int> violations_;
  int max_window_ = 0;
  bool terminals_ = false;
  int term_node_[2] = {-1, -1};
  int term_label_[2] = {-1, -1};
  bool latched_ = false;
  bool sealed_apart_ = false;
};

}  // namespace

StreamResult stream_connectivity_detail(const std::vector<std::pair<int, int>>& edge_seq,
                                        int k, bool strict, int total_nodes) {
  WindowAutomaton aut(k, strict);
  for (std::size_t idx = 0; idx < edge_seq.size(); ++idx)
    aut.step(static_cast<int>(idx), edge_seq[idx].first, edge_seq[idx].second);
  StreamResult r;
  r.alive = aut.alive();
  r.max_window = aut.max_window();
  r.violations = aut.violations();
  if (edge_seq.empty()) {
    r.connected = !strict || total_nodes < 0 || total_nodes <= 1;
    return r;
  }
  r.connected = aut.alive() && aut.single_component();
  if (strict && total_nodes >= 0 && static_cast<int>(aut.seen_node_count()) != total_nodes)
    r.connected = false;  // isolated nodes never entered the stream
  return r;
}

bool stream_connectivity(const std::vector<std::pair<int, int>>& edge_seq, int k,
                         bool strict, int total_nodes) {
  return stream_connectivity_detail(edge_seq, k, strict, total_nodes).connected;
}

bool stream_terminals_connected(const std::vector<std::pair<int, int>>& edge_seq, int k,
                                int v1, int v2) {
  if (v1 == v2) return true;
  WindowAutomaton aut(k, false);
  aut.set_terminals(v1, v2);
  for (std::size_t idx = 0; idx < edge_seq.size(); ++idx) {
    aut.step(static_cast<int>(idx), edge_seq[idx].first, edge_seq[idx].second);
    if (aut.terminals_met()) return true;
    if (aut.terminal_sealed_apart()) return false;
  }
  return aut.terminals_met();
}

bool hybrid_connectivity(const FactoredInstance& inst, int k, int n_prime) {
  if (n_prime < 1) throw std::invalid_argument("hybrid: n_prime >= 1");
  const auto& edges = inst.graph.edges;
  if (inst.blocks.empty()) return inst.kernel.n <= 1;
  if (static_cast<int>(edges.size()) != n_prime * static_cast<int>(inst.blocks.size()))
    throw std::invalid_argument("hybrid: edge count does not match block structure");
  for (std::size_t b = 0; b < inst.blocks.size(); ++b)
    if (inst.blocks[b].edge_start != static_cast<int>(b) * n_prime)
      throw std::invalid_argument("hybrid: malformed block boundaries");

  Graph recovered;
  recovered.n = inst.kernel.n;
  std::set<std::pair<int, int>> decided;
  for (const auto& block : inst.blocks) {
    std::vector<std::pair<int, int>> slice(
        edges.begin() + block.edge_start, edges.begin() + block.edge_start + n_prime);
    if (stream_terminals_connected(slice, k, block.v1, block.v2))
      decided.insert(std::minmax(block.v1, block.v2));
  }
  for (const auto& e : decided) recovered.edges.push_back(e);
  return is_connected(recovered);
}

std::vector<int> edge_order_from_node_order(const Graph& g,
                                            const std::vector<int>& node_order) {
  if (static_cast<int>(node_order.size()) != g.n)
    throw std::invalid_argument("edge_order_from_node_order: order size mismatch");
  std::vector<int> pos(g.n, -1);
  for (int p = 0; p < g.n; ++p) {
    int v = node_order[p];
    if (v < 0 || v >= g.n || pos[v] >= 0)
      throw std::invalid_argument("edge_order_from_node_order: not a permutation");
    pos[v] = p;
  }
  std::vector<int> order(g.edges.size());
  for (std::size_t e = 0; e < g.edges.size(); ++e) order[e] = static_cast<int>(e);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    auto key = [&](int e) {
      int pu = pos[g.edges[e].first], pv = pos[g.edges[e].second];
      return std::tuple<int, int, int>(std::max(pu, pv), std::min(pu, pv), e);
    };
    return key(a) < key(b);
  });
  return order;
}

std::string stream_result_to_json(const StreamResult& r) {
  nlohmann::ordered_json j;
  j["connected"] = r.connected;
  j["violations"] = r.violations;
  j["max_window"] = r.max_window;
  return j.dump();
}

}  // namespace gsm
