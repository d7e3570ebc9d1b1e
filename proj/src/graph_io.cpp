#include "gsm/graph_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace gsm {

using ordered_json = nlohmann::ordered_json;

std::string graph_to_json(const Graph& g) {
  ordered_json j;
  j["n"] = g.n;
  j["edges"] = ordered_json::array();
  for (const auto& [u, v] : g.edges) j["edges"].push_back({u, v});
  j["colors"] = g.colors ? ordered_json(*g.colors) : ordered_json(nullptr);
  j["features"] = g.features ? ordered_json(*g.features) : ordered_json(nullptr);
  return j.dump();
}

Graph graph_from_json(const std::string& text) {
  ordered_json j = ordered_json::parse(text);
  Graph g;
  g.n = j.at("n").get<int>();
  for (const auto& e : j.at("edges"))
    g.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  if (!j.at("colors").is_null()) g.colors = j.at("colors").get<std::vector<int>>();
  if (!j.at("features").is_null())
    g.features = j.at("features").get<std::vector<std::vector<double>>>();
  g.validate();
  return g;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_graph(const Graph& g, const std::string& path) {
  write_text_file(path, graph_to_json(g) + "\n");
}

Graph read_graph(const std::string& path) { return graph_from_json(read_text_file(path)); }

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string graph_fingerprint(const Graph& g) {
  std::uint64_t h = fnv1a(graph_to_json(g));
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace gsm
