#pragma once
#include <string>

#include "gsm/graph.hpp"

namespace gsm {

// {"n": int, "edges": [[u,v],...], "colors": [...]|null, "features": [...]|null}
// Field order is fixed; edge array order is semantic.
std::string graph_to_json(const Graph& g);
Graph graph_from_json(const std::string& text);

void write_graph(const Graph& g, const std::string& path);
Graph read_graph(const std::string& path);

// FNV-1a over the canonical JSON serialization, as 16 hex digits
std::string graph_fingerprint(const Graph& g);

std::uint64_t fnv1a(const std::string& bytes);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace gsm
