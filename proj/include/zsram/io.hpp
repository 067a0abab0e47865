#pragma once

// File formats (group literals, graph and colouring files) and the seeded
// instance generators behind the gen subcommand.

#include <string>

#include "zsram/colouring.hpp"
#include "zsram/graphs.hpp"

namespace zsram {

// "Zm1xZm2x...xZmk"; the trivial group is "Z1".
AbelianGroup parse_group(const std::string& literal);
std::string format_group(const AbelianGroup& g);

// "(r1,r2,...)"; "()" for the trivial group's element.
GroupElement parse_element(const AbelianGroup& g, const std::string& text);
std::string format_element(const GroupElement& e);

// {"vertices": N, "edges": [[u,v], ...]}
std::string graph_to_json(const Graph& g);
Graph graph_from_json(const std::string& text);
// One "u v" pair per line; vertex count is the largest id + 1.
Graph graph_from_text(const std::string& text);
Graph load_graph(const std::string& path);
void save_graph(const Graph& g, const std::string& path);

// {"group": "Z2xZ4", "t": N, "edges": {"u,v": "(r1,r2)", ...}} with every
// pair present, or the constant shorthand {"group":..., "t":..., "all": "(...)"}.
std::string colouring_to_json(const EdgeColouring& c);
EdgeColouring colouring_from_json(const std::string& text);
EdgeColouring load_colouring(const std::string& path);
void save_colouring(const EdgeColouring& c, const std::string& path);

Graph make_cycle(int k);
Graph make_complete(int k);
Graph make_matching(int k);  // k disjoint edges
Graph make_star(int k);      // K_{1,k}

// Simple-graph configuration model with whole-sample rejection; throws a
// capacity error if no simple pairing shows up within the attempt budget.
Graph random_regular(int degree, int vertices, unsigned long long seed);

EdgeColouring random_colouring(const AbelianGroup& g, int t, unsigned long long seed);

// Random colouring with one forced zero-sum copy of G: a hidden injection is
// drawn and a single edge colour on its image is adjusted so the copy sums
// to zero.
EdgeColouring planted_colouring(const Graph& g, const AbelianGroup& group, int t,
                                unsigned long long seed);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace zsram
