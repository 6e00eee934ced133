#pragma once

#include <string>
#include <string_view>

#include "anchored/graph.hpp"

namespace anchored {

// Line-oriented .wg text format:
//   # comment
//   v <id> [frontier]
//   e <u> <v> <weight>
// Vertices referenced by edges are auto-declared non-frontier; weights are
// printed with shortest round-trip precision, so serialize(parse(serialize(g)))
// is byte-identical to serialize(g).

std::string serialize_wg(const WeightedGraph& g);
WeightedGraph parse_wg(std::string_view text);

WeightedGraph read_wg_file(const std::string& path);
void write_wg_file(const std::string& path, const WeightedGraph& g,
                   const std::string& header_comment = "");

// Shortest round-trip decimal representation of a double ("1" for 1.0).
std::string format_double(double x);

}  // namespace anchored
