#pragma once

#include <string>
#include <vector>

#include "simfvs/graph.hpp"
#include "simfvs/set_system.hpp"

namespace simfvs {

/// Line-oriented graph format:
///   c <comment>
///   p ecg <n> <alpha> <m>
///   e <u> <v> <color>        (1-based ids, loops as u == v, multiplicity by
///                              repeating the line)
/// Internally ids are 0-based; file id x maps to vertex x-1.
EdgeColoredGraph parse_ecg(const std::string& text);
std::string serialize_ecg(const EdgeColoredGraph& g,
                          const std::vector<std::string>& comments = {});

/// Set system format:
///   p hss <universe> <groups>
///   g <group-index>           (1-based; opens the group)
///   s <e1> <e2> ...           (1-based elements, appended to the open group)
SetSystem parse_hss(const std::string& text);
std::string serialize_hss(const SetSystem& sys, const std::vector<std::string>& comments = {});

/// Solution format: "s yes" followed by ascending "v <id>" lines, or "s no".
std::string format_solution(bool yes, const std::vector<VertexId>& vertices);
/// Parses a solution file; returns true and fills vertices for "s yes".
bool parse_solution(const std::string& text, std::vector<VertexId>& vertices);

}  // namespace simfvs
