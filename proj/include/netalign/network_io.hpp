#pragma once

// JSON network files:
//
//   {
//     "version": 1,                       (optional)
//     "nodes": ["s1", "s2", ...],
//     "edges": [{"id": "e1", "tail": "s1", "head": "u", "delay": 1}, ...],
//     "sources": ["s1", "s2", "s3"],
//     "destinations": ["t1", "t2", "t3"]
//   }
//
// Unknown keys are rejected. See docs/network-format.md.

#include <filesystem>
#include <string>

#include "json.hpp"
#include "netalign/netgraph.hpp"

namespace netalign {

inline constexpr int kNetworkFormatVersion = 1;

// Throws InvalidNetwork naming the offending location (e.g. "edges[2].delay").
DelayNetwork network_from_json(const nlohmann::json& doc);
nlohmann::json network_to_json(const DelayNetwork& net);

// Parse errors carry the byte offset reported by the JSON parser.
DelayNetwork parse_network(const std::string& text);
DelayNetwork load_network(const std::filesystem::path& path);

}  // namespace netalign
