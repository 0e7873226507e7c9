#include "netalign/network_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace netalign {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    for (const auto& [key, _] : obj.items())
        if (!allowed.count(key)) throw InvalidNetwork(where + ": unknown field '" + key + "'");
}

const json& require(const json& obj, const std::string& key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) throw InvalidNetwork(where + ": missing field '" + key + "'");
    return *it;
}

std::string as_string(const json& v, const std::string& where) {
    if (!v.is_string()) throw InvalidNetwork(where + ": expected a string");
    return v.get<std::string>();
}

std::array<std::string, 3> three_names(const json& v, const std::string& where) {
    if (!v.is_array() || v.size() != 3) throw InvalidNetwork(where + ": expected an array of exactly 3 node names");
    std::array<std::string, 3> out;
    for (std::size_t i = 0; i < 3; ++i) out[i] = as_string(v[i], where + "[" + std::to_string(i) + "]");
    return out;
}

}  // namespace

DelayNetwork network_from_json(const json& doc) {
    if (!doc.is_object()) throw InvalidNetwork("network document must be a JSON object");
    reject_unknown(doc, {"version", "nodes", "edges", "sources", "destinations"}, "network");
    if (auto it = doc.find("version"); it != doc.end()) {
        if (!it->is_number_integer() || it->get<int>() != kNetworkFormatVersion)
            throw InvalidNetwork("version: unsupported network format version");
    }

    const json& nodes_json = require(doc, "nodes", "network");
    if (!nodes_json.is_array()) throw InvalidNetwork("nodes: expected an array");
    std::vector<std::string> nodes;
    for (std::size_t i = 0; i < nodes_json.size(); ++i)
        nodes.push_back(as_string(nodes_json[i], "nodes[" + std::to_string(i) + "]"));

    const json& edges_json = require(doc, "edges", "network");
    if (!edges_json.is_array()) throw InvalidNetwork("edges: expected an array");
    std::vector<EdgeSpec> edges;
    for (std::size_t i = 0; i < edges_json.size(); ++i) {
        const std::string where = "edges[" + std::to_string(i) + "]";
        const json& e = edges_json[i];
        if (!e.is_object()) throw InvalidNetwork(where + ": expected an object");
        reject_unknown(e, {"id", "tail", "head", "delay"}, where);
        EdgeSpec spec;
        spec.id = as_string(require(e, "id", where), where + ".id");
        spec.tail = as_string(require(e, "tail", where), where + ".tail");
        spec.head = as_string(require(e, "head", where), where + ".head");
        const json& delay = require(e, "delay", where);
        if (!delay.is_number_integer()) throw InvalidNetwork(where + ".delay: expected an integer");
        spec.delay = delay.get<int>();
        edges.push_back(std::move(spec));
    }

    return DelayNetwork(std::move(nodes), edges, three_names(require(doc, "sources", "network"), "sources"),
                        three_names(require(doc, "destinations", "network"), "destinations"));
}

json network_to_json(const DelayNetwork& net) {
    json edges = json::array();
    for (const auto& e : net.edges()) {
        edges.push_back({{"id", e.id},
                         {"tail", net.nodes()[static_cast<std::size_t>(e.tail)]},
                         {"head", net.nodes()[static_cast<std::size_t>(e.head)]},
                         {"delay", e.delay}});
    }
    json sources = json::array(), destinations = json::array();
    for (int i = 0; i < 3; ++i) {
        sources.push_back(net.nodes()[static_cast<std::size_t>(net.source(i))]);
        destinations.push_back(net.nodes()[static_cast<std::size_t>(net.destination(i))]);
    }
    return {{"version", kNetworkFormatVersion},
            {"nodes", net.nodes()},
            {"edges", std::move(edges)},
            {"sources", std::move(sources)},
            {"destinations", std::move(destinations)}};
}

DelayNetwork parse_network(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InvalidNetwork("parse error at byte " + std::to_string(e.byte) + ": " + e.what());
    }
    return network_from_json(doc);
}

DelayNetwork load_network(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidNetwork("cannot open network file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_network(buf.str());
}

}  // namespace netalign
