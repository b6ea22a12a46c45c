#include "secgame/json_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace secgame {

namespace {

using nlohmann::json;

json parse(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

double as_number(const json& j, const char* what) {
    if (!j.is_number()) throw ParseError(std::string(what) + " must be a number");
    return j.get<double>();
}

int as_index(const json& j, const char* what) {
    if (!j.is_number_integer()) throw ParseError(std::string(what) + " must be an integer");
    return j.get<int>();
}

const json& field(const json& j, const char* name) {
    auto it = j.find(name);
    if (it == j.end()) throw ParseError(std::string("missing field \"") + name + "\"");
    return *it;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write " + path);
    out << text;
}

}  // namespace

Instance instance_from_json(const std::string& text) {
    json j = parse(text);
    if (!j.is_object()) throw ParseError("instance document must be an object");

    const json& nodes = field(j, "nodes");
    if (!nodes.is_array() || nodes.empty())
        throw ParseError("\"nodes\" must be a non-empty array");
    std::vector<double> theta, alpha;
    theta.reserve(nodes.size());
    alpha.reserve(nodes.size());
    for (const json& node : nodes) {
        if (!node.is_object()) throw ParseError("node entries must be objects");
        theta.push_back(as_number(field(node, "theta"), "theta"));
        alpha.push_back(as_number(field(node, "alpha"), "alpha"));
    }

    std::vector<Edge> edges;
    if (auto it = j.find("edges"); it != j.end() && !it->is_null()) {
        if (!it->is_array()) throw ParseError("\"edges\" must be an array");
        edges.reserve(it->size());
        for (const json& e : *it) {
            if (!e.is_object()) throw ParseError("edge entries must be objects");
            edges.push_back(Edge{as_index(field(e, "u"), "u"), as_index(field(e, "v"), "v"),
                                 as_number(field(e, "w"), "w")});
        }
    }

    double resource = as_number(field(j, "resource"), "resource");
    return Instance(std::move(theta), std::move(alpha), std::move(edges), resource);
}

std::string instance_to_json(const Instance& inst) {
    json nodes = json::array();
    for (int u = 0; u < inst.node_count(); ++u)
        nodes.push_back({{"theta", inst.theta()[u]}, {"alpha", inst.alpha()[u]}});
    json edges = json::array();
    for (const Edge& e : inst.edges())
        edges.push_back({{"u", e.u}, {"v", e.v}, {"w", e.w}});
    json j{{"nodes", std::move(nodes)}, {"edges", std::move(edges)}, {"resource", inst.resource()}};
    return j.dump(2) + "\n";
}

Instance load_instance(const std::string& path) { return instance_from_json(read_file(path)); }

void save_instance(const Instance& inst, const std::string& path) {
    write_file(path, instance_to_json(inst));
}

MixedStrategy strategy_from_json(const std::string& text) {
    json j = parse(text);
    if (!j.is_object()) throw ParseError("strategy document must be an object");
    const json& support = field(j, "support");
    const json& probs = field(j, "probs");
    if (!support.is_array() || !probs.is_array())
        throw ParseError("\"support\" and \"probs\" must be arrays");
    if (support.size() != probs.size())
        throw ParseError("\"support\" and \"probs\" must have the same length");

    MixedStrategy m;
    for (const json& row : support) {
        if (!row.is_array()) throw ParseError("support entries must be arrays");
        PureStrategy s;
        s.r.reserve(row.size());
        for (const json& v : row) s.r.push_back(as_number(v, "allocation"));
        m.support.push_back(std::move(s));
    }
    for (const json& p : probs) m.probs.push_back(as_number(p, "probability"));
    return m;
}

std::string strategy_to_json(const MixedStrategy& m) {
    json support = json::array();
    for (const PureStrategy& s : m.support) support.push_back(s.r);
    json j{{"support", std::move(support)}, {"probs", m.probs}};
    return j.dump(2) + "\n";
}

MixedStrategy load_strategy(const std::string& path) { return strategy_from_json(read_file(path)); }

void save_strategy(const MixedStrategy& m, const std::string& path) {
    write_file(path, strategy_to_json(m));
}

}  // namespace secgame
