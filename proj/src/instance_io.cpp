#include "gapcm/instance_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace gapcm {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json nodes_to_json(const std::vector<Node>& nodes) {
    ordered_json out = ordered_json::array();
    for (const Node& node : nodes) {
        ordered_json entry;
        entry["id"] = node.id;
        entry["kind"] = node.is_dummy() ? "dummy" : "real";
        out.push_back(std::move(entry));
    }
    return out;
}

std::vector<Node> nodes_from_json(const nlohmann::json& arr, Layer layer) {
    std::vector<Node> nodes;
    for (const auto& entry : arr) {
        Node node;
        node.id = entry.at("id").get<NodeId>();
        node.layer = layer;
        const auto kind = entry.at("kind").get<std::string>();
        if (kind == "real") {
            node.kind = NodeKind::real;
        } else if (kind == "dummy") {
            node.kind = NodeKind::dummy;
        } else {
            throw InputError("node kind must be \"real\" or \"dummy\", got \"" + kind + "\"");
        }
        nodes.push_back(node);
    }
    return nodes;
}

template <typename Fn>
auto parse_or_throw(std::string_view text, const char* what, Fn&& fn) {
    try {
        return fn(nlohmann::json::parse(text));
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed ") + what + ": " + e.what());
    }
}

}  // namespace

std::string instance_to_json(const BipartiteInstance& inst) {
    ordered_json out;
    out["bottom"] = nodes_to_json(inst.bottom);
    out["top"] = nodes_to_json(inst.top);
    ordered_json edges = ordered_json::array();
    for (const Edge& e : inst.edges) edges.push_back({e.bottom, e.top});
    out["edges"] = std::move(edges);
    out["pi1"] = inst.pi1.ids();
    return out.dump(1) + "\n";
}

BipartiteInstance instance_from_json(std::string_view text) {
    return parse_or_throw(text, "instance", [](const nlohmann::json& doc) {
        BipartiteInstance inst;
        inst.bottom = nodes_from_json(doc.at("bottom"), Layer::bottom);
        inst.top = nodes_from_json(doc.at("top"), Layer::top);
        for (const auto& e : doc.at("edges")) {
            if (!e.is_array() || e.size() != 2) throw InputError("edge must be a [bottom_id, top_id] pair");
            inst.edges.push_back(Edge{e[0].get<NodeId>(), e[1].get<NodeId>()});
        }
        inst.pi1 = Permutation(doc.at("pi1").get<std::vector<NodeId>>());
        return inst;
    });
}

std::string permutation_to_json(const Permutation& pi) {
    ordered_json out;
    out["order"] = pi.ids();
    return out.dump() + "\n";
}

Permutation permutation_from_json(std::string_view text) {
    return parse_or_throw(text, "permutation",
                          [](const nlohmann::json& doc) { return Permutation(doc.at("order").get<std::vector<NodeId>>()); });
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw InputError("failed writing " + path.string());
}

}  // namespace gapcm
