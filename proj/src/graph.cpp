#include "dgcurv/graph.hpp"

#include "dgcurv/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <deque>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace dgcurv {

DirectedGraph::DirectedGraph(std::size_t n, std::span<const Edge> edges, std::vector<std::string> labels)
    : edges_(edges.begin(), edges.end()), out_(n), in_(n), labels_(std::move(labels)) {
    if (n == 0) throw ParseError("graph has no vertices");
    if (labels_.empty()) {
        labels_.reserve(n);
        for (std::size_t v = 0; v < n; ++v) labels_.push_back(std::to_string(v));
    }
    if (labels_.size() != n) throw ParseError("label count does not match vertex count");

    std::set<Edge> seen;
    for (auto [u, v] : edges_) {
        if (u >= n || v >= n) throw ParseError("edge endpoint out of range");
        if (u == v) throw ParseError("self-loop at vertex " + labels_[u]);
        if (!seen.insert({u, v}).second)
            throw ParseError("duplicate edge " + labels_[u] + " -> " + labels_[v]);
        out_[u].push_back(v);
        in_[v].push_back(u);
    }
    for (auto& l : out_) std::sort(l.begin(), l.end());
    for (auto& l : in_) std::sort(l.begin(), l.end());
}

bool DirectedGraph::has_edge(VertexId u, VertexId v) const {
    return std::binary_search(out_[u].begin(), out_[u].end(), v);
}

DirectedGraph DirectedGraph::permuted(std::span<const VertexId> perm) const {
    const std::size_t n = size();
    if (perm.size() != n) throw std::invalid_argument("permutation size mismatch");
    std::vector<Edge> edges;
    edges.reserve(edges_.size());
    for (auto [u, v] : edges_) edges.emplace_back(perm[u], perm[v]);
    std::vector<std::string> labels(n);
    for (std::size_t v = 0; v < n; ++v) labels[perm[v]] = labels_[v];
    return DirectedGraph(n, edges, std::move(labels));
}

namespace {

class LabelTable {
public:
    VertexId intern(const std::string& label) {
        auto [it, inserted] = ids_.try_emplace(label, labels_.size());
        if (inserted) labels_.push_back(label);
        return it->second;
    }
    std::optional<VertexId> find(const std::string& label) const {
        auto it = ids_.find(label);
        if (it == ids_.end()) return std::nullopt;
        return it->second;
    }
    std::vector<std::string> take() { return std::move(labels_); }
    std::size_t size() const { return labels_.size(); }

private:
    std::unordered_map<std::string, VertexId> ids_;
    std::vector<std::string> labels_;
};

}  // namespace

DirectedGraph parse_edge_list(std::string_view text) {
    LabelTable table;
    std::vector<Edge> edges;
    std::set<Edge> seen;

    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;

        std::istringstream fields(line);
        std::string a, b, extra;
        if (!(fields >> a >> b)) throw ParseError("expected two vertex labels", lineno);
        if (fields >> extra) throw ParseError("unexpected trailing field '" + extra + "'", lineno);
        if (a == b) throw ParseError("self-loop at vertex " + a, lineno);

        const VertexId u = table.intern(a);
        const VertexId v = table.intern(b);
        if (!seen.insert({u, v}).second) throw ParseError("duplicate edge " + a + " -> " + b, lineno);
        edges.emplace_back(u, v);
    }
    if (table.size() == 0) throw ParseError("empty graph");
    const std::size_t n = table.size();
    return DirectedGraph(n, edges, table.take());
}

namespace {

std::string json_label(const nlohmann::json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    throw ParseError("vertex labels must be strings or integers, got " + j.dump());
}

}  // namespace

DirectedGraph parse_json_graph(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("edges") || !doc["edges"].is_array())
        throw ParseError("JSON graph needs an \"edges\" array");

    LabelTable table;
    const bool declared = doc.contains("vertices");
    if (declared) {
        if (!doc["vertices"].is_array()) throw ParseError("\"vertices\" must be an array");
        for (const auto& v : doc["vertices"]) {
            const std::string label = json_label(v);
            if (table.find(label)) throw ParseError("duplicate vertex " + label);
            table.intern(label);
        }
    }

    std::vector<Edge> edges;
    std::set<Edge> seen;
    std::size_t index = 0;
    for (const auto& e : doc["edges"]) {
        const std::string where = "edge #" + std::to_string(index++);
        if (!e.is_array() || e.size() != 2) throw ParseError(where + ": expected [u, v]");
        const std::string a = json_label(e[0]);
        const std::string b = json_label(e[1]);
        auto resolve = [&](const std::string& label) {
            if (!declared) return table.intern(label);
            auto id = table.find(label);
            if (!id) throw ParseError(where + ": unknown vertex " + label);
            return *id;
        };
        if (a == b) throw ParseError(where + ": self-loop at vertex " + a);
        const VertexId u = resolve(a);
        const VertexId v = resolve(b);
        if (!seen.insert({u, v}).second) throw ParseError(where + ": duplicate edge " + a + " -> " + b);
        edges.emplace_back(u, v);
    }
    if (table.size() == 0) throw ParseError("empty graph");
    const std::size_t n = table.size();
    return DirectedGraph(n, edges, table.take());
}

std::string to_edge_list(const DirectedGraph& g) {
    std::string out;
    for (auto [u, v] : g.edges()) {
        out += g.label(u);
        out += ' ';
        out += g.label(v);
        out += '\n';
    }
    return out;
}

std::vector<std::optional<std::size_t>> distances_from(const DirectedGraph& g, VertexId source) {
    std::vector<std::optional<std::size_t>> dist(g.size());
    std::deque<VertexId> queue{source};
    dist[source] = 0;
    while (!queue.empty()) {
        const VertexId u = queue.front();
        queue.pop_front();
        for (VertexId v : g.out_neighbors(u)) {
            if (dist[v]) continue;
            dist[v] = *dist[u] + 1;
            queue.push_back(v);
        }
    }
    return dist;
}

std::optional<std::size_t> distance(const DirectedGraph& g, VertexId x, VertexId y) {
    if (x >= g.size() || y >= g.size()) throw std::out_of_range("vertex id out of range");
    return distances_from(g, x)[y];
}

bool is_strongly_connected(const DirectedGraph& g) {
    // Forward and backward reachability from vertex 0.
    auto reaches_all = [&](bool forward) {
        std::vector<char> seen(g.size(), 0);
        std::vector<VertexId> stack{0};
        seen[0] = 1;
        std::size_t count = 1;
        while (!stack.empty()) {
            const VertexId u = stack.back();
            stack.pop_back();
            for (VertexId v : forward ? g.out_neighbors(u) : g.in_neighbors(u)) {
                if (seen[v]) continue;
                seen[v] = 1;
                ++count;
                stack.push_back(v);
            }
        }
        return count == g.size();
    };
    return reaches_all(true) && reaches_all(false);
}

DirectedGraph make_cycle(std::size_t n) {
    if (n < 2) throw std::invalid_argument("cycle needs n >= 2");
    std::vector<Edge> edges;
    for (std::size_t v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
    return DirectedGraph(n, edges);
}

DirectedGraph make_bidirected_complete(std::size_t n) {
    if (n < 2) throw std::invalid_argument("complete graph needs n >= 2");
    std::vector<Edge> edges;
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v)
            if (u != v) edges.emplace_back(u, v);
    return DirectedGraph(n, edges);
}

DirectedGraph make_random_strongly_connected(std::size_t n, double p, std::uint64_t seed, int budget) {
    if (n < 2) throw std::invalid_argument("random-sc needs n >= 2");
    if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("edge probability must lie in (0, 1]");

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (int attempt = 0; attempt < budget; ++attempt) {
        std::vector<Edge> edges;
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = 0; v < n; ++v)
                if (u != v && coin(rng) < p) edges.emplace_back(u, v);
        DirectedGraph g(n, edges);
        if (is_strongly_connected(g)) return g;
    }
    throw std::runtime_error("no strongly connected sample after " + std::to_string(budget) +
                             " draws; try a larger edge probability");
}

}  // namespace dgcurv
