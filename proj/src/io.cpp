#include "homdens/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace homdens {

namespace {

using json = nlohmann::ordered_json;

// Splits a comma list, trimming blanks.
std::vector<std::string> split_list(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else if (!isspace(static_cast<unsigned char>(c))) {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

}  // namespace

LoadedGraph read_graph_text(std::istream& in) {
    LoadedGraph out;
    std::string line;
    int n = -1;
    std::vector<std::pair<std::string, std::string>> label_edges;
    std::optional<std::pair<std::vector<std::string>, std::vector<std::string>>>
        parts;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            out.comments.push_back(line);
            continue;
        }
        std::istringstream ls(line);
        std::string tok;
        ls >> tok;
        if (tok == "n") {
            if (!(ls >> n) || n < 0)
                throw std::invalid_argument("bad vertex count line: " + line);
        } else if (tok == "parts") {
            std::string rest;
            std::getline(ls, rest);
            auto bar = rest.find('|');
            if (bar == std::string::npos)
                throw std::invalid_argument("parts line needs '|': " + line);
            parts = {split_list(rest.substr(0, bar), ','),
                     split_list(rest.substr(bar + 1), ',')};
        } else {
            std::string second;
            if (!(ls >> second))
                throw std::invalid_argument("bad edge line: " + line);
            label_edges.emplace_back(tok, second);
        }
    }
    if (n < 0) throw std::invalid_argument("missing 'n <count>' line");

    // Dense integer labels pass through; anything else is mapped in first
    // appearance order.
    bool dense = true;
    auto as_dense = [&](const std::string& s) -> int {
        try {
            size_t used = 0;
            int v = std::stoi(s, &used);
            if (used == s.size() && v >= 0 && v < n) return v;
        } catch (const std::exception&) {
        }
        return -1;
    };
    for (const auto& [a, b] : label_edges)
        if (as_dense(a) < 0 || as_dense(b) < 0) dense = false;
    if (parts)
        for (const auto& side : {parts->first, parts->second})
            for (const auto& s : side)
                if (as_dense(s) < 0) dense = false;

    std::map<std::string, int> ids;
    auto id_of = [&](const std::string& s) -> int {
        if (dense) return as_dense(s);
        auto it = ids.find(s);
        if (it != ids.end()) return it->second;
        int v = static_cast<int>(ids.size());
        if (v >= n)
            throw std::invalid_argument("more labels than declared vertices: " + s);
        ids[s] = v;
        return v;
    };

    std::vector<Edge> edges;
    for (const auto& [a, b] : label_edges) edges.emplace_back(id_of(a), id_of(b));

    out.relabeled = !dense;
    out.labels.resize(n);
    if (dense) {
        for (int v = 0; v < n; ++v) out.labels[v] = std::to_string(v);
    } else {
        for (const auto& [label, v] : ids) out.labels[v] = label;
        for (int v = 0; v < n; ++v)
            if (out.labels[v].empty()) out.labels[v] = "_" + std::to_string(v);
    }

    out.graph = Graph(n, edges);
    if (parts) {
        std::vector<int> sides(n, -1);
        for (const auto& s : parts->first) sides[id_of(s)] = 0;
        for (const auto& s : parts->second) sides[id_of(s)] = 1;
        for (int v = 0; v < n; ++v)
            if (sides[v] < 0)
                throw std::invalid_argument("parts line does not cover vertex " +
                                            out.labels[v]);
        out.pattern = PatternGraph::build(n, edges, sides);
    }
    return out;
}

LoadedGraph load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open graph file: " + path);
    return read_graph_text(in);
}

void write_graph_text(std::ostream& out, const Graph& g,
                      const std::vector<std::string>& header_comments) {
    for (const auto& c : header_comments) out << "# " << c << "\n";
    out << "n " << g.size() << "\n";
    for (auto [u, v] : g.edges()) out << u << " " << v << "\n";
}

void write_pattern_text(std::ostream& out, const PatternGraph& h,
                        const std::vector<std::string>& header_comments) {
    for (const auto& c : header_comments) out << "# " << c << "\n";
    out << "n " << h.size() << "\n";
    for (auto [u, v] : h.edges()) out << u << " " << v << "\n";
    out << "parts ";
    bool first = true;
    for (int v : h.part(0)) {
        if (!first) out << ",";
        out << v;
        first = false;
    }
    out << " | ";
    first = true;
    for (int v : h.part(1)) {
        if (!first) out << ",";
        out << v;
        first = false;
    }
    out << "\n";
}

Kernel read_kernel_json(std::istream& in) {
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("bad kernel JSON: ") + e.what());
    }
    if (!j.contains("weights") || !j.contains("measure"))
        throw std::invalid_argument("kernel JSON needs 'weights' and 'measure'");
    auto parse_entry = [](const json& e) -> Rat {
        if (e.is_string()) return parse_rational(e.get<std::string>());
        if (e.is_number_integer()) return Rat(e.get<long>());
        throw std::invalid_argument(
            "kernel entries must be rational strings or integers");
    };
    std::vector<std::vector<Rat>> weights;
    for (const auto& row : j["weights"]) {
        std::vector<Rat> r;
        for (const auto& e : row) r.push_back(parse_entry(e));
        weights.push_back(std::move(r));
    }
    std::vector<Rat> measure;
    for (const auto& e : j["measure"]) measure.push_back(parse_entry(e));
    return Kernel::make(std::move(weights), std::move(measure));
}

Kernel load_kernel_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open kernel file: " + path);
    return read_kernel_json(in);
}

void write_kernel_json(std::ostream& out, const Kernel& k) {
    json j;
    json weights = json::array();
    for (const auto& row : k.weights) {
        json r = json::array();
        for (const auto& w : row) r.push_back(rat_str(w));
        weights.push_back(r);
    }
    j["weights"] = weights;
    json measure = json::array();
    for (const auto& m : k.measure) measure.push_back(rat_str(m));
    j["measure"] = measure;
    out << j.dump(2) << "\n";
}

}  // namespace homdens
