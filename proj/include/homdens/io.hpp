#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "homdens/graph.hpp"
#include "homdens/kernel.hpp"
#include "homdens/pattern.hpp"

namespace homdens {

// Graph text format: comment lines start with '#'; first content line is
// "n <count>", then one edge per line "u v"; pattern files add
// "parts <comma-list> | <comma-list>". Vertices may carry arbitrary labels,
// mapped to dense ids on ingestion (mapping echoed in reports).
struct LoadedGraph {
    Graph graph;
    std::optional<PatternGraph> pattern;     // present iff a parts line exists
    std::vector<std::string> labels;         // id -> original label
    bool relabeled = false;                  // labels were not dense 0..n-1
    std::vector<std::string> comments;
};

LoadedGraph read_graph_text(std::istream& in);
LoadedGraph load_graph_file(const std::string& path);

void write_graph_text(std::ostream& out, const Graph& g,
                      const std::vector<std::string>& header_comments = {});
void write_pattern_text(std::ostream& out, const PatternGraph& h,
                        const std::vector<std::string>& header_comments = {});

// Kernel files are JSON: {"weights": [["0/1","1/2"],...], "measure":
// ["1/2","1/2"]}; entries are rational strings.
Kernel read_kernel_json(std::istream& in);
Kernel load_kernel_file(const std::string& path);
void write_kernel_json(std::ostream& out, const Kernel& k);

}  // namespace homdens
