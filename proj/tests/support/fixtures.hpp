#pragma once

#include <string>

#include "confsel/graph.hpp"

namespace confsel::testing {

inline std::string graph_path(const std::string& file) {
    return std::string(CONFSEL_GRAPHS_DIR) + "/" + file;
}

inline Admg golden(const std::string& file) { return read_graph_file(graph_path(file)); }

}  // namespace confsel::testing
