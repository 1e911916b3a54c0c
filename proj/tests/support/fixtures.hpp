#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "chroma/graphs.hpp"

namespace fixtures {

struct Named {
    std::string name;
    chroma::RegularGraph graph;
};

inline chroma::RegularGraph prism3() {
    const std::vector<chroma::Edge> e{{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {0, 3}, {1, 4}, {2, 5}};
    return chroma::RegularGraph::from_edges(6, e);
}

inline chroma::RegularGraph petersen() {
    std::vector<chroma::Edge> e;
    auto add = [&](chroma::Vertex a, chroma::Vertex b) { e.push_back({std::min(a, b), std::max(a, b)}); };
    for (chroma::Vertex i = 0; i < 5; ++i) {
        add(i, (i + 1) % 5);
        add(i, i + 5);
        add(5 + i, 5 + (i + 2) % 5);
    }
    return chroma::RegularGraph::from_edges(10, e);
}

inline chroma::RegularGraph k33() {
    std::vector<chroma::Edge> e;
    for (chroma::Vertex a = 0; a < 3; ++a)
        for (chroma::Vertex b = 3; b < 6; ++b) e.push_back({a, b});
    return chroma::RegularGraph::from_edges(6, e, std::vector<std::uint8_t>{0, 0, 0, 1, 1, 1});
}

// Connected, d >= 1 graphs small enough for every exact oracle (n <= 24
// except where noted by the caller).
inline std::vector<Named> small_suite() {
    std::vector<Named> out;
    out.push_back({"K3", chroma::complete_graph(3)});
    out.push_back({"K4", chroma::complete_graph(4)});
    out.push_back({"K5", chroma::complete_graph(5)});
    out.push_back({"C5", chroma::cycle_graph(5)});
    out.push_back({"C6", chroma::cycle_graph(6)});
    out.push_back({"C7", chroma::cycle_graph(7)});
    out.push_back({"prism", prism3()});
    out.push_back({"K33", k33()});
    out.push_back({"petersen", petersen()});
    out.push_back({"tensor3x2", chroma::tensor_power(3, 2)});
    out.push_back({"tensor4x2", chroma::tensor_power(4, 2)});
    out.push_back({"bip8x3", chroma::random_regular_bipartite(8, 3, 11)});
    out.push_back({"bip10x4", chroma::random_regular_bipartite(10, 4, 12)});
    return out;
}

// Larger fixtures for spectral and coloring properties.
inline std::vector<Named> medium_suite() {
    std::vector<Named> out;
    out.push_back({"gadgetK4", chroma::gadget_expand(chroma::complete_graph(4))});
    out.push_back({"gadgetK33", chroma::gadget_expand(k33())});
    out.push_back({"tensor3x3", chroma::tensor_power(3, 3)});
    out.push_back({"bip60x3", chroma::random_regular_bipartite(30, 3, 5)});
    out.push_back({"bip60x5", chroma::random_regular_bipartite(30, 5, 6)});
    out.push_back({"C31", chroma::cycle_graph(31)});
    return out;
}

}  // namespace fixtures
