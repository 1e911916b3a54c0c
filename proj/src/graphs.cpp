#include "chroma/graphs.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <numeric>
#include <random>
#include <string>

#include "chroma/error.hpp"

namespace chroma {
namespace {

std::string fingerprint_of(std::uint32_t n, std::uint32_t d, const std::vector<Edge>& edges) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](std::uint64_t value) {
        for (int i = 0; i < 8; ++i) {
            h ^= (value >> (8 * i)) & 0xff;
            h *= 0x100000001b3ULL;
        }
    };
    mix(n);
    mix(d);
    for (const auto& e : edges) {
        mix(e.u);
        mix(e.v);
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Edge canonical(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }

}  // namespace

RegularGraph RegularGraph::from_edges(std::uint32_t n, std::span<const Edge> edges,
                                      std::optional<std::vector<std::uint8_t>> part_labels,
                                      GraphMeta meta) {
    if (n == 0) fail(ErrorCode::kInvalidArgument, "graph needs at least one vertex");
    std::vector<Edge> canon;
    canon.reserve(edges.size());
    for (const auto& e : edges) {
        if (e.u >= n || e.v >= n) {
            fail(ErrorCode::kInvalidArgument, "edge (" + std::to_string(e.u) + "," +
                                                  std::to_string(e.v) + ") out of range for n=" +
                                                  std::to_string(n));
        }
        if (e.u == e.v) fail(ErrorCode::kSelfLoop, "self-loop at vertex " + std::to_string(e.u));
        canon.push_back(canonical(e.u, e.v));
    }
    std::sort(canon.begin(), canon.end());
    if (auto dup = std::adjacent_find(canon.begin(), canon.end()); dup != canon.end()) {
        fail(ErrorCode::kDuplicateEdge,
             "duplicate edge (" + std::to_string(dup->u) + "," + std::to_string(dup->v) + ")");
    }

    std::vector<std::uint32_t> deg(n, 0);
    for (const auto& e : canon) {
        ++deg[e.u];
        ++deg[e.v];
    }
    const std::uint32_t d = deg[0];
    for (Vertex v = 0; v < n; ++v) {
        if (deg[v] != d) {
            fail(ErrorCode::kNonRegular, "vertex " + std::to_string(v) + " has degree " +
                                             std::to_string(deg[v]) + ", vertex 0 has " +
                                             std::to_string(d));
        }
    }

    if (part_labels) {
        if (part_labels->size() != n) {
            fail(ErrorCode::kInvalidArgument, "part labels must cover every vertex");
        }
        for (auto label : *part_labels) {
            if (label > 1) fail(ErrorCode::kInvalidArgument, "part labels must be 0 or 1");
        }
        for (const auto& e : canon) {
            if ((*part_labels)[e.u] == (*part_labels)[e.v]) {
                fail(ErrorCode::kNotBipartite, "edge (" + std::to_string(e.u) + "," +
                                                   std::to_string(e.v) + ") does not cross parts");
            }
        }
    }

    RegularGraph g;
    g.n_ = n;
    g.d_ = d;
    g.adjacency_.assign(static_cast<std::size_t>(n) * d, 0);
    std::vector<std::uint32_t> fill(n, 0);
    for (const auto& e : canon) {
        g.adjacency_[static_cast<std::size_t>(e.u) * d + fill[e.u]++] = e.v;
        g.adjacency_[static_cast<std::size_t>(e.v) * d + fill[e.v]++] = e.u;
    }
    for (Vertex v = 0; v < n; ++v) {
        auto first = g.adjacency_.begin() + static_cast<std::ptrdiff_t>(v) * d;
        std::sort(first, first + d);
    }
    g.fingerprint_ = fingerprint_of(n, d, canon);
    g.edges_ = std::move(canon);
    g.parts_ = std::move(part_labels);
    g.meta_ = std::move(meta);
    return g;
}

std::optional<std::size_t> RegularGraph::edge_id(Vertex a, Vertex b) const {
    if (a >= n_ || b >= n_ || a == b) return std::nullopt;
    const Edge key = canonical(a, b);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
    if (it == edges_.end() || *it != key) return std::nullopt;
    return static_cast<std::size_t>(it - edges_.begin());
}

bool RegularGraph::has_edge(Vertex a, Vertex b) const {
    if (a >= n_ || b >= n_) return false;
    auto nb = neighbors(a);
    return std::binary_search(nb.begin(), nb.end(), b);
}

bool RegularGraph::is_connected() const {
    std::vector<char> seen(n_, 0);
    std::vector<Vertex> stack{0};
    seen[0] = 1;
    std::uint32_t reached = 1;
    while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        for (Vertex w : neighbors(v)) {
            if (!seen[w]) {
                seen[w] = 1;
                ++reached;
                stack.push_back(w);
            }
        }
    }
    return reached == n_;
}

RegularGraph complete_graph(std::uint32_t q) {
    if (q < 2) fail(ErrorCode::kInvalidArgument, "complete graph needs q >= 2");
    std::vector<Edge> edges;
    for (Vertex a = 0; a < q; ++a)
        for (Vertex b = a + 1; b < q; ++b) edges.push_back({a, b});
    GraphMeta meta;
    meta.construction = "complete";
    return RegularGraph::from_edges(q, edges, std::nullopt, std::move(meta));
}

RegularGraph cycle_graph(std::uint32_t n) {
    if (n == 0) fail(ErrorCode::kInvalidArgument, "cycle needs at least one vertex");
    std::vector<Edge> edges;
    for (Vertex v = 0; v < n; ++v) edges.push_back({v, (v + 1) % n});
    GraphMeta meta;
    meta.construction = "cycle";
    return RegularGraph::from_edges(n, edges, std::nullopt, std::move(meta));
}

RegularGraph tensor_power(std::uint32_t q, std::uint32_t power, std::uint64_t vertex_cap) {
    if (q < 2 || power < 1) fail(ErrorCode::kInvalidArgument, "tensor power needs q >= 2 and N >= 1");
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < power; ++i) {
        count *= q;
        if (count > vertex_cap) {
            fail(ErrorCode::kSizeCap, "q^N exceeds the vertex cap of " + std::to_string(vertex_cap));
        }
    }
    const auto n = static_cast<std::uint32_t>(count);
    std::vector<std::uint32_t> place(power, 1);
    for (std::uint32_t i = 1; i < power; ++i) place[i] = place[i - 1] * q;

    // Neighbors of a: every tuple b with b_i != a_i for all i. Walk the
    // (q-1)^N offsets as a mixed-radix counter.
    std::vector<Edge> edges;
    std::vector<std::uint32_t> offset(power);
    for (Vertex a = 0; a < n; ++a) {
        std::fill(offset.begin(), offset.end(), 1);
        for (;;) {
            Vertex b = 0;
            for (std::uint32_t i = 0; i < power; ++i) {
                std::uint32_t digit = (a / place[i]) % q;
                b += ((digit + offset[i]) % q) * place[i];
            }
            if (a < b) edges.push_back({a, b});
            std::uint32_t i = 0;
            while (i < power && ++offset[i] == q) offset[i++] = 1;
            if (i == power) break;
        }
    }
    GraphMeta meta;
    meta.construction = "tensor";
    meta.tensor = TensorInfo{q, power};
    return RegularGraph::from_edges(n, edges, std::nullopt, std::move(meta));
}

RegularGraph gadget_expand(const RegularGraph& base) {
    if (base.degree() != 3) {
        fail(ErrorCode::kNotCubic, "gadget expansion needs a 3-regular base graph, got degree " +
                                       std::to_string(base.degree()));
    }
    const std::uint32_t base_n = base.vertex_count();
    const auto total = static_cast<std::uint32_t>(base_n + 6 * base.edge_count());
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(total) * 3 / 2);
    GadgetInfo info;
    info.base_vertices = base_n;
    Vertex next = base_n;
    for (const auto& e : base.edges()) {
        GadgetBlock block;
        block.x = e.u;
        block.y = e.v;
        for (int i = 0; i < 3; ++i) block.x_side[i] = next + i;
        for (int i = 0; i < 3; ++i) block.y_side[i] = next + 3 + i;
        next += 6;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (i != 0 || j != 0) edges.push_back({block.x_side[i], block.y_side[j]});
        edges.push_back(canonical(block.x, block.x_side[0]));
        edges.push_back(canonical(block.y, block.y_side[0]));
        info.blocks.push_back(block);
    }
    GraphMeta meta;
    meta.construction = "gadget";
    meta.gadget = std::move(info);
    return RegularGraph::from_edges(total, edges, std::nullopt, std::move(meta));
}

namespace {

// Union of d uniform permutations with whole-attempt rejection.
std::optional<std::vector<std::vector<Vertex>>> bipartite_by_rejection(
    std::uint32_t half, std::uint32_t d, std::mt19937_64& rng, std::size_t attempts) {
    std::vector<Vertex> perm(half);
    std::vector<std::vector<Vertex>> right_of(half);
    for (std::size_t attempt = 0; attempt < attempts; ++attempt) {
        for (auto& r : right_of) r.clear();
        bool simple = true;
        for (std::uint32_t k = 0; k < d && simple; ++k) {
            std::iota(perm.begin(), perm.end(), 0);
            std::shuffle(perm.begin(), perm.end(), rng);
            for (Vertex i = 0; i < half; ++i) {
                auto& r = right_of[i];
                if (std::find(r.begin(), r.end(), perm[i]) != r.end()) {
                    simple = false;
                    break;
                }
                r.push_back(perm[i]);
            }
        }
        if (simple) return right_of;
    }
    return std::nullopt;
}

// Union of d uniform permutations; each parallel edge is removed by a
// degree-preserving switch with a uniformly chosen partner edge.
std::optional<std::vector<std::vector<Vertex>>> bipartite_by_repair(
    std::uint32_t half, std::uint32_t d, std::mt19937_64& rng, std::size_t moves) {
    std::vector<Vertex> perm(half);
    std::vector<std::vector<Vertex>> right_of(half);
    for (std::uint32_t k = 0; k < d; ++k) {
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        for (Vertex i = 0; i < half; ++i) right_of[i].push_back(perm[i]);
    }
    auto count_of = [&](Vertex left, Vertex right) {
        const auto& r = right_of[left];
        return std::count(r.begin(), r.end(), right);
    };
    std::uniform_int_distribution<std::uint64_t> pick_edge(0, static_cast<std::uint64_t>(half) * d - 1);
    std::size_t used = 0;
    for (Vertex a = 0; a < half; ++a) {
        for (std::uint32_t slot = 0; slot < d; ++slot) {
            while (count_of(a, right_of[a][slot]) > 1) {
                if (used++ >= moves) return std::nullopt;
                const std::uint64_t other = pick_edge(rng);
                const auto c = static_cast<Vertex>(other / d);
                const auto cslot = static_cast<std::uint32_t>(other % d);
                const Vertex b = right_of[a][slot];
                const Vertex e = right_of[c][cslot];
                if (c == a || e == b) continue;
                if (count_of(a, e) > 0 || count_of(c, b) > 0) continue;
                right_of[a][slot] = e;
                right_of[c][cslot] = b;
            }
        }
    }
    return right_of;
}

}  // namespace

RegularGraph random_regular_bipartite(std::uint32_t half, std::uint32_t d, std::uint64_t seed,
                                      const BipartiteOptions& options) {
    if (half == 0) fail(ErrorCode::kInvalidArgument, "bipartite graph needs half >= 1");
    if (d > half) {
        fail(ErrorCode::kInvalidArgument,
             "degree " + std::to_string(d) + " exceeds part size " + std::to_string(half));
    }
    std::mt19937_64 rng(seed);
    auto right_of = d <= options.rejection_max_degree
                        ? bipartite_by_rejection(half, d, rng, options.budget)
                        : bipartite_by_repair(half, d, rng, options.budget);
    if (!right_of) {
        fail(ErrorCode::kGenerationTimeout,
             "no simple bipartite graph within a budget of " + std::to_string(options.budget));
    }
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(half) * d);
    for (Vertex i = 0; i < half; ++i)
        for (Vertex j : (*right_of)[i]) edges.push_back({i, half + j});
    std::vector<std::uint8_t> parts(2 * static_cast<std::size_t>(half), 0);
    std::fill(parts.begin() + half, parts.end(), 1);
    GraphMeta meta;
    meta.construction = "random-bipartite";
    return RegularGraph::from_edges(2 * half, edges, std::move(parts), std::move(meta));
}

Signing uniform_signing(const RegularGraph& g, std::int8_t sign) {
    return Signing{std::vector<std::int8_t>(g.edge_count(), sign)};
}

RegularGraph two_lift(const RegularGraph& g, const Signing& signing) {
    if (signing.signs.size() != g.edge_count()) {
        fail(ErrorCode::kSigningMismatch, "signing has " + std::to_string(signing.signs.size()) +
                                              " entries for " + std::to_string(g.edge_count()) +
                                              " edges");
    }
    const std::uint32_t n = g.vertex_count();
    std::vector<Edge> edges;
    edges.reserve(2 * g.edge_count());
    for (std::size_t id = 0; id < g.edge_count(); ++id) {
        const auto [u, v] = g.edges()[id];
        switch (signing.signs[id]) {
            case 1:
                edges.push_back({u, v});
                edges.push_back({u + n, v + n});
                break;
            case -1:
                edges.push_back({u, v + n});
                edges.push_back({u + n, v});
                break;
            default:
                fail(ErrorCode::kSigningMismatch, "signs must be -1 or +1");
        }
    }
    std::optional<std::vector<std::uint8_t>> parts;
    if (g.part_labels()) {
        parts = *g.part_labels();
        parts->insert(parts->end(), g.part_labels()->begin(), g.part_labels()->end());
    }
    GraphMeta meta;
    meta.construction = "two-lift";
    meta.lift = LiftInfo{g.fingerprint(), n};
    return RegularGraph::from_edges(2 * n, edges, std::move(parts), std::move(meta));
}

EdgeExpansion edge_expansion_exact(const RegularGraph& g, std::uint32_t vertex_cap) {
    const std::uint32_t n = g.vertex_count();
    if (n > vertex_cap || n > 31) {
        fail(ErrorCode::kTooLarge, "exhaustive edge expansion is capped at " +
                                       std::to_string(std::min(vertex_cap, 31u)) + " vertices");
    }
    if (n < 2) fail(ErrorCode::kInvalidArgument, "edge expansion needs at least two vertices");

    std::vector<std::uint32_t> nbmask(n, 0);
    for (Vertex v = 0; v < n; ++v)
        for (Vertex w : g.neighbors(v)) nbmask[v] |= 1u << w;

    // Every cut {S, V\S} is visited once with vertex n-1 outside S; its
    // ratio uses the smaller side.
    const std::uint64_t limit = std::uint64_t{1} << (n - 1);
    std::uint32_t mask = 0;
    std::uint64_t cut = 0;
    std::uint64_t best_cut = 0;
    std::uint64_t best_den = 0;
    std::uint32_t best_mask = 0;
    const std::uint32_t d = g.degree();
    for (std::uint64_t i = 1; i < limit; ++i) {
        const int v = std::countr_zero(i);
        const std::uint32_t bit = 1u << v;
        const auto inside = static_cast<std::uint64_t>(std::popcount(nbmask[v] & mask));
        if (mask & bit) {
            mask &= ~bit;
            cut -= d - 2 * inside;
        } else {
            mask |= bit;
            cut += d - 2 * inside;
        }
        const auto size = static_cast<std::uint64_t>(std::popcount(mask));
        const std::uint64_t den = std::min<std::uint64_t>(size, n - size);
        if (best_den == 0 || cut * best_den < best_cut * den) {
            best_cut = cut;
            best_den = den;
            best_mask = mask;
        }
    }

    EdgeExpansion result;
    result.cut = best_cut;
    result.h = static_cast<double>(best_cut) / static_cast<double>(best_den);
    const bool take_complement = static_cast<std::uint64_t>(std::popcount(best_mask)) != best_den;
    for (Vertex v = 0; v < n; ++v) {
        const bool in_mask = (best_mask >> v) & 1u;
        if (in_mask != take_complement) result.witness.push_back(v);
    }
    return result;
}

VertexSubsetMeasures subset_measures(const RegularGraph& g, std::span<const Vertex> a,
                                     std::optional<std::span<const Vertex>> b) {
    const std::uint32_t n = g.vertex_count();
    std::vector<std::uint8_t> tag(n, 0);
    auto mark = [&](std::span<const Vertex> set, std::uint8_t label) {
        for (Vertex v : set) {
            if (v >= n) fail(ErrorCode::kInvalidArgument, "vertex " + std::to_string(v) + " out of range");
            if (tag[v] == label) fail(ErrorCode::kInvalidArgument, "vertex " + std::to_string(v) + " repeated");
            if (tag[v] != 0) fail(ErrorCode::kOverlap, "sets share vertex " + std::to_string(v));
            tag[v] = label;
        }
    };
    mark(a, 1);
    if (b) {
        mark(*b, 2);
    } else {
        for (auto& t : tag)
            if (t == 0) t = 2;
    }
    VertexSubsetMeasures m;
    m.size = a.size();
    for (const auto& e : g.edges()) {
        const auto tu = tag[e.u];
        const auto tv = tag[e.v];
        if (tu == 1 && tv == 1) ++m.edges_within;
        else if ((tu == 1 && tv == 2) || (tu == 2 && tv == 1)) ++m.edges_cross;
    }
    m.w = static_cast<double>(m.size) / n;
    if (g.edge_count() > 0) {
        m.e_within = static_cast<double>(m.edges_within) / static_cast<double>(g.edge_count());
        m.e_cross = static_cast<double>(m.edges_cross) / static_cast<double>(g.edge_count());
    }
    return m;
}

}  // namespace chroma
