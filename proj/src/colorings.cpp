#include "chroma/colorings.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

#include "chroma/assignment.hpp"
#include "chroma/error.hpp"

namespace chroma {
namespace {

void require_same_binding(const Coloring& x, const Coloring& y) {
    if (x.size() != y.size() || x.q() != y.q() || x.graph_id() != y.graph_id()) {
        fail(ErrorCode::kBindingMismatch, "colorings are bound to different graphs or palettes");
    }
}

void require_bound_to(const RegularGraph& g, const Coloring& x) {
    if (x.size() != g.vertex_count() || (!x.graph_id().empty() && x.graph_id() != g.fingerprint())) {
        fail(ErrorCode::kBindingMismatch, "coloring is not bound to this graph");
    }
}

std::uint64_t brute_force_best(const AgreementMatrix& m, std::vector<Color>& sigma) {
    const std::uint32_t q = m.q();
    std::vector<Color> perm(q);
    std::iota(perm.begin(), perm.end(), Color{0});
    std::uint64_t best = 0;
    bool first = true;
    do {
        std::uint64_t agree = 0;
        for (Color b = 0; b < q; ++b) agree += m.at(perm[b], b);
        if (first || agree > best) {
            best = agree;
            sigma = perm;
            first = false;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

std::int64_t optimal_value(const std::vector<std::int64_t>& w, std::size_t k) {
    if (k == 0) return 0;
    auto cols = max_weight_assignment(w, k);
    return assignment_value(w, k, cols);
}

// Lexicographically smallest optimal sigma: fix sigma[0], sigma[1], ... to
// the smallest value that keeps the optimum reachable.
std::uint64_t assignment_best(const AgreementMatrix& m, std::vector<Color>& sigma) {
    const std::uint32_t q = m.q();
    std::vector<std::int64_t> w(static_cast<std::size_t>(q) * q);
    for (Color b = 0; b < q; ++b)
        for (Color a = 0; a < q; ++a) w[static_cast<std::size_t>(b) * q + a] = static_cast<std::int64_t>(m.at(a, b));
    const std::int64_t opt = optimal_value(w, q);

    sigma.assign(q, 0);
    std::vector<char> taken(q, 0);
    std::int64_t fixed = 0;
    for (Color b = 0; b < q; ++b) {
        for (Color a = 0; a < q; ++a) {
            if (taken[a]) continue;
            // Sub-problem on rows b+1.. and the columns still free besides a.
            std::vector<Color> free_cols;
            for (Color c = 0; c < q; ++c)
                if (!taken[c] && c != a) free_cols.push_back(c);
            const std::size_t k = free_cols.size();
            std::vector<std::int64_t> sub(k * k);
            for (std::size_t r = 0; r < k; ++r)
                for (std::size_t c = 0; c < k; ++c)
                    sub[r * k + c] = w[(static_cast<std::size_t>(b) + 1 + r) * q + free_cols[c]];
            const std::int64_t here = w[static_cast<std::size_t>(b) * q + a];
            if (fixed + here + optimal_value(sub, k) == opt) {
                sigma[b] = a;
                taken[a] = 1;
                fixed += here;
                break;
            }
        }
    }
    return static_cast<std::uint64_t>(opt);
}

}  // namespace

Coloring::Coloring(std::uint32_t q, std::vector<Color> colors, std::string graph_id)
    : q_(q), colors_(std::move(colors)), graph_id_(std::move(graph_id)) {
    if (q_ == 0 || q_ > 0xffff) fail(ErrorCode::kInvalidArgument, "palette size must be in [1, 65535]");
    for (std::size_t v = 0; v < colors_.size(); ++v) {
        if (colors_[v] >= q_) {
            fail(ErrorCode::kInvalidArgument, "color " + std::to_string(colors_[v]) + " at vertex " +
                                                  std::to_string(v) + " is outside [0," +
                                                  std::to_string(q_) + ")");
        }
    }
}

Coloring Coloring::bind(const RegularGraph& g, std::uint32_t q, std::vector<Color> colors) {
    if (colors.size() != g.vertex_count()) {
        fail(ErrorCode::kBindingMismatch, "coloring has " + std::to_string(colors.size()) +
                                              " entries for a graph on " +
                                              std::to_string(g.vertex_count()) + " vertices");
    }
    return Coloring(q, std::move(colors), g.fingerprint());
}

std::uint64_t AgreementMatrix::total() const {
    return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

ProperCheck is_proper(const RegularGraph& g, const Coloring& x) {
    require_bound_to(g, x);
    for (const auto& e : g.edges()) {
        if (x[e.u] == x[e.v]) return ProperCheck{false, e};
    }
    return ProperCheck{};
}

AgreementMatrix agreement_matrix(const Coloring& x, const Coloring& y) {
    require_same_binding(x, y);
    const std::uint32_t q = x.q();
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(q) * q, 0);
    for (std::size_t v = 0; v < x.size(); ++v) ++counts[static_cast<std::size_t>(x[v]) * q + y[v]];
    return AgreementMatrix(q, std::move(counts));
}

ColoringDistance distance(const Coloring& x, const Coloring& y, DistanceMethod method) {
    const AgreementMatrix m = agreement_matrix(x, y);
    if (method == DistanceMethod::kAuto) {
        method = m.q() <= kBruteForceMaxQ ? DistanceMethod::kBruteForce : DistanceMethod::kAssignment;
    }
    ColoringDistance result;
    const std::uint64_t agree =
        method == DistanceMethod::kBruteForce ? brute_force_best(m, result.sigma) : assignment_best(m, result.sigma);
    result.distance = x.size() - agree;
    return result;
}

Coloring relabel(const Coloring& x, std::span<const Color> sigma) {
    if (sigma.size() != x.q()) fail(ErrorCode::kInvalidArgument, "relabeling must cover the palette");
    std::vector<char> seen(x.q(), 0);
    for (Color c : sigma) {
        if (c >= x.q() || seen[c]) fail(ErrorCode::kInvalidArgument, "relabeling is not a permutation");
        seen[c] = 1;
    }
    std::vector<Color> colors(x.size());
    for (std::size_t v = 0; v < x.size(); ++v) colors[v] = sigma[x[v]];
    return Coloring(x.q(), std::move(colors), x.graph_id());
}

Coloring gadget_coloring_from_base(const RegularGraph& g, std::uint32_t q, std::span<const Color> base_colors) {
    if (!g.meta().gadget) fail(ErrorCode::kNoGadgetMeta, "graph was not built by gadget expansion");
    if (q < 3) fail(ErrorCode::kInvalidArgument, "gadget colorings need q >= 3");
    const auto& info = *g.meta().gadget;
    if (base_colors.size() != info.base_vertices) {
        fail(ErrorCode::kInvalidArgument, "need one color per base vertex");
    }
    std::vector<Color> colors(g.vertex_count(), 0);
    for (std::uint32_t v = 0; v < info.base_vertices; ++v) {
        if (base_colors[v] >= q) fail(ErrorCode::kInvalidArgument, "base color outside the palette");
        colors[v] = base_colors[v];
    }
    for (const auto& block : info.blocks) {
        const Color i = colors[block.x];
        const Color j = colors[block.y];
        Color x_part = j;
        Color y_part = i;
        if (i == j) {
            x_part = static_cast<Color>((i + 1) % q);
            y_part = static_cast<Color>((i + 2) % q);
        }
        for (Vertex v : block.x_side) colors[v] = x_part;
        for (Vertex v : block.y_side) colors[v] = y_part;
    }
    return Coloring::bind(g, q, std::move(colors));
}

Coloring sample_gadget_coloring(const RegularGraph& g, std::uint32_t q, std::uint64_t seed) {
    if (!g.meta().gadget) fail(ErrorCode::kNoGadgetMeta, "graph was not built by gadget expansion");
    if (q < 3) fail(ErrorCode::kInvalidArgument, "gadget colorings need q >= 3");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint32_t> pick(0, q - 1);
    std::vector<Color> base(g.meta().gadget->base_vertices);
    for (auto& c : base) c = static_cast<Color>(pick(rng));
    return gadget_coloring_from_base(g, q, base);
}

Coloring sample_bipartite_biased(const RegularGraph& g, std::uint32_t q, double tau, std::uint64_t seed) {
    if (!g.part_labels()) fail(ErrorCode::kNotBipartite, "biased sampler needs part labels");
    if (q < 3) fail(ErrorCode::kInvalidArgument, "biased sampler needs q >= 3");
    if (!(tau >= 0.0 && tau <= 1.0)) fail(ErrorCode::kBadTau, "tau must lie in [0, 1]");
    const auto& parts = *g.part_labels();
    const std::uint32_t low = q / 2;
    const auto marker = static_cast<Color>(q - 1);
    const auto answer = static_cast<Color>(q - 2);

    std::mt19937_64 rng(seed);
    std::bernoulli_distribution is_marker(tau);
    std::uniform_int_distribution<std::uint32_t> first_half(0, low - 1);
    std::uniform_int_distribution<std::uint32_t> second_half(low, q - 1);

    std::vector<Color> colors(g.vertex_count(), 0);
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (parts[v] != 0) continue;
        colors[v] = is_marker(rng) ? marker : static_cast<Color>(first_half(rng));
    }
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (parts[v] == 0) continue;
        const auto nb = g.neighbors(v);
        const bool forced = std::any_of(nb.begin(), nb.end(), [&](Vertex w) { return colors[w] == marker; });
        colors[v] = forced ? answer : static_cast<Color>(second_half(rng));
    }
    return Coloring::bind(g, q, std::move(colors));
}

std::pair<Coloring, Coloring> layered_bipartite_pair(const RegularGraph& g, std::uint32_t q) {
    if (!g.part_labels()) fail(ErrorCode::kNotBipartite, "layered pair needs part labels");
    if (q < 3) fail(ErrorCode::kInvalidArgument, "layered pair needs q >= 3");
    const auto& parts = *g.part_labels();
    std::vector<Vertex> first, second;
    for (Vertex v = 0; v < g.vertex_count(); ++v) (parts[v] == 0 ? first : second).push_back(v);
    if (first.size() != second.size() || first.empty() || first.size() % (q - 1) != 0) {
        fail(ErrorCode::kBadPartSize, "parts must both have size (q-1)*m; got " + std::to_string(first.size()) +
                                          " and " + std::to_string(second.size()));
    }
    const std::size_t m = first.size() / (q - 1);
    std::vector<Color> x(g.vertex_count()), y(g.vertex_count());
    for (std::size_t k = 0; k < first.size(); ++k) {
        x[first[k]] = 0;
        y[first[k]] = static_cast<Color>(k / m);
    }
    for (std::size_t k = 0; k < second.size(); ++k) {
        x[second[k]] = static_cast<Color>(1 + k / m);
        y[second[k]] = static_cast<Color>(q - 1);
    }
    return {Coloring::bind(g, q, std::move(x)), Coloring::bind(g, q, std::move(y))};
}

std::vector<Coloring> coordinate_colorings(const RegularGraph& tensor_graph) {
    if (!tensor_graph.meta().tensor) fail(ErrorCode::kInvalidArgument, "graph was not built by tensor_power");
    const auto [q, power] = *tensor_graph.meta().tensor;
    std::vector<Coloring> out;
    std::uint32_t place = 1;
    for (std::uint32_t i = 0; i < power; ++i, place *= q) {
        std::vector<Color> colors(tensor_graph.vertex_count());
        for (Vertex v = 0; v < tensor_graph.vertex_count(); ++v) colors[v] = static_cast<Color>((v / place) % q);
        out.push_back(Coloring::bind(tensor_graph, q, std::move(colors)));
    }
    return out;
}

Coloring lift_coloring(const Coloring& x, const RegularGraph& lifted) {
    const auto& lift = lifted.meta().lift;
    if (!lift || lift->parent_vertices != x.size() ||
        (!x.graph_id().empty() && lift->parent_fingerprint != x.graph_id())) {
        fail(ErrorCode::kBindingMismatch, "graph is not a 2-lift of the coloring's graph");
    }
    std::vector<Color> colors(x.colors().begin(), x.colors().end());
    colors.insert(colors.end(), x.colors().begin(), x.colors().end());
    return Coloring::bind(lifted, x.q(), std::move(colors));
}

std::vector<Coloring> enumerate_proper(const RegularGraph& g, std::uint32_t q, std::uint32_t vertex_cap,
                                       std::size_t count_cap) {
    const std::uint32_t n = g.vertex_count();
    if (n > vertex_cap) {
        fail(ErrorCode::kTooLarge, "enumeration is capped at " + std::to_string(vertex_cap) + " vertices");
    }
    if (q == 0) fail(ErrorCode::kInvalidArgument, "palette must be non-empty");
    std::vector<Coloring> out;
    std::vector<Color> colors(n, 0);
    std::vector<std::int32_t> next(n, 0);  // next color to try at each depth
    std::int64_t depth = 0;
    while (depth >= 0) {
        if (depth == static_cast<std::int64_t>(n)) {
            if (out.size() >= count_cap) {
                fail(ErrorCode::kTooLarge, "more than " + std::to_string(count_cap) + " proper colorings");
            }
            out.push_back(Coloring::bind(g, q, colors));
            --depth;
            continue;
        }
        const auto v = static_cast<Vertex>(depth);
        bool placed = false;
        while (next[v] < static_cast<std::int32_t>(q)) {
            const auto c = static_cast<Color>(next[v]++);
            bool clash = false;
            for (Vertex w : g.neighbors(v)) {
                if (w < v && colors[w] == c) {
                    clash = true;
                    break;
                }
            }
            if (!clash) {
                colors[v] = c;
                placed = true;
                break;
            }
        }
        if (placed) {
            ++depth;
            if (depth < static_cast<std::int64_t>(n)) next[depth] = 0;
        } else {
            next[v] = 0;
            --depth;
        }
    }
    return out;
}

}  // namespace chroma
