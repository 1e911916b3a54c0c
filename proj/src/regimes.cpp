#include "chroma/regimes.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numeric>
#include <string>

#include "json.hpp"

#include "chroma/error.hpp"
#include "chroma/parallel.hpp"
#include "chroma/spectral.hpp"

namespace chroma {

Certificate unique_regime_certificate(std::uint32_t q, const Rational& delta, const Rational& lambda) {
    if (q < 3) fail(ErrorCode::kOutOfRange, "certificate needs q >= 3");
    const Rational low = 1 - Rational(1, q - 1);
    const Rational high = 1 - Rational(1, q);
    if (delta < low || delta > high) {
        fail(ErrorCode::kOutOfRange, "delta " + to_string(delta) + " outside [" + to_string(low) + ", " +
                                         to_string(high) + "]");
    }
    if (lambda <= 0 || lambda >= 1) fail(ErrorCode::kOutOfRange, "lambda must lie in (0, 1)");
    const Rational gap = 1 - delta;
    const Rational rest = 1 - (q - 1) * gap;
    Certificate c;
    c.lhs = (q - 1) * gap * gap + rest * rest;
    c.rhs = 1 - low / (1 - lambda);
    c.certified = c.lhs < c.rhs;
    return c;
}

Rational bipartite_threshold(std::uint32_t q) {
    if (q < 3) fail(ErrorCode::kInvalidArgument, "bipartite threshold needs q >= 3");
    return 1 - (Rational(1, q / 2) + Rational(1, (q + 1) / 2)) / 2;
}

std::size_t permutation_rank(std::span<const Color> perm) {
    const std::size_t q = perm.size();
    std::size_t rank = 0;
    for (std::size_t i = 0; i < q; ++i) {
        std::size_t smaller = 0;
        for (std::size_t j = i + 1; j < q; ++j)
            if (perm[j] < perm[i]) ++smaller;
        rank = rank * (q - i) + smaller;
    }
    return rank;
}

SigmaProfile sigma_profile(const RegularGraph& g, const Coloring& x, const Coloring& y,
                           std::optional<double> lambda2_value) {
    const std::uint32_t q = x.q();
    if (q > kBruteForceMaxQ) fail(ErrorCode::kQTooLarge, "sigma profile enumerates q!; q <= 8 required");
    const AgreementMatrix m = agreement_matrix(x, y);
    if (x.size() != g.vertex_count() || (!x.graph_id().empty() && x.graph_id() != g.fingerprint())) {
        fail(ErrorCode::kBindingMismatch, "colorings are not bound to this graph");
    }
    const std::uint32_t n = g.vertex_count();

    // Edge statistics keyed by (X(u), Y(u), X(v), Y(v)).
    std::map<std::array<Color, 4>, std::uint64_t> buckets;
    for (const auto& e : g.edges()) ++buckets[{x[e.u], y[e.u], x[e.v], y[e.v]}];

    SigmaProfile p;
    p.lambda2 = lambda2_value.value_or(lambda2(g));
    std::vector<Color> sigma(q);
    std::iota(sigma.begin(), sigma.end(), Color{0});
    std::uint64_t best = 0;
    do {
        SigmaEntry entry;
        entry.sigma = sigma;
        for (Color b = 0; b < q; ++b) entry.size += m.at(sigma[b], b);
        for (const auto& [key, count] : buckets) {
            const bool in_u = key[0] == sigma[key[1]];
            const bool in_v = key[2] == sigma[key[3]];
            if (in_u != in_v) entry.cross_edges += count;
        }
        entry.w = static_cast<double>(entry.size) / n;
        entry.e_cross = g.edge_count() ? static_cast<double>(entry.cross_edges) / static_cast<double>(g.edge_count()) : 0.0;
        const double rhs = 2.0 * (1.0 - p.lambda2) * (entry.w - entry.w * entry.w);
        entry.inequality_holds = entry.e_cross >= rhs - 1e-9;
        p.all_hold = p.all_hold && entry.inequality_holds;
        best = std::max(best, entry.size);
        p.entries.push_back(std::move(entry));
    } while (std::next_permutation(sigma.begin(), sigma.end()));

    p.distance = distance(x, y).distance;
    p.distance_matches = p.distance == n - best;
    return p;
}

double cyclic_orbit_weight(const SigmaProfile& profile, std::size_t index) {
    const auto& base = profile.entries.at(index).sigma;
    const auto q = static_cast<Color>(base.size());
    double total = 0.0;
    std::vector<Color> shifted(base.size());
    for (Color i = 0; i < q; ++i) {
        for (std::size_t b = 0; b < base.size(); ++b) shifted[b] = static_cast<Color>((base[b] + i) % q);
        total += profile.entries.at(permutation_rank(shifted)).w;
    }
    return total;
}

UnionBound near_independent_union_bound(const RegularGraph& g, std::span<const Vertex> a,
                                        std::span<const Vertex> b, double gamma, double xi,
                                        std::optional<double> lambda2_value) {
    if (!(gamma > 0.0)) fail(ErrorCode::kPreconditionFail, "gamma must be positive");
    VertexSubsetMeasures ab;
    try {
        ab = subset_measures(g, a, b);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::kOverlap) fail(ErrorCode::kPreconditionFail, std::string("A and B not disjoint: ") + e.what());
        throw;
    }
    const double wa = static_cast<double>(a.size()) / g.vertex_count();
    const double wb = static_cast<double>(b.size()) / g.vertex_count();
    if (wa < gamma) fail(ErrorCode::kPreconditionFail, "w(A) < gamma");
    if (wb < gamma) fail(ErrorCode::kPreconditionFail, "w(B) < gamma");
    if (ab.e_cross > xi) fail(ErrorCode::kPreconditionFail, "e(A,B) > xi");

    std::vector<Vertex> both(a.begin(), a.end());
    both.insert(both.end(), b.begin(), b.end());
    const VertexSubsetMeasures joint = subset_measures(g, both);
    const double l2 = lambda2_value.value_or(lambda2(g));
    UnionBound r;
    r.bound = 3.0 * std::max(l2, xi) / gamma;
    r.actual = joint.e_within;
    r.ok = r.actual <= r.bound + 1e-12;
    return r;
}

NearIndependentPartition near_independent_partition(const RegularGraph& g, const CodeSet& code, double gamma,
                                                    std::size_t class_cap) {
    if (!(gamma > 0.0 && gamma <= 1.0)) fail(ErrorCode::kInvalidArgument, "gamma must lie in (0, 1]");
    if (code.members.empty()) fail(ErrorCode::kInvalidArgument, "code set has no members");
    const std::uint32_t q = code.members.front().q();
    const std::size_t k = code.members.size();
    for (const auto& m : code.members) {
        if (m.q() != q || m.size() != g.vertex_count() || (!m.graph_id().empty() && m.graph_id() != g.fingerprint())) {
            fail(ErrorCode::kBindingMismatch, "code members are not bound to this graph");
        }
    }
    std::size_t space = 1;
    for (std::size_t i = 0; i < k; ++i) {
        if (space > class_cap / q) {
            fail(ErrorCode::kTooManyClasses, "q^K exceeds the class cap of " + std::to_string(class_cap));
        }
        space *= q;
    }

    const std::uint32_t n = g.vertex_count();
    std::map<std::vector<Color>, std::vector<Vertex>> classes;
    std::vector<std::vector<Color>> alpha_of(n, std::vector<Color>(k));
    for (Vertex v = 0; v < n; ++v) {
        for (std::size_t i = 0; i < k; ++i) alpha_of[v][i] = code.members[i][v];
        classes[alpha_of[v]].push_back(v);
    }
    auto agree_somewhere = [k](const std::vector<Color>& s, const std::vector<Color>& t) {
        for (std::size_t i = 0; i < k; ++i)
            if (s[i] == t[i]) return true;
        return false;
    };

    NearIndependentPartition out;
    out.class_space = space;
    out.lambda2 = lambda2(g);
    out.bound_log10 = out.lambda2 > 0.0
                          ? static_cast<double>(space) * std::log10(3.0 / gamma) + std::log10(out.lambda2)
                          : -std::numeric_limits<double>::infinity();

    std::vector<std::size_t> heavy_of(n, std::numeric_limits<std::size_t>::max());
    for (auto& [alpha, verts] : classes) {
        const double w = static_cast<double>(verts.size()) / n;
        if (w < gamma) {
            out.light_weight += w;
            continue;
        }
        ColorClass c;
        c.alpha = alpha;
        c.vertices = verts;
        c.w = w;
        for (Vertex v : verts) heavy_of[v] = out.heavy.size();
        out.heavy.push_back(std::move(c));
    }

    // Components of the "agree on some coordinate" graph over heavy classes.
    const std::size_t h = out.heavy.size();
    std::vector<std::size_t> parent(h);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (std::size_t i = 0; i < h; ++i)
        for (std::size_t j = i + 1; j < h; ++j)
            if (agree_somewhere(out.heavy[i].alpha, out.heavy[j].alpha)) parent[find(i)] = find(j);

    std::map<std::size_t, std::size_t> component_of_root;
    std::vector<std::size_t> component_of(h);
    for (std::size_t i = 0; i < h; ++i) {
        auto [it, inserted] = component_of_root.try_emplace(find(i), out.components.size());
        if (inserted) out.components.emplace_back();
        component_of[i] = it->second;
        out.components[it->second].classes.push_back(i);
        out.components[it->second].w += out.heavy[i].w;
    }

    std::vector<std::size_t> class_edges(h, 0);
    for (const auto& e : g.edges()) {
        if (agree_somewhere(alpha_of[e.u], alpha_of[e.v])) out.agreeing_pairs_edge_free = false;
        const std::size_t cu = heavy_of[e.u];
        const std::size_t cv = heavy_of[e.v];
        if (cu == std::numeric_limits<std::size_t>::max() || cv == std::numeric_limits<std::size_t>::max()) continue;
        if (cu == cv) ++class_edges[cu];
        if (component_of[cu] == component_of[cv]) ++out.components[component_of[cu]].edges_within;
    }
    const double m = g.edge_count() ? static_cast<double>(g.edge_count()) : 1.0;
    for (std::size_t i = 0; i < h; ++i) out.heavy[i].e_within = static_cast<double>(class_edges[i]) / m;
    for (auto& c : out.components) c.e_within = static_cast<double>(c.edges_within) / m;

    for (std::size_t i = 0; i < h; ++i)
        for (std::size_t j = i + 1; j < h; ++j)
            if (component_of[i] != component_of[j] && agree_somewhere(out.heavy[i].alpha, out.heavy[j].alpha)) {
                out.cross_components_disagree = false;
            }
    return out;
}

IndependentSizeCheck independent_size_bound(const RegularGraph& g, std::span<const Vertex> a) {
    if (g.degree() == 0) fail(ErrorCode::kInvalidArgument, "independent size bound needs d >= 1");
    const VertexSubsetMeasures m = subset_measures(g, a);
    IndependentSizeCheck r;
    r.w = m.w;
    r.e = m.e_within;
    r.bound = (1.0 + r.e) / 2.0;
    // 2|A| |E| <= n (|E| + |E(A)|), in integers.
    const std::uint64_t lhs = 2ull * m.size * g.edge_count();
    const std::uint64_t rhs = static_cast<std::uint64_t>(g.vertex_count()) * (g.edge_count() + m.edges_within);
    r.ok = lhs <= rhs;
    return r;
}

double hoffman_bound(const RegularGraph& g) {
    if (g.degree() == 0) fail(ErrorCode::kInvalidArgument, "Hoffman bound needs d >= 1");
    if (!g.is_connected()) fail(ErrorCode::kInvalidArgument, "Hoffman bound needs a connected graph");
    return 1.0 - 1.0 / lambda_min(g);
}

std::string regime_class_name(RegimeClass c) {
    switch (c) {
        case RegimeClass::kCertifiedUnique: return "certified-unique";
        case RegimeClass::kCounterexampleExists: return "counterexample-exists";
        case RegimeClass::kUnknown: return "unknown";
    }
    return "unknown";
}

namespace {

void validate_config(const SweepConfig& c) {
    if (c.q < 3) fail(ErrorCode::kInvalidArgument, "regime map needs q >= 3");
    const Rational high = 1 - Rational(1, c.q);
    for (const auto& d : c.deltas)
        if (d <= 0 || d > high) fail(ErrorCode::kInvalidArgument, "delta " + to_string(d) + " outside (0, 1-1/q]");
    for (const auto& l : c.lambdas)
        if (l <= 0 || l > 1) fail(ErrorCode::kInvalidArgument, "lambda " + to_string(l) + " outside (0, 1]");
    if (c.seeds.empty()) fail(ErrorCode::kInvalidArgument, "no seeds");
    for (const auto& f : c.families) {
        if (f.kind != "layered-bipartite" && f.kind != "biased-bipartite" && f.kind != "gadget" &&
            f.kind != "tensor-lift") {
            fail(ErrorCode::kInvalidArgument, "unknown family kind '" + f.kind + "'");
        }
        if (f.sizes.empty()) fail(ErrorCode::kInvalidArgument, "family '" + f.kind + "' has no sizes");
    }
}

struct Instance {
    std::uint32_t n = 0;
    double lambda2 = 1.0;
    std::vector<Coloring> pool;
    std::vector<std::uint64_t> dist;  // pool.size()^2
};

Instance build_instance(const SweepConfig& c, const SweepFamily& f, std::uint32_t size, std::uint64_t seed) {
    std::optional<RegularGraph> g;
    std::vector<Coloring> pool;
    if (f.kind == "layered-bipartite") {
        g = random_regular_bipartite((c.q - 1) * size, f.degree, seed);
        auto [x, y] = layered_bipartite_pair(*g, c.q);
        pool = {std::move(x), std::move(y)};
    } else if (f.kind == "biased-bipartite") {
        g = random_regular_bipartite(size, f.degree, seed);
        const double d = f.degree;
        const double tau = f.tau.value_or(1.0 / (8.0 * d * d));
        for (std::size_t i = 0; i < c.budget; ++i) pool.push_back(sample_bipartite_biased(*g, c.q, tau, derive_seed(seed, i)));
    } else if (f.kind == "gadget") {
        g = gadget_expand(random_regular_bipartite(size, 3, seed));
        for (std::size_t i = 0; i < c.budget; ++i) pool.push_back(sample_gadget_coloring(*g, c.q, derive_seed(seed, i)));
    } else {
        g = tensor_power(c.q, f.power);
        pool = coordinate_colorings(*g);
        for (std::uint32_t k = 0; k < size; ++k) {
            const auto found = search_low_lambda_signing(*g, f.restarts, derive_seed(seed, k));
            RegularGraph lifted = two_lift(*g, found.signing);
            for (auto& x : pool) x = lift_coloring(x, lifted);
            g = std::move(lifted);
        }
    }
    Instance inst;
    inst.n = g->vertex_count();
    inst.lambda2 = lambda2(*g);
    std::erase_if(pool, [&](const Coloring& x) { return !is_proper(*g, x).proper; });
    const std::size_t k = pool.size();
    inst.dist.assign(k * k, 0);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) inst.dist[i * k + j] = inst.dist[j * k + i] = distance(pool[i], pool[j]).distance;
    inst.pool = std::move(pool);
    return inst;
}

// Greedy filter of the pool at the given threshold; returns (size, min pairwise distance).
std::pair<std::size_t, std::uint64_t> greedy_code(const Instance& inst, std::uint64_t threshold) {
    const std::size_t k = inst.pool.size();
    std::vector<std::size_t> chosen;
    std::uint64_t min_dist = std::numeric_limits<std::uint64_t>::max();
    for (std::size_t i = 0; i < k; ++i) {
        bool ok = true;
        std::uint64_t local = min_dist;
        for (std::size_t j : chosen) {
            const std::uint64_t d = inst.dist[i * k + j];
            if (d < threshold) {
                ok = false;
                break;
            }
            local = std::min(local, d);
        }
        if (!ok) continue;
        chosen.push_back(i);
        min_dist = local;
    }
    return {chosen.size(), min_dist};
}

}  // namespace

SweepConfig default_sweep_config(std::uint32_t q) {
    SweepConfig c;
    c.q = q;
    c.deltas = {bipartite_threshold(q), 1 - Rational(1, q - 1), 1 - Rational(1, q)};
    std::sort(c.deltas.begin(), c.deltas.end());
    c.deltas.erase(std::unique(c.deltas.begin(), c.deltas.end()), c.deltas.end());
    c.lambdas = {Rational(1, 5), Rational(1, 4), Rational(1, 2), Rational(9, 10)};
    c.families.push_back({"layered-bipartite", {4}, 3, std::nullopt, 2, 20});
    c.families.push_back({"gadget", {8}, 3, std::nullopt, 2, 20});
    c.families.push_back({"biased-bipartite", {32}, 3, std::nullopt, 2, 20});
    c.seeds = {1, 2};
    c.budget = 32;
    return c;
}

SweepConfig sweep_config_from_json(std::string_view json_text) {
    using nlohmann::json;
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        fail(ErrorCode::kParse, std::string("bad sweep config: ") + e.what());
    }
    try {
        const std::uint32_t q = j.at("q").get<std::uint32_t>();
        SweepConfig c = default_sweep_config(std::max<std::uint32_t>(q, 3));
        c.q = q;
        auto rationals = [](const json& arr) {
            std::vector<Rational> out;
            for (const auto& v : arr) out.push_back(v.is_string() ? parse_rational(v.get<std::string>()) : exact_rational(v.get<double>()));
            return out;
        };
        if (j.contains("deltas")) c.deltas = rationals(j["deltas"]);
        if (j.contains("lambdas")) c.lambdas = rationals(j["lambdas"]);
        if (j.contains("families")) {
            c.families.clear();
            for (const auto& f : j["families"]) {
                SweepFamily fam;
                fam.kind = f.at("kind").get<std::string>();
                fam.sizes = f.at("sizes").get<std::vector<std::uint32_t>>();
                fam.degree = f.value("degree", 3u);
                if (f.contains("tau")) fam.tau = f["tau"].get<double>();
                fam.power = f.value("power", 2u);
                fam.restarts = f.value("restarts", 20u);
                c.families.push_back(std::move(fam));
            }
        }
        if (j.contains("seeds")) c.seeds = j["seeds"].get<std::vector<std::uint64_t>>();
        c.budget = j.value("budget", c.budget);
        if (j.contains("threads")) c.threads = j["threads"].get<unsigned>();
        validate_config(c);
        return c;
    } catch (const json::exception& e) {
        fail(ErrorCode::kParse, std::string("bad sweep config: ") + e.what());
    }
}

std::vector<RegimeRow> regime_map_sweep(const SweepConfig& config, const std::function<void(const RegimeRow&)>& on_row,
                                        const std::set<GridKey>& skip) {
    validate_config(config);
    const Rational cert_low = 1 - Rational(1, config.q - 1);
    const Rational cert_high = 1 - Rational(1, config.q);

    // Instances are only needed if some point falls outside the certificate range.
    bool need_instances = false;
    for (const auto& d : config.deltas)
        for (const auto& l : config.lambdas) {
            if (skip.contains({to_string(d), to_string(l)})) continue;
            if (d < cert_low || d > cert_high || l >= 1 || !unique_regime_certificate(config.q, d, l).certified) need_instances = true;
        }

    struct Job {
        const SweepFamily* family;
        std::uint32_t size;
        std::uint64_t seed;
    };
    std::vector<Job> jobs;
    if (need_instances)
        for (const auto& f : config.families)
            for (std::uint32_t s : f.sizes)
                for (std::uint64_t seed : config.seeds) jobs.push_back({&f, s, seed});
    std::vector<Instance> instances(jobs.size());
    parallel_for(jobs.size(), config.threads, [&](std::size_t i) {
        instances[i] = build_instance(config, *jobs[i].family, jobs[i].size, jobs[i].seed);
    });

    std::vector<RegimeRow> rows;
    for (const auto& d : config.deltas) {
        for (const auto& l : config.lambdas) {
            if (skip.contains({to_string(d), to_string(l)})) continue;
            RegimeRow row;
            row.q = config.q;
            row.delta = d;
            row.lambda = l;
            if (d >= cert_low && d <= cert_high && l < 1 && unique_regime_certificate(config.q, d, l).certified) {
                row.classification = RegimeClass::kCertifiedUnique;
                row.evidence_kind = "certificate";
            } else {
                const double cap = to_double(l);
                std::size_t best_size = 1;
                for (std::size_t i = 0; i < instances.size(); ++i) {
                    const Instance& inst = instances[i];
                    if (inst.lambda2 > cap + 1e-12) continue;
                    const auto [size, min_dist] = greedy_code(inst, ceil_times(d, inst.n));
                    if (size < 2 || size <= best_size) continue;
                    best_size = size;
                    row.classification = RegimeClass::kCounterexampleExists;
                    row.evidence_kind = jobs[i].family->kind;
                    row.n = inst.n;
                    row.lambda2_measured = inst.lambda2;
                    row.code_size = size;
                    row.min_dist = min_dist;
                }
            }
            if (on_row) on_row(row);
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::string regime_csv_header() { return "q,delta,lambda,classification,evidence_kind,n,lambda2_measured,code_size,min_dist"; }

std::string to_csv(const RegimeRow& row) {
    std::string out = std::to_string(row.q) + "," + to_string(row.delta) + "," + to_string(row.lambda) + "," +
                      regime_class_name(row.classification) + "," + row.evidence_kind + ",";
    if (row.n) out += std::to_string(*row.n);
    out += ",";
    if (row.lambda2_measured) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6f", *row.lambda2_measured);
        out += buf;
    }
    out += ",";
    if (row.code_size) out += std::to_string(*row.code_size);
    out += ",";
    if (row.min_dist) out += std::to_string(*row.min_dist);
    return out;
}

}  // namespace chroma
