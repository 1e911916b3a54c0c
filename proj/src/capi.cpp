#include "chroma/chroma.h"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <new>
#include <sstream>
#include <string>

#include "chroma/codes.hpp"
#include "chroma/colorings.hpp"
#include "chroma/error.hpp"
#include "chroma/graphs.hpp"
#include "chroma/io.hpp"
#include "chroma/parallel.hpp"
#include "chroma/regimes.hpp"
#include "chroma/spectral.hpp"
#include "json.hpp"

struct chroma_graph {
    chroma::RegularGraph g;
};
struct chroma_coloring {
    chroma::Coloring c;
};
struct chroma_codeset {
    chroma::CodeSet s;
};

namespace {

using nlohmann::json;

thread_local std::string last_error;

chroma_status set_error(chroma_status status, const char* what) {
    last_error = what;
    return status;
}

template <typename F>
chroma_status guarded(F&& body) {
    last_error.clear();
    try {
        body();
        return CHROMA_OK;
    } catch (const chroma::Error& e) {
        return set_error(static_cast<chroma_status>(e.code()), e.what());
    } catch (const std::bad_alloc&) {
        return set_error(CHROMA_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return set_error(CHROMA_INTERNAL, e.what());
    }
}

void require(const void* p, const char* name) {
    if (!p) chroma::fail(chroma::ErrorCode::kInvalidArgument, std::string(name) + " is NULL");
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

chroma_graph* wrap(chroma::RegularGraph g) { return new chroma_graph{std::move(g)}; }

chroma::Rational rational_arg(const char* s, const char* name) {
    require(s, name);
    return chroma::parse_rational(s);
}

double default_tau(const chroma::RegularGraph& g, double tau) {
    if (tau >= 0.0) return tau;
    const double d = g.degree();
    return 1.0 / (8.0 * d * d);
}

json number_or_null(const std::optional<std::uint64_t>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

extern "C" {

const char* chroma_last_error(void) { return last_error.c_str(); }

const char* chroma_status_name(chroma_status status) {
    if (status == CHROMA_INTERNAL) return "Internal";
    static thread_local std::string name;
    name = chroma::error_code_name(static_cast<chroma::ErrorCode>(status));
    return name.c_str();
}

void chroma_string_free(char* s) { std::free(s); }

chroma_status chroma_graph_complete(uint32_t q, chroma_graph** out) {
    return guarded([&] {
        require(out, "out");
        *out = wrap(chroma::complete_graph(q));
    });
}

chroma_status chroma_graph_cycle(uint32_t n, chroma_graph** out) {
    return guarded([&] {
        require(out, "out");
        *out = wrap(chroma::cycle_graph(n));
    });
}

chroma_status chroma_graph_tensor(uint32_t q, uint32_t power, uint64_t vertex_cap, chroma_graph** out) {
    return guarded([&] {
        require(out, "out");
        *out = wrap(chroma::tensor_power(q, power, vertex_cap ? vertex_cap : 4096));
    });
}

chroma_status chroma_graph_gadget(const chroma_graph* base, chroma_graph** out) {
    return guarded([&] {
        require(base, "base");
        require(out, "out");
        *out = wrap(chroma::gadget_expand(base->g));
    });
}

chroma_status chroma_graph_random_bipartite(uint32_t half, uint32_t d, uint64_t seed, chroma_graph** out) {
    return guarded([&] {
        require(out, "out");
        *out = wrap(chroma::random_regular_bipartite(half, d, seed));
    });
}

chroma_status chroma_graph_from_edges(uint32_t n, const uint32_t* edges, size_t m, const uint8_t* parts,
                                      chroma_graph** out) {
    return guarded([&] {
        require(out, "out");
        if (m) require(edges, "edges");
        std::vector<chroma::Edge> list(m);
        for (size_t i = 0; i < m; ++i) {
            const auto a = edges[2 * i], b = edges[2 * i + 1];
            list[i] = {std::min(a, b), std::max(a, b)};
            if (a == b) list[i] = {a, a};
        }
        std::optional<std::vector<std::uint8_t>> labels;
        if (parts) labels.emplace(parts, parts + n);
        *out = wrap(chroma::RegularGraph::from_edges(n, list, std::move(labels)));
    });
}

chroma_status chroma_graph_two_lift(const chroma_graph* g, const int8_t* signs, size_t count, chroma_graph** out) {
    return guarded([&] {
        require(g, "g");
        require(out, "out");
        if (count) require(signs, "signs");
        chroma::Signing s{std::vector<std::int8_t>(signs, signs + count)};
        *out = wrap(chroma::two_lift(g->g, s));
    });
}

chroma_status chroma_graph_search_signing(const chroma_graph* g, uint32_t restarts, uint64_t seed, unsigned threads,
                                          int8_t* signs_out, double* lift_lambda2) {
    return guarded([&] {
        require(g, "g");
        require(signs_out, "signs_out");
        const auto found = chroma::search_low_lambda_signing(g->g, restarts, seed, threads);
        std::copy(found.signing.signs.begin(), found.signing.signs.end(), signs_out);
        if (lift_lambda2) *lift_lambda2 = found.lambda2;
    });
}

chroma_status chroma_graph_load(const char* path, chroma_graph** out) {
    return guarded([&] {
        require(path, "path");
        require(out, "out");
        *out = wrap(chroma::load_graph(path));
    });
}

chroma_status chroma_graph_save(const chroma_graph* g, const char* path, const char* provenance_json) {
    return guarded([&] {
        require(g, "g");
        require(path, "path");
        chroma::save_graph(path, g->g, provenance_json ? provenance_json : "");
    });
}

chroma_status chroma_graph_to_text(const chroma_graph* g, char** out) {
    return guarded([&] {
        require(g, "g");
        require(out, "out");
        *out = dup_string(chroma::graph_to_text(g->g));
    });
}

chroma_status chroma_graph_fingerprint(const chroma_graph* g, char** out) {
    return guarded([&] {
        require(g, "g");
        require(out, "out");
        *out = dup_string(g->g.fingerprint());
    });
}

void chroma_graph_free(chroma_graph* g) { delete g; }
uint32_t chroma_graph_vertex_count(const chroma_graph* g) { return g ? g->g.vertex_count() : 0; }
uint32_t chroma_graph_degree(const chroma_graph* g) { return g ? g->g.degree() : 0; }
size_t chroma_graph_edge_count(const chroma_graph* g) { return g ? g->g.edge_count() : 0; }

chroma_status chroma_graph_edges(const chroma_graph* g, uint32_t* out) {
    return guarded([&] {
        require(g, "g");
        require(out, "out");
        for (const auto& e : g->g.edges()) {
            *out++ = e.u;
            *out++ = e.v;
        }
    });
}

chroma_status chroma_spectrum_json(const chroma_graph* g, uint32_t dense_cap, char** out) {
    return guarded([&] {
        require(g, "g");
        require(out, "out");
        if (g->g.degree() == 0) chroma::fail(chroma::ErrorCode::kZeroDegree, "spectrum needs d >= 1");
        const std::uint32_t cap = dense_cap ? dense_cap : 4096;
        json j;
        chroma::SpectralOptions opts;
        opts.dense_cap = cap;
        if (g->g.vertex_count() <= cap) {
            const chroma::Spectrum s = chroma::full_spectrum(g->g, cap);
            j["eigenvalues"] = s.eigenvalues;
            j["residual"] = s.residual;
            j["method"] = "dense";
        } else {
            j["eigenvalues"] = json::array();
            j["residual"] = nullptr;
            j["method"] = "deflated-iteration";
        }
        j["lambda2"] = chroma::lambda2(g->g, opts);
        j["lambda_min"] = chroma::lambda_min(g->g, opts);
        *out = dup_string(j.dump() + "\n");
    });
}

chroma_status chroma_lambda2(const chroma_graph* g, double* out) {
    return guarded([&] {
        require(g, "g");
        require(out, "out");
        *out = chroma::lambda2(g->g);
    });
}

chroma_status chroma_lambda_min(const chroma_graph* g, double* out) {
    return guarded([&] {
        require(g, "g");
        require(out, "out");
        *out = chroma::lambda_min(g->g);
    });
}

chroma_status chroma_coloring_create(const chroma_graph* g, uint32_t q, const uint16_t* colors, size_t n,
                                     chroma_coloring** out) {
    return guarded([&] {
        require(g, "g");
        require(out, "out");
        if (n) require(colors, "colors");
        if (n != g->g.vertex_count()) chroma::fail(chroma::ErrorCode::kBindingMismatch, "coloring length differs from |V|");
        *out = new chroma_coloring{chroma::Coloring::bind(g->g, q, std::vector<chroma::Color>(colors, colors + n))};
    });
}

chroma_status chroma_coloring_load(const char* path, const chroma_graph* g, chroma_coloring** out) {
    return guarded([&] {
        require(path, "path");
        require(out, "out");
        *out = new chroma_coloring{chroma::load_coloring(path, g ? &g->g : nullptr)};
    });
}

chroma_status chroma_coloring_to_json(const chroma_coloring* c, const char* graph_ref, char** out) {
    return guarded([&] {
        require(c, "c");
        require(out, "out");
        *out = dup_string(chroma::coloring_to_json(c->c, graph_ref ? graph_ref : ""));
    });
}

void chroma_coloring_free(chroma_coloring* c) { delete c; }
uint32_t chroma_coloring_q(const chroma_coloring* c) { return c ? c->c.q() : 0; }
size_t chroma_coloring_size(const chroma_coloring* c) { return c ? c->c.size() : 0; }

chroma_status chroma_coloring_colors(const chroma_coloring* c, uint16_t* out) {
    return guarded([&] {
        require(c, "c");
        require(out, "out");
        std::copy(c->c.colors().begin(), c->c.colors().end(), out);
    });
}

chroma_status chroma_is_proper(const chroma_graph* g, const chroma_coloring* c, int* proper, uint32_t* u, uint32_t* v) {
    return guarded([&] {
        require(g, "g");
        require(c, "c");
        require(proper, "proper");
        const auto check = chroma::is_proper(g->g, c->c);
        *proper = check.proper ? 1 : 0;
        if (check.violation) {
            if (u) *u = check.violation->u;
            if (v) *v = check.violation->v;
        }
    });
}

chroma_status chroma_distance(const chroma_coloring* x, const chroma_coloring* y, uint64_t* distance,
                              uint16_t* sigma_out) {
    return guarded([&] {
        require(x, "x");
        require(y, "y");
        require(distance, "distance");
        const auto d = chroma::distance(x->c, y->c);
        *distance = d.distance;
        if (sigma_out) std::copy(d.sigma.begin(), d.sigma.end(), sigma_out);
    });
}

chroma_status chroma_sample(const chroma_graph* g, const char* sampler, uint32_t q, double tau, uint64_t seed,
                            chroma_coloring** out) {
    return guarded([&] {
        require(g, "g");
        require(sampler, "sampler");
        require(out, "out");
        const std::string kind = sampler;
        if (kind == "gadget") {
            *out = new chroma_coloring{chroma::sample_gadget_coloring(g->g, q, seed)};
        } else if (kind == "biased") {
            *out = new chroma_coloring{chroma::sample_bipartite_biased(g->g, q, default_tau(g->g, tau), seed)};
        } else {
            chroma::fail(chroma::ErrorCode::kInvalidArgument, "unknown sampler '" + kind + "'");
        }
    });
}

chroma_status chroma_layered_pair(const chroma_graph* g, uint32_t q, chroma_codeset** out) {
    return guarded([&] {
        require(g, "g");
        require(out, "out");
        auto [x, y] = chroma::layered_bipartite_pair(g->g, q);
        chroma::CodeSet s;
        s.members = {std::move(x), std::move(y)};
        s.provenance = R"({"construction":"layered-bipartite"})";
        *out = new chroma_codeset{std::move(s)};
    });
}

chroma_status chroma_coordinate_colorings(const chroma_graph* g, chroma_codeset** out) {
    return guarded([&] {
        require(g, "g");
        require(out, "out");
        chroma::CodeSet s;
        s.members = chroma::coordinate_colorings(g->g);
        s.provenance = R"({"construction":"coordinate"})";
        *out = new chroma_codeset{std::move(s)};
    });
}

chroma_status chroma_codeset_create(const chroma_coloring* const* members, size_t count, const char* delta,
                                    chroma_codeset** out) {
    return guarded([&] {
        require(out, "out");
        if (count) require(members, "members");
        chroma::CodeSet s;
        s.delta = rational_arg(delta, "delta");
        for (size_t i = 0; i < count; ++i) {
            require(members[i], "member");
            s.members.push_back(members[i]->c);
        }
        *out = new chroma_codeset{std::move(s)};
    });
}

chroma_status chroma_codeset_load(const char* path, const chroma_graph* g, chroma_codeset** out) {
    return guarded([&] {
        require(path, "path");
        require(out, "out");
        *out = new chroma_codeset{chroma::codeset_from_json(chroma::read_file(path), g ? &g->g : nullptr)};
    });
}

chroma_status chroma_codeset_to_json(const chroma_codeset* c, char** out) {
    return guarded([&] {
        require(c, "c");
        require(out, "out");
        *out = dup_string(chroma::codeset_to_json(c->s));
    });
}

void chroma_codeset_free(chroma_codeset* c) { delete c; }
size_t chroma_codeset_size(const chroma_codeset* c) { return c ? c->s.size() : 0; }

chroma_status chroma_codeset_member(const chroma_codeset* c, size_t i, chroma_coloring** out) {
    return guarded([&] {
        require(c, "c");
        require(out, "out");
        if (i >= c->s.size()) chroma::fail(chroma::ErrorCode::kInvalidArgument, "member index out of range");
        *out = new chroma_coloring{c->s.members[i]};
    });
}

chroma_status chroma_verify_delta(const chroma_codeset* c, unsigned threads, int* ok, uint64_t* min_dist,
                                  size_t* worst_i, size_t* worst_j) {
    return guarded([&] {
        require(c, "c");
        require(ok, "ok");
        const auto check = chroma::verify_delta_distinct(c->s, threads);
        *ok = check.ok ? 1 : 0;
        if (min_dist) *min_dist = check.min_dist.value_or(0);
        if (check.worst_pair) {
            if (worst_i) *worst_i = check.worst_pair->first;
            if (worst_j) *worst_j = check.worst_pair->second;
        }
    });
}

chroma_status chroma_set_delta(chroma_codeset* c, const char* delta) {
    return guarded([&] {
        require(c, "c");
        c->s.delta = rational_arg(delta, "delta");
    });
}

chroma_status chroma_pack(const chroma_graph* g, const char* sampler, uint32_t q, double tau, const char* delta,
                          size_t target, size_t budget, uint64_t seed, chroma_codeset** out, int* budget_exhausted) {
    return guarded([&] {
        require(g, "g");
        require(sampler, "sampler");
        require(out, "out");
        chroma::SamplerConfig config;
        config.q = q;
        const std::string kind = sampler;
        if (kind == "gadget") {
            config.kind = chroma::SamplerKind::kGadget;
        } else if (kind == "biased") {
            config.kind = chroma::SamplerKind::kBipartiteBiased;
            config.tau = default_tau(g->g, tau);
        } else if (kind == "enumerate") {
            config.kind = chroma::SamplerKind::kStream;
            config.stream = chroma::enumerate_proper(g->g, q);
        } else {
            chroma::fail(chroma::ErrorCode::kInvalidArgument, "unknown sampler '" + kind + "'");
        }
        const chroma::Rational d = rational_arg(delta, "delta");
        auto result = chroma::greedy_pack(g->g, config, d, target, budget, seed);
        if (budget_exhausted) *budget_exhausted = result.budget_exhausted ? 1 : 0;
        *out = new chroma_codeset{std::move(result.code)};
    });
}

chroma_status chroma_exact_f_json(const chroma_graph* g, uint32_t q, const char* delta, char** out) {
    return guarded([&] {
        require(g, "g");
        require(out, "out");
        const chroma::Rational d = rational_arg(delta, "delta");
        const auto r = chroma::exact_max_packing(g->g, q, d);
        json j;
        j["q"] = q;
        j["delta"] = chroma::to_string(d);
        j["n"] = g->g.vertex_count();
        j["size"] = r.size;
        j["proper_colorings"] = r.proper_colorings;
        j["threshold"] = chroma::distance_threshold(d, g->g.vertex_count());
        json witness = json::array();
        for (const auto& m : r.witness.members) witness.push_back(std::vector<chroma::Color>(m.colors().begin(), m.colors().end()));
        j["witness"] = std::move(witness);
        *out = dup_string(j.dump() + "\n");
    });
}

chroma_status chroma_empirical_f_json(const char* config_json, char** out) {
    return guarded([&] {
        require(config_json, "config_json");
        require(out, "out");
        json in;
        try {
            in = json::parse(config_json);
        } catch (const json::exception& e) {
            chroma::fail(chroma::ErrorCode::kParse, e.what());
        }
        chroma::FamilyConfig c;
        try {
            c.constructor = chroma::parse_family(in.at("constructor").get<std::string>());
            c.q = in.value("q", 3u);
            c.delta = chroma::parse_rational(in.at("delta").get<std::string>());
            c.lambda_cap = in.value("lambda_cap", 1.0);
            c.sizes = in.at("sizes").get<std::vector<std::uint32_t>>();
            if (in.contains("seeds")) c.seeds = in["seeds"].get<std::vector<std::uint64_t>>();
            c.budget = in.value("budget", c.budget);
            c.target = in.value("target", c.target);
            c.degree = in.value("degree", c.degree);
            if (in.contains("tau")) c.tau = in["tau"].get<double>();
            c.tensor_power = in.value("tensor_power", c.tensor_power);
            c.signing_restarts = in.value("signing_restarts", c.signing_restarts);
            c.threads = in.value("threads", c.threads);
        } catch (const json::exception& e) {
            chroma::fail(chroma::ErrorCode::kParse, std::string("bad family config: ") + e.what());
        }
        json rows = json::array();
        for (const auto& r : chroma::empirical_f(c)) {
            rows.push_back({{"size", r.size_param}, {"seed", r.seed}, {"n", r.n}, {"lambda2", r.lambda2},
                            {"accepted", r.accepted}, {"code_size", r.code_size}, {"min_dist", number_or_null(r.min_dist)}});
        }
        *out = dup_string(json{{"constructor", chroma::family_name(c.constructor)}, {"rows", rows}}.dump() + "\n");
    });
}

chroma_status chroma_certify_json(uint32_t q, const char* delta, const char* lambda, char** out) {
    return guarded([&] {
        require(out, "out");
        const chroma::Rational d = rational_arg(delta, "delta");
        const chroma::Rational l = rational_arg(lambda, "lambda");
        const auto c = chroma::unique_regime_certificate(q, d, l);
        json j;
        j["q"] = q;
        j["delta"] = chroma::to_string(d);
        j["lambda"] = chroma::to_string(l);
        j["certified"] = c.certified;
        j["lhs"] = chroma::to_string(c.lhs);
        j["rhs"] = chroma::to_string(c.rhs);
        j["lhs_approx"] = chroma::to_double(c.lhs);
        j["rhs_approx"] = chroma::to_double(c.rhs);
        *out = dup_string(j.dump() + "\n");
    });
}

chroma_status chroma_regime_csv_header(char** out) {
    return guarded([&] {
        require(out, "out");
        *out = dup_string(chroma::regime_csv_header());
    });
}

chroma_status chroma_regime_map(const char* config_json, uint32_t q, unsigned threads, const char* existing_csv,
                                chroma_row_callback on_row, void* user) {
    return guarded([&] {
        chroma::SweepConfig config =
            config_json ? chroma::sweep_config_from_json(config_json) : chroma::default_sweep_config(q);
        if (threads) config.threads = threads;
        std::set<chroma::GridKey> skip;
        if (existing_csv) {
            std::istringstream in(existing_csv);
            std::string line;
            while (std::getline(in, line)) {
                if (line.empty() || line.rfind("q,", 0) == 0) continue;
                std::vector<std::string> fields;
                std::istringstream row(line);
                std::string f;
                while (std::getline(row, f, ',')) fields.push_back(f);
                if (fields.size() < 4) continue;  // truncated trailing row
                try {
                    skip.insert({chroma::to_string(chroma::parse_rational(fields[1])),
                                 chroma::to_string(chroma::parse_rational(fields[2]))});
                } catch (const chroma::Error&) {
                }
            }
        }
        chroma::regime_map_sweep(
            config,
            [&](const chroma::RegimeRow& row) {
                if (on_row) on_row(chroma::to_csv(row).c_str(), user);
            },
            skip);
    });
}

}  // extern "C"
