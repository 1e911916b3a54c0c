// Command-line front end. Talks to the library only through chroma.h.
#include <chroma/chroma.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct ApiError : std::runtime_error {
    ApiError(chroma_status s, const std::string& what) : std::runtime_error(what), status(s) {}
    chroma_status status;
};

void check(chroma_status s) {
    if (s != CHROMA_OK) throw ApiError(s, std::string(chroma_status_name(s)) + ": " + chroma_last_error());
}

struct GraphDeleter {
    void operator()(chroma_graph* g) const { chroma_graph_free(g); }
};
struct ColoringDeleter {
    void operator()(chroma_coloring* c) const { chroma_coloring_free(c); }
};
struct CodesetDeleter {
    void operator()(chroma_codeset* c) const { chroma_codeset_free(c); }
};
struct StringDeleter {
    void operator()(char* s) const { chroma_string_free(s); }
};
using Graph = std::unique_ptr<chroma_graph, GraphDeleter>;
using ColoringPtr = std::unique_ptr<chroma_coloring, ColoringDeleter>;
using Codeset = std::unique_ptr<chroma_codeset, CodesetDeleter>;

std::string take(char* s) {
    std::unique_ptr<char, StringDeleter> owned(s);
    return s ? std::string(s) : std::string();
}

Graph load_graph(const std::string& path) {
    chroma_graph* g = nullptr;
    check(chroma_graph_load(path.c_str(), &g));
    return Graph(g);
}

ColoringPtr load_coloring(const std::string& path, const chroma_graph* g) {
    chroma_coloring* c = nullptr;
    check(chroma_coloring_load(path.c_str(), g, &c));
    return ColoringPtr(c);
}

struct Globals {
    std::uint64_t seed = 1;
    unsigned threads = 1;
    std::string out;
    std::string format;  // regime-map: csv (default) or json lines
};

void emit(const Globals& g, const std::string& payload) {
    if (g.out.empty()) {
        std::cout << payload;
        std::cout.flush();
        return;
    }
    std::ofstream f(g.out, std::ios::binary | std::ios::trunc);
    if (!f) throw ApiError(CHROMA_IO, "cannot write " + g.out);
    f << payload;
}

std::vector<std::uint16_t> colors_of(const chroma_coloring* c) {
    std::vector<std::uint16_t> out(chroma_coloring_size(c));
    check(chroma_coloring_colors(c, out.data()));
    return out;
}

// ---- construct

struct ConstructArgs {
    std::string kind;
    std::uint32_t q = 3;
    std::uint32_t n = 5;
    std::uint32_t power = 2;
    std::string base = "k4";
    std::uint32_t half = 100;
    std::uint32_t d = 3;
    std::string graph;
    std::string signing = "search";
    std::uint32_t restarts = 20;
    bool with_spectrum = false;
};

int cmd_construct(const Globals& glob, const ConstructArgs& a) {
    chroma_graph* raw = nullptr;
    json prov = {{"kind", a.kind}};
    if (a.kind == "complete") {
        check(chroma_graph_complete(a.q, &raw));
        prov["q"] = a.q;
    } else if (a.kind == "cycle") {
        check(chroma_graph_cycle(a.n, &raw));
        prov["n"] = a.n;
    } else if (a.kind == "tensor") {
        check(chroma_graph_tensor(a.q, a.power, 0, &raw));
        prov["q"] = a.q;
        prov["N"] = a.power;
    } else if (a.kind == "gadget") {
        Graph base;
        if (a.base == "k4") {
            chroma_graph* b = nullptr;
            check(chroma_graph_complete(4, &b));
            base.reset(b);
        } else {
            base = load_graph(a.base);
        }
        check(chroma_graph_gadget(base.get(), &raw));
        prov["base"] = a.base;
    } else if (a.kind == "random-bipartite") {
        check(chroma_graph_random_bipartite(a.half, a.d, glob.seed, &raw));
        prov["half"] = a.half;
        prov["d"] = a.d;
        prov["seed"] = glob.seed;
    } else if (a.kind == "two-lift") {
        if (a.graph.empty()) throw ApiError(CHROMA_INVALID_ARGUMENT, "two-lift needs --graph");
        Graph parent = load_graph(a.graph);
        std::vector<std::int8_t> signs(chroma_graph_edge_count(parent.get()), 1);
        if (a.signing == "search") {
            double l2 = 0.0;
            check(chroma_graph_search_signing(parent.get(), a.restarts, glob.seed, glob.threads, signs.data(), &l2));
            prov["seed"] = glob.seed;
            prov["restarts"] = a.restarts;
        } else if (a.signing == "minus") {
            std::fill(signs.begin(), signs.end(), std::int8_t{-1});
        } else if (a.signing != "plus") {
            throw ApiError(CHROMA_INVALID_ARGUMENT, "--signing must be search, plus or minus");
        }
        check(chroma_graph_two_lift(parent.get(), signs.data(), signs.size(), &raw));
        prov["parent"] = a.graph;
        prov["signing"] = signs;
    } else {
        throw ApiError(CHROMA_INVALID_ARGUMENT, "unknown construct kind '" + a.kind + "'");
    }
    Graph g(raw);
    if (a.with_spectrum) {
        double l2 = 0.0;
        check(chroma_lambda2(g.get(), &l2));
        prov["lambda2"] = l2;
    }
    if (glob.out.empty()) {
        std::cout << take([&] {
            char* s = nullptr;
            check(chroma_graph_to_text(g.get(), &s));
            return s;
        }());
        return kExitOk;
    }
    check(chroma_graph_save(g.get(), glob.out.c_str(), prov.dump().c_str()));
    return kExitOk;
}

// ---- spectrum / distance

int cmd_spectrum(const Globals& glob, const std::string& graph, std::uint32_t dense_cap) {
    Graph g = load_graph(graph);
    char* s = nullptr;
    check(chroma_spectrum_json(g.get(), dense_cap, &s));
    emit(glob, take(s));
    return kExitOk;
}

int cmd_distance(const Globals& glob, const std::string& graph, const std::string& x, const std::string& y) {
    Graph g;
    if (!graph.empty()) g = load_graph(graph);
    ColoringPtr cx = load_coloring(x, g.get());
    ColoringPtr cy = load_coloring(y, g.get());
    std::uint64_t dist = 0;
    std::vector<std::uint16_t> sigma(chroma_coloring_q(cx.get()));
    check(chroma_distance(cx.get(), cy.get(), &dist, sigma.data()));
    emit(glob, json{{"distance", dist}, {"sigma", sigma}}.dump() + "\n");
    return kExitOk;
}

// ---- pack / exact-f / certify

struct PackArgs {
    std::string graph;
    std::uint32_t q = 3;
    std::string delta;
    std::string sampler = "gadget";
    std::size_t budget = 1000;
    std::size_t target = 1000000;
    double tau = -1.0;
};

int cmd_pack(const Globals& glob, const PackArgs& a) {
    Graph g = load_graph(a.graph);
    chroma_codeset* raw = nullptr;
    int exhausted = 0;
    check(chroma_pack(g.get(), a.sampler.c_str(), a.q, a.tau, a.delta.c_str(), a.target, a.budget, glob.seed, &raw,
                      &exhausted));
    Codeset code(raw);
    char* s = nullptr;
    check(chroma_codeset_to_json(code.get(), &s));
    emit(glob, take(s));
    std::cerr << "kept " << chroma_codeset_size(code.get()) << " colorings"
              << (exhausted ? " (budget exhausted before target)" : "") << "\n";
    return kExitOk;
}

int cmd_exact_f(const Globals& glob, const std::string& graph, std::uint32_t q, const std::string& delta) {
    Graph g = load_graph(graph);
    char* s = nullptr;
    check(chroma_exact_f_json(g.get(), q, delta.c_str(), &s));
    emit(glob, take(s));
    return kExitOk;
}

int cmd_certify(const Globals& glob, std::uint32_t q, const std::string& delta, const std::string& lambda) {
    char* s = nullptr;
    check(chroma_certify_json(q, delta.c_str(), lambda.c_str(), &s));
    emit(glob, take(s));
    return kExitOk;
}

// ---- regime-map

std::string read_text(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ApiError(CHROMA_IO, "cannot read " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

int cmd_regime_map(const Globals& glob, const std::string& config, std::uint32_t q, bool resume) {
    const std::string header = take([] {
        char* s = nullptr;
        check(chroma_regime_csv_header(&s));
        return s;
    }());
    std::optional<std::string> config_text;
    if (!config.empty()) config_text = read_text(config);

    // Keep only complete rows of an earlier run; a torn final line is redone.
    std::string existing;
    if (resume && !glob.out.empty() && std::ifstream(glob.out).good()) {
        const std::string old = read_text(glob.out);
        std::istringstream in(old);
        std::string line;
        const auto columns = std::count(header.begin(), header.end(), ',');
        while (std::getline(in, line)) {
            if (in.eof() && old.back() != '\n') break;
            if (line == header || std::count(line.begin(), line.end(), ',') != columns) continue;
            existing += line + "\n";
        }
    }

    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!glob.out.empty()) {
        file.open(glob.out, std::ios::binary | std::ios::trunc);
        if (!file) throw ApiError(CHROMA_IO, "cannot write " + glob.out);
        out = &file;
    }
    const bool as_json = glob.format == "json";
    if (!as_json) *out << header << "\n" << existing;
    out->flush();

    struct Sink {
        std::ostream* out;
        bool as_json;
        std::vector<std::string> names;
    } sink{out, as_json, {}};
    {
        std::istringstream h(header);
        std::string f;
        while (std::getline(h, f, ',')) sink.names.push_back(f);
    }
    auto on_row = [](const char* row, void* user) {
        auto* s = static_cast<Sink*>(user);
        if (!s->as_json) {
            *s->out << row << "\n";
        } else {
            json j;
            std::istringstream r(row);
            std::string f;
            for (std::size_t i = 0; std::getline(r, f, ',') && i < s->names.size(); ++i) j[s->names[i]] = f;
            *s->out << j.dump() << "\n";
        }
        s->out->flush();
    };
    check(chroma_regime_map(config_text ? config_text->c_str() : nullptr, q, glob.threads,
                            existing.empty() ? nullptr : existing.c_str(), on_row, &sink));
    return kExitOk;
}

// ---- verify

int cmd_verify(const Globals& glob, const std::string& graph, const std::vector<std::string>& colorings,
               const std::string& codeset, const std::string& delta) {
    Graph g = load_graph(graph);
    std::vector<ColoringPtr> members;
    for (const auto& path : colorings) members.push_back(load_coloring(path, g.get()));
    if (!codeset.empty()) {
        chroma_codeset* raw = nullptr;
        check(chroma_codeset_load(codeset.c_str(), g.get(), &raw));
        Codeset set(raw);
        for (std::size_t i = 0; i < chroma_codeset_size(set.get()); ++i) {
            chroma_coloring* c = nullptr;
            check(chroma_codeset_member(set.get(), i, &c));
            members.emplace_back(c);
        }
    }
    if (members.empty()) throw ApiError(CHROMA_INVALID_ARGUMENT, "verify needs at least one coloring");

    bool all_ok = true;
    json report;
    json proper = json::array();
    for (std::size_t i = 0; i < members.size(); ++i) {
        int ok = 0;
        std::uint32_t u = 0, v = 0;
        check(chroma_is_proper(g.get(), members[i].get(), &ok, &u, &v));
        json entry = {{"index", i}, {"proper", ok == 1}};
        if (!ok) {
            entry["violation"] = {u, v};
            all_ok = false;
            std::cerr << "coloring " << i << " is improper at edge (" << u << ", " << v << ")\n";
        }
        proper.push_back(std::move(entry));
    }
    report["proper"] = std::move(proper);

    json pairs = json::array();
    for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = i + 1; j < members.size(); ++j) {
            std::uint64_t d = 0;
            check(chroma_distance(members[i].get(), members[j].get(), &d, nullptr));
            pairs.push_back({{"i", i}, {"j", j}, {"distance", d}});
        }
    report["distances"] = std::move(pairs);

    if (!delta.empty()) {
        std::vector<const chroma_coloring*> view;
        for (const auto& m : members) view.push_back(m.get());
        chroma_codeset* raw = nullptr;
        check(chroma_codeset_create(view.data(), view.size(), delta.c_str(), &raw));
        Codeset set(raw);
        int ok = 0;
        std::uint64_t min_dist = 0;
        std::size_t wi = 0, wj = 0;
        check(chroma_verify_delta(set.get(), glob.threads, &ok, &min_dist, &wi, &wj));
        json dj = {{"delta", delta}, {"ok", ok == 1}};
        if (members.size() > 1) {
            dj["min_dist"] = min_dist;
            dj["worst_pair"] = {wi, wj};
        }
        report["delta_distinct"] = std::move(dj);
        if (!ok) {
            all_ok = false;
            std::cerr << "pair (" << wi << ", " << wj << ") is closer than the delta threshold\n";
        }
    }
    report["ok"] = all_ok;
    emit(glob, report.dump(2) + "\n");
    return all_ok ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"chroma: distinct colorings of expander graphs"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals glob;
    app.add_option("--seed", glob.seed, "Base random seed");
    app.add_option("--threads", glob.threads, "Worker threads (speed only)")->envname("CHROMA_THREADS");
    app.add_option("--out", glob.out, "Output path (stdout when omitted)");
    app.add_option("--format", glob.format, "Output format")->check(CLI::IsMember({"json", "csv"}));

    ConstructArgs ca;
    auto* construct = app.add_subcommand("construct", "Build a graph file and its JSON sidecar");
    construct->add_option("kind", ca.kind, "complete|cycle|tensor|gadget|random-bipartite|two-lift")
        ->required()
        ->check(CLI::IsMember({"complete", "cycle", "tensor", "gadget", "random-bipartite", "two-lift"}));
    construct->add_option("--q", ca.q, "Number of colors / clique size");
    construct->add_option("--n", ca.n, "Cycle length");
    construct->add_option("--N", ca.power, "Tensor power");
    construct->add_option("--base", ca.base, "Gadget base: k4 or a graph file");
    construct->add_option("--half", ca.half, "Part size");
    construct->add_option("--d", ca.d, "Degree");
    construct->add_option("--graph", ca.graph, "Parent graph for two-lift");
    construct->add_option("--signing", ca.signing, "search|plus|minus");
    construct->add_option("--restarts", ca.restarts, "Signing search restarts");
    construct->add_flag("--with-spectrum", ca.with_spectrum, "Record lambda2 in the sidecar");

    std::string graph_path;
    std::uint32_t dense_cap = 4096;
    auto* spectrum = app.add_subcommand("spectrum", "Normalized adjacency spectrum as JSON");
    spectrum->add_option("--graph", graph_path)->required();
    spectrum->add_option("--dense-cap", dense_cap);

    std::string x_path, y_path;
    auto* dist = app.add_subcommand("distance", "Relabeling-invariant distance of two colorings");
    dist->add_option("x", x_path)->required();
    dist->add_option("y", y_path)->required();
    dist->add_option("--graph", graph_path);

    PackArgs pa;
    auto* pack = app.add_subcommand("pack", "Greedy delta-distinct packing");
    pack->add_option("--graph", pa.graph)->required();
    pack->add_option("--q", pa.q);
    pack->add_option("--delta", pa.delta, "Rational p/r")->required();
    pack->add_option("--sampler", pa.sampler)->check(CLI::IsMember({"gadget", "biased", "enumerate"}));
    pack->add_option("--budget", pa.budget);
    pack->add_option("--target", pa.target);
    pack->add_option("--tau", pa.tau, "Biased sampler tau (default 1/(8d^2))");

    std::uint32_t q = 3;
    std::string delta, lambda;
    auto* exact = app.add_subcommand("exact-f", "Exact maximum delta-distinct set on a tiny graph");
    exact->add_option("--graph", graph_path)->required();
    exact->add_option("--q", q);
    exact->add_option("--delta", delta)->required();

    auto* certify = app.add_subcommand("certify", "Unique-regime certificate at one point");
    certify->add_option("--q", q);
    certify->add_option("--delta", delta)->required();
    certify->add_option("--lambda", lambda)->required();

    std::string config;
    bool resume = false;
    auto* regime = app.add_subcommand("regime-map", "Sweep a (delta, lambda) grid to CSV");
    regime->add_option("--config", config, "JSON sweep config (default grid when omitted)");
    regime->add_option("--q", q, "q for the default grid");
    regime->add_flag("--resume", resume, "Skip grid points already in --out");

    std::vector<std::string> coloring_paths;
    std::string codeset_path;
    auto* verify = app.add_subcommand("verify", "Check properness and pairwise distances");
    verify->add_option("--graph", graph_path)->required();
    verify->add_option("--coloring", coloring_paths);
    verify->add_option("colorings", coloring_paths);
    verify->add_option("--codeset", codeset_path);
    verify->add_option("--delta", delta);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*construct) return cmd_construct(glob, ca);
        if (*spectrum) return cmd_spectrum(glob, graph_path, dense_cap);
        if (*dist) return cmd_distance(glob, graph_path, x_path, y_path);
        if (*pack) return cmd_pack(glob, pa);
        if (*exact) return cmd_exact_f(glob, graph_path, q, delta);
        if (*certify) return cmd_certify(glob, q, delta, lambda);
        if (*regime) return cmd_regime_map(glob, config, q, resume);
        if (*verify) return cmd_verify(glob, graph_path, coloring_paths, codeset_path, delta);
    } catch (const ApiError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
