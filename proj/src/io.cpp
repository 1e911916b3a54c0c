#include "chroma/io.hpp"

#include <fstream>
#include <sstream>

#include "chroma/error.hpp"
#include "json.hpp"

namespace chroma {

using nlohmann::json;

namespace {

json parse_json(std::string_view text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        fail(ErrorCode::kParse, std::string("bad ") + what + " JSON: " + e.what());
    }
}

bool looks_like_fingerprint(const std::string& s) {
    return s.size() == 16 && s.find_first_not_of("0123456789abcdef") == std::string::npos;
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::kIo, "cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::kIo, "cannot write " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) fail(ErrorCode::kIo, "short write to " + path.string());
}

std::string graph_to_text(const RegularGraph& g) {
    std::string out = std::to_string(g.vertex_count()) + " " + std::to_string(g.degree()) + "\n";
    if (const auto& parts = g.part_labels()) {
        out += "parts:";
        for (auto p : *parts) out += p ? " 1" : " 0";
        out += "\n";
    }
    for (const auto& e : g.edges()) out += std::to_string(e.u) + " " + std::to_string(e.v) + "\n";
    return out;
}

RegularGraph graph_from_text(std::string_view text, GraphMeta meta) {
    std::istringstream in{std::string(text)};
    std::string line;
    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
            if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
        }
        return false;
    };
    if (!next_line()) fail(ErrorCode::kParse, "empty graph file");
    long long n = -1, d = -1;
    {
        std::istringstream head(line);
        std::string extra;
        if (!(head >> n >> d) || (head >> extra) || n < 0 || d < 0 || n > 0xffffffffLL) {
            fail(ErrorCode::kParse, "graph header must be 'n d'");
        }
    }
    std::optional<std::vector<std::uint8_t>> parts;
    std::vector<Edge> edges;
    bool first = true;
    while (next_line()) {
        if (first && line.rfind("parts:", 0) == 0) {
            std::vector<std::uint8_t> labels;
            for (char c : line.substr(6)) {
                if (c == '0' || c == '1') labels.push_back(static_cast<std::uint8_t>(c - '0'));
                else if (c != ' ' && c != '\t' && c != '\r') fail(ErrorCode::kParse, "bad parts line");
            }
            parts = std::move(labels);
            first = false;
            continue;
        }
        first = false;
        std::istringstream row(line);
        long long u = -1, v = -1;
        std::string extra;
        if (!(row >> u >> v) || (row >> extra) || u < 0 || v < 0 || u >= n || v >= n) {
            fail(ErrorCode::kParse, "bad edge line '" + line + "'");
        }
        if (u >= v) fail(ErrorCode::kParse, "edge lines need u < v: '" + line + "'");
        edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
    }
    RegularGraph g = RegularGraph::from_edges(static_cast<std::uint32_t>(n), edges, std::move(parts), std::move(meta));
    if (g.degree() != static_cast<std::uint32_t>(d)) {
        fail(ErrorCode::kNonRegular, "header degree " + std::to_string(d) + " but edges give " + std::to_string(g.degree()));
    }
    return g;
}

std::string graph_sidecar_json(const RegularGraph& g, std::string_view provenance_json) {
    json j;
    j["fingerprint"] = g.fingerprint();
    j["n"] = g.vertex_count();
    j["d"] = g.degree();
    const GraphMeta& m = g.meta();
    j["construction"] = m.construction;
    if (m.tensor) j["tensor"] = {{"q", m.tensor->q}, {"power", m.tensor->power}};
    if (m.gadget) {
        json blocks = json::array();
        for (const auto& b : m.gadget->blocks) {
            blocks.push_back({{"x", b.x}, {"y", b.y}, {"x_side", b.x_side}, {"y_side", b.y_side}});
        }
        j["gadget"] = {{"base_vertices", m.gadget->base_vertices}, {"blocks", blocks}};
    }
    if (m.lift) {
        j["lift"] = {{"parent_fingerprint", m.lift->parent_fingerprint}, {"parent_vertices", m.lift->parent_vertices}};
    }
    if (!provenance_json.empty()) {
        json p = parse_json(provenance_json, "provenance");
        if (!p.is_object()) fail(ErrorCode::kInvalidArgument, "provenance must be a JSON object");
        j["provenance"] = std::move(p);
    }
    return j.dump(2) + "\n";
}

GraphMeta meta_from_sidecar(std::string_view json_text) {
    const json j = parse_json(json_text, "sidecar");
    GraphMeta m;
    try {
        m.construction = j.value("construction", std::string("edges"));
        if (j.contains("tensor")) m.tensor = TensorInfo{j["tensor"].at("q").get<std::uint32_t>(), j["tensor"].at("power").get<std::uint32_t>()};
        if (j.contains("gadget")) {
            GadgetInfo info;
            info.base_vertices = j["gadget"].at("base_vertices").get<std::uint32_t>();
            for (const auto& b : j["gadget"].at("blocks")) {
                GadgetBlock block;
                block.x = b.at("x").get<Vertex>();
                block.y = b.at("y").get<Vertex>();
                block.x_side = b.at("x_side").get<std::array<Vertex, 3>>();
                block.y_side = b.at("y_side").get<std::array<Vertex, 3>>();
                info.blocks.push_back(block);
            }
            m.gadget = std::move(info);
        }
        if (j.contains("lift")) {
            m.lift = LiftInfo{j["lift"].at("parent_fingerprint").get<std::string>(),
                              j["lift"].at("parent_vertices").get<std::uint32_t>()};
        }
    } catch (const json::exception& e) {
        fail(ErrorCode::kParse, std::string("bad sidecar: ") + e.what());
    }
    return m;
}

void save_graph(const std::filesystem::path& path, const RegularGraph& g, std::string_view provenance_json) {
    write_file(path, graph_to_text(g));
    write_file(std::filesystem::path(path.string() + ".json"), graph_sidecar_json(g, provenance_json));
}

RegularGraph load_graph(const std::filesystem::path& path) {
    const std::string text = read_file(path);
    const std::filesystem::path sidecar(path.string() + ".json");
    GraphMeta meta;
    std::optional<std::string> expected;
    if (std::filesystem::exists(sidecar)) {
        const std::string side = read_file(sidecar);
        meta = meta_from_sidecar(side);
        const json j = parse_json(side, "sidecar");
        if (j.contains("fingerprint")) expected = j["fingerprint"].get<std::string>();
    }
    RegularGraph g = graph_from_text(text, std::move(meta));
    if (expected && *expected != g.fingerprint()) {
        fail(ErrorCode::kBindingMismatch, "sidecar fingerprint does not match " + path.string());
    }
    return g;
}

std::string coloring_to_json(const Coloring& x, std::string_view graph_ref) {
    json j;
    j["q"] = x.q();
    j["colors"] = std::vector<Color>(x.colors().begin(), x.colors().end());
    j["graph"] = graph_ref.empty() ? x.graph_id() : std::string(graph_ref);
    return j.dump() + "\n";
}

Coloring coloring_from_json(std::string_view json_text, const RegularGraph* g, const std::filesystem::path& base_dir) {
    const json j = parse_json(json_text, "coloring");
    std::uint32_t q = 0;
    std::vector<Color> colors;
    std::string ref;
    try {
        q = j.at("q").get<std::uint32_t>();
        colors = j.at("colors").get<std::vector<Color>>();
        ref = j.value("graph", std::string());
    } catch (const json::exception& e) {
        fail(ErrorCode::kParse, std::string("bad coloring: ") + e.what());
    }
    std::string fingerprint;
    if (!ref.empty()) {
        if (looks_like_fingerprint(ref)) {
            fingerprint = ref;
        } else {
            std::filesystem::path p(ref);
            if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
            fingerprint = (g && !std::filesystem::exists(p)) ? g->fingerprint() : load_graph(p).fingerprint();
        }
    }
    if (g) {
        if (!fingerprint.empty() && fingerprint != g->fingerprint()) {
            fail(ErrorCode::kBindingMismatch, "coloring refers to a different graph");
        }
        if (colors.size() != g->vertex_count()) {
            fail(ErrorCode::kBindingMismatch, "coloring has " + std::to_string(colors.size()) + " entries, graph has " +
                                                  std::to_string(g->vertex_count()) + " vertices");
        }
        return Coloring::bind(*g, q, std::move(colors));
    }
    return Coloring(q, std::move(colors), fingerprint);
}

Coloring load_coloring(const std::filesystem::path& path, const RegularGraph* g) {
    return coloring_from_json(read_file(path), g, path.parent_path());
}

std::string codeset_to_json(const CodeSet& code) {
    json j;
    j["graph"] = code.members.empty() ? std::string() : code.members.front().graph_id();
    j["q"] = code.members.empty() ? 0u : code.members.front().q();
    j["delta"] = to_string(code.delta);
    json members = json::array();
    for (const auto& m : code.members) members.push_back(std::vector<Color>(m.colors().begin(), m.colors().end()));
    j["members"] = std::move(members);
    j["min_dist"] = code.min_dist ? json(*code.min_dist) : json(nullptr);
    j["verified"] = code.verified;
    if (code.provenance.empty()) {
        j["provenance"] = json::object();
    } else {
        try {
            j["provenance"] = json::parse(code.provenance);
        } catch (const json::exception&) {
            j["provenance"] = code.provenance;
        }
    }
    return j.dump(2) + "\n";
}

CodeSet codeset_from_json(std::string_view json_text, const RegularGraph* g) {
    const json j = parse_json(json_text, "code set");
    CodeSet c;
    try {
        const std::uint32_t q = j.at("q").get<std::uint32_t>();
        const std::string graph = j.value("graph", std::string());
        if (g && !graph.empty() && graph != g->fingerprint()) {
            fail(ErrorCode::kBindingMismatch, "code set refers to a different graph");
        }
        c.delta = parse_rational(j.at("delta").is_string() ? j["delta"].get<std::string>() : j["delta"].dump());
        for (const auto& m : j.at("members")) {
            auto colors = m.get<std::vector<Color>>();
            if (g) {
                if (colors.size() != g->vertex_count()) fail(ErrorCode::kBindingMismatch, "member size does not match graph");
                c.members.push_back(Coloring::bind(*g, q, std::move(colors)));
            } else {
                c.members.emplace_back(q, std::move(colors), graph);
            }
        }
        if (j.contains("min_dist") && !j["min_dist"].is_null()) c.min_dist = j["min_dist"].get<std::uint64_t>();
        c.verified = j.value("verified", false);
        if (j.contains("provenance")) c.provenance = j["provenance"].dump();
    } catch (const json::exception& e) {
        fail(ErrorCode::kParse, std::string("bad code set: ") + e.what());
    }
    return c;
}

}  // namespace chroma
