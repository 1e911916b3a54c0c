#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "chroma/codes.hpp"
#include "chroma/colorings.hpp"
#include "chroma/graphs.hpp"

namespace chroma {

// Text format: "n d", optional "parts: ..." line, then "u v" per edge.
std::string graph_to_text(const RegularGraph& g);
RegularGraph graph_from_text(std::string_view text, GraphMeta meta = {});

// Sidecar JSON: fingerprint, construction meta, and a free-form provenance
// object (must be a JSON object or empty).
std::string graph_sidecar_json(const RegularGraph& g, std::string_view provenance_json = {});
GraphMeta meta_from_sidecar(std::string_view json_text);

void save_graph(const std::filesystem::path& path, const RegularGraph& g, std::string_view provenance_json = {});
// Reads <path>.json too when present.
RegularGraph load_graph(const std::filesystem::path& path);

std::string coloring_to_json(const Coloring& x, std::string_view graph_ref = {});
// graph_ref in the file is a fingerprint or a path (relative to base_dir).
// When `g` is given the coloring is bound to it and must match.
Coloring coloring_from_json(std::string_view json_text, const RegularGraph* g = nullptr,
                            const std::filesystem::path& base_dir = {});
Coloring load_coloring(const std::filesystem::path& path, const RegularGraph* g = nullptr);

std::string codeset_to_json(const CodeSet& code);
CodeSet codeset_from_json(std::string_view json_text, const RegularGraph* g = nullptr);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace chroma
