#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace divorce
{
    /// An Independent Set instance: a simple graph on vertices 0..n-1 (named v_1..v_n) and a
    /// target size k.
    struct SourceGraph
    {
        std::size_t n = 0;
        /// Edge e_{j+1} is edges[j]; endpoints are stored smaller index first.
        std::vector<std::pair<std::size_t, std::size_t>> edges;
        std::size_t k = 0;

        /// Throws ValidationError on self-loops, duplicate or out-of-range edges, or k > n.
        void validate() const;

        auto adjacent(std::size_t a, std::size_t b) const -> bool;
    };

    /// Lines `n <int>`, `k <int>` and `edge <i> <j>` (1-based vertex numbers); '#' comments.
    /// The result is validated.
    auto parse_source_graph(std::string_view text) -> SourceGraph;
    auto serialize_source_graph(const SourceGraph & g) -> std::string;

    /// Vertices are 0-based indices; duplicates make the set not independent.
    auto is_independent(const SourceGraph & g, std::span<const std::size_t> vertices) -> bool;

    /// "v_3" for index 2.
    auto vertex_name(std::size_t v) -> std::string;

    /// Accepts "v3", "v_3" or "3" (1-based); throws ValidationError otherwise.
    auto parse_vertex(std::string_view token, std::size_t n) -> std::size_t;
}
