#pragma once

#include <divorce/instance.hh>
#include <divorce/source_graph.hh>

#include <json.hpp>

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace divorce
{
    /// Agents of one edge gadget. `v` is the endpoint whose edge agent starts with x_j, and
    /// `v_prime` the one that starts with c_j; `v` is always the smaller vertex index.
    struct EdgeGadget
    {
        std::size_t v, v_prime;
        AgentIndex e, f, x, c;            // left
        AgentIndex y, d, e_v, e_v_prime;  // right
    };

    /// Where every gadget family ended up in the reduced instance.
    struct ReductionMeta
    {
        std::vector<AgentIndex> vertex, a;  // left, indexed by vertex
        std::vector<AgentIndex> b;          // right, indexed by vertex
        std::vector<AgentIndex> s;          // right, k of them
        std::vector<AgentIndex> t;          // right, n - k of them
        std::vector<EdgeGadget> edges;

        /// E(v_i): right agents e^{v_i}_j over the edges j incident to v_i, in edge order.
        auto edge_agents_of(std::size_t vertex) const -> std::vector<AgentIndex>;
    };

    struct ReductionArtifact
    {
        SourceGraph graph;
        Instance instance;
        Matching m0;
        ReductionMeta meta;
    };

    /// Builds the stable-marriage instance and initial matching for (G, k). Each side has
    /// 4m + 2n agents. Throws ValidationError if the graph is invalid.
    auto reduce(const SourceGraph & g) -> ReductionArtifact;

    /// Vertex/edge to agent-name maps plus per-edge orientation.
    auto meta_to_json(const ReductionArtifact & art) -> nlohmann::json;

    struct StageBoundary
    {
        enum class Kind
        {
            after_s_stage,   // every v in V' married an s
            after_t_stage,   // every v outside V' married a t
            after_edge       // gadget of `edge` resolved
        };

        Kind kind;
        /// Number of certificate steps performed at this point.
        std::size_t prefix;
        std::optional<std::size_t> edge;
    };

    struct Certificate
    {
        std::vector<AgentPair> steps;
        std::vector<StageBoundary> boundaries;
    };

    /// The staged b-interchange sequence from m0 to a stable matching that encodes `vset`.
    /// Throws ValidationError unless vset is an independent set of exactly k vertices.
    auto build_certificate(const ReductionArtifact & art, std::vector<std::size_t> vset) -> Certificate;

    /// Agents that must not occur in any blocking pair at the boundary: S after the s-stage,
    /// S and T after the t-stage, and the whole edge gadget after an edge.
    auto boundary_agents(const ReductionArtifact & art, const StageBoundary & boundary) -> std::vector<AgentId>;

    /// {v_i | m(v_i) in S}, ascending. Throws ValidationError if m is not stable.
    auto extract_independent_set(const ReductionArtifact & art, const Matching & m) -> std::vector<std::size_t>;

    struct PropertyCheck
    {
        bool holds = true;
        /// Display names of agents witnessing a violation.
        std::vector<std::string> counterexamples;
    };

    /// The six structural properties every stable matching reachable from m0 has:
    ///   1. m(a_i) in B             4. m(t_i) in V
    ///   2. m(x_j) = y_j            5. m(s_i) in V
    ///   3. m(c_j) = d_j            6. m(v_i) in S  =>  for each edge {v_i, v_l}:
    ///                                 m(e_j) = e^{v_i}_j and m(v_l) in T
    /// Evaluated literally on any matching; nothing about reachability is assumed.
    struct Claim1Report
    {
        std::array<PropertyCheck, 6> properties;

        auto all() const -> bool;
    };

    auto check_claim1(const ReductionArtifact & art, const Matching & m) -> Claim1Report;
}
