#pragma once

#include <divorce/dynamics.hh>
#include <divorce/instance.hh>

#include <chrono>
#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace divorce
{
    enum class VerdictKind
    {
        reachable_stable,
        not_reachable,
        inconclusive
    };

    auto to_string(VerdictKind kind) -> std::string_view;

    struct SearchVerdict
    {
        VerdictKind kind = VerdictKind::inconclusive;
        /// Present iff kind is reachable_stable; empty when m0 is already stable.
        std::optional<std::vector<BlockingPair>> witness;
        /// Distinct matchings discovered, including the root.
        std::size_t explored = 0;
        /// Largest number of discovered but unexpanded matchings at any time.
        std::size_t frontier_peak = 0;
    };

    struct Budget
    {
        std::size_t max_nodes = 1'000'000;
        /// Zero means no time limit.
        std::chrono::milliseconds max_millis{0};
    };

    /// Called for every feasible b-interchange the search performs, including ones leading
    /// back to already discovered matchings. With several workers it is called concurrently.
    using TransitionObserver = std::function<void(const Matching & from, BlockingPair pair, const Matching & to)>;

    struct SearchOptions
    {
        Budget budget;
        InterchangeRule rule = InterchangeRule::set_semantics;
        /// 1 is the sequential, deterministic reference. More workers expand each BFS level in
        /// parallel; the verdict kind and witness length stay the same, the witness may differ.
        unsigned workers = 1;
        TransitionObserver on_transition;
    };

    /// Breadth-first search over feasible b-interchanges from m0, stopping at the first stable
    /// matching discovered (so the witness is a shortest one), when the reachable set is
    /// exhausted, or when the budget runs out.
    auto reachable_search(const Instance & instance, const Matching & m0, const SearchOptions & options = {})
        -> SearchVerdict;

    struct Arc
    {
        BlockingPair pair;
        std::size_t target;
    };

    /// The divorce graph, or the part of it reachable from some roots. Nodes are numbered in
    /// discovery order; arcs out of each node follow blocking-pair order.
    class DivorceGraph
    {
    public:
        explicit DivorceGraph(Instance instance);

        auto instance() const -> const Instance & { return _instance; }
        auto size() const -> std::size_t { return _nodes.size(); }
        auto arc_count() const -> std::size_t;

        auto node(std::size_t i) const -> const Matching & { return _nodes.at(i); }
        auto key(std::size_t i) const -> const CanonicalKey & { return _keys.at(i); }
        auto arcs(std::size_t i) const -> const std::vector<Arc> & { return _arcs.at(i); }
        auto stable(std::size_t i) const -> bool { return _stable.at(i); }
        auto find(const CanonicalKey & key) const -> std::optional<std::size_t>;
        auto find(const Matching & m) const -> std::optional<std::size_t>;

        /// Adds the node if new; returns its index and whether it was inserted.
        auto add_node(const Matching & m) -> std::pair<std::size_t, bool>;
        void add_arc(std::size_t from, Arc arc);

    private:
        Instance _instance;
        std::vector<Matching> _nodes;
        std::vector<CanonicalKey> _keys;
        std::vector<std::vector<Arc>> _arcs;
        std::vector<bool> _stable;
        std::unordered_map<CanonicalKey, std::size_t> _index;
    };

    struct GraphOptions
    {
        /// Enumeration / closure guard on the number of nodes.
        std::size_t max_nodes = 1'000'000;
        InterchangeRule rule = InterchangeRule::set_semantics;
        TransitionObserver on_transition;
    };

    /// With roots: the sub-graph reachable from them (roots first, in order). Without: every
    /// matching of the instance, partial ones included. Throws GuardExceeded past max_nodes.
    auto build_divorce_graph(const Instance & instance, const std::optional<std::vector<Matching>> & roots,
        const GraphOptions & options = {}) -> DivorceGraph;

    /// Nodes without outgoing arcs, ascending.
    auto sinks(const DivorceGraph & g) -> std::vector<std::size_t>;

    struct Condensation
    {
        /// Strongly connected components, each sorted; listed in reverse topological order
        /// (every arc between components goes from a later to an earlier one).
        std::vector<std::vector<std::size_t>> components;
        std::vector<std::size_t> component_of;
        std::set<std::pair<std::size_t, std::size_t>> dag_arcs;
        /// Whether some node of the component has a path to a stable node.
        std::vector<bool> reaches_stable;
    };

    auto condensation(const DivorceGraph & g) -> Condensation;

    struct DotHighlight
    {
        bool stable = true;
        std::vector<std::size_t> roots;
        /// Node indices along a path; consecutive nodes must be joined by an arc.
        std::vector<std::size_t> path;
        /// Blocking pairs taken along the path. When given, only those arcs are highlighted
        /// (parallel arcs between the same nodes are not).
        std::vector<BlockingPair> path_pairs;
    };

    auto export_dot(const DivorceGraph & g, const DotHighlight & highlight = {}) -> std::string;

    /// Node indices visited by following the pairs from `start`; throws std::invalid_argument
    /// if some pair has no arc.
    auto trace_path(const DivorceGraph & g, std::size_t start, const std::vector<BlockingPair> & pairs)
        -> std::vector<std::size_t>;
}
