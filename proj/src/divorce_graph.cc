#include <divorce/explorer.hh>

#include <algorithm>
#include <sstream>
#include <stdexcept>

using std::optional;
using std::size_t;
using std::string;
using std::vector;

namespace divorce
{
    DivorceGraph::DivorceGraph(Instance instance) :
        _instance(std::move(instance))
    {
    }

    auto DivorceGraph::arc_count() const -> size_t
    {
        size_t n = 0;
        for (const auto & a : _arcs)
            n += a.size();
        return n;
    }

    auto DivorceGraph::find(const CanonicalKey & key) const -> optional<size_t>
    {
        auto it = _index.find(key);
        if (it == _index.end())
            return std::nullopt;
        return it->second;
    }

    auto DivorceGraph::find(const Matching & m) const -> optional<size_t>
    {
        return find(canonical_key(_instance, m));
    }

    auto DivorceGraph::add_node(const Matching & m) -> std::pair<size_t, bool>
    {
        auto key = canonical_key(_instance, m);
        auto [it, inserted] = _index.emplace(key, _nodes.size());
        if (inserted) {
            _nodes.push_back(m);
            _keys.push_back(std::move(key));
            _arcs.emplace_back();
            _stable.push_back(is_stable(_instance, m));
        }
        return {it->second, inserted};
    }

    void DivorceGraph::add_arc(size_t from, Arc arc)
    {
        _arcs.at(from).push_back(arc);
    }

    namespace
    {
        // Every set of disjoint acceptable pairs: each left agent in turn stays single or takes a
        // free acceptable right agent (in preference-list order).
        void enumerate(const Instance & instance, vector<AgentIndex> & partners, vector<bool> & taken, AgentIndex u,
            size_t limit, vector<Matching> & out)
        {
            if (u == partners.size()) {
                if (out.size() >= limit)
                    throw GuardExceeded("instance has more than " + std::to_string(limit) + " matchings");
                out.push_back(Matching::from_partners(instance, partners));
                return;
            }
            partners[u] = unmatched;
            enumerate(instance, partners, taken, u + 1, limit, out);
            for (const auto & tier : instance.preferences({Side::left, u}))
                for (auto w : tier) {
                    if (taken[w])
                        continue;
                    taken[w] = true;
                    partners[u] = w;
                    enumerate(instance, partners, taken, u + 1, limit, out);
                    taken[w] = false;
                }
            partners[u] = unmatched;
        }

        void expand(DivorceGraph & g, size_t i, const GraphOptions & options)
        {
            auto current = g.node(i);
            for (auto pair : blocking_pairs(g.instance(), current)) {
                auto result = apply_b_interchange(g.instance(), current, pair, options.rule);
                auto successor = std::get_if<Matching>(&result);
                if (! successor)
                    continue;
                if (options.on_transition)
                    options.on_transition(current, pair, *successor);
                auto target = g.find(*successor);
                if (! target) {
                    if (g.size() >= options.max_nodes)
                        throw GuardExceeded("divorce graph exceeds " + std::to_string(options.max_nodes) + " nodes");
                    target = g.add_node(*successor).first;
                }
                g.add_arc(i, {pair, *target});
            }
        }
    }

    auto build_divorce_graph(const Instance & instance, const optional<vector<Matching>> & roots,
        const GraphOptions & options) -> DivorceGraph
    {
        DivorceGraph g(instance);
        if (roots) {
            for (const auto & r : *roots) {
                if (g.size() >= options.max_nodes && ! g.find(r))
                    throw GuardExceeded("divorce graph exceeds " + std::to_string(options.max_nodes) + " nodes");
                g.add_node(r);
            }
            for (size_t i = 0; i < g.size(); ++i)
                expand(g, i, options);
        }
        else {
            vector<AgentIndex> partners(instance.size(Side::left), unmatched);
            vector<bool> taken(instance.size(Side::right));
            vector<Matching> all;
            enumerate(instance, partners, taken, 0, options.max_nodes, all);
            for (const auto & m : all)
                g.add_node(m);
            for (size_t i = 0; i < g.size(); ++i)
                expand(g, i, options);
        }
        return g;
    }

    auto sinks(const DivorceGraph & g) -> vector<size_t>
    {
        vector<size_t> result;
        for (size_t i = 0; i < g.size(); ++i)
            if (g.arcs(i).empty())
                result.push_back(i);
        return result;
    }

    auto condensation(const DivorceGraph & g) -> Condensation
    {
        // Tarjan, iterative. Components come out in reverse topological order.
        constexpr size_t unvisited = static_cast<size_t>(-1);
        auto n = g.size();
        vector<size_t> index(n, unvisited), low(n, 0);
        vector<bool> on_stack(n, false);
        vector<size_t> stack;
        size_t counter = 0;

        Condensation result;
        result.component_of.assign(n, 0);

        struct Frame
        {
            size_t node, next_arc;
        };

        for (size_t root = 0; root < n; ++root) {
            if (index[root] != unvisited)
                continue;
            vector<Frame> call{{root, 0}};
            index[root] = low[root] = counter++;
            stack.push_back(root);
            on_stack[root] = true;

            while (! call.empty()) {
                auto & frame = call.back();
                const auto & arcs = g.arcs(frame.node);
                if (frame.next_arc < arcs.size()) {
                    auto t = arcs[frame.next_arc++].target;
                    if (index[t] == unvisited) {
                        index[t] = low[t] = counter++;
                        stack.push_back(t);
                        on_stack[t] = true;
                        call.push_back({t, 0});
                    }
                    else if (on_stack[t])
                        low[frame.node] = std::min(low[frame.node], index[t]);
                    continue;
                }

                auto v = frame.node;
                call.pop_back();
                if (! call.empty())
                    low[call.back().node] = std::min(low[call.back().node], low[v]);

                if (low[v] == index[v]) {
                    vector<size_t> component;
                    size_t w;
                    do {
                        w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        result.component_of[w] = result.components.size();
                        component.push_back(w);
                    } while (w != v);
                    std::sort(component.begin(), component.end());
                    result.components.push_back(std::move(component));
                }
            }
        }

        result.reaches_stable.assign(result.components.size(), false);
        for (size_t c = 0; c < result.components.size(); ++c) {
            bool reaches = false;
            for (auto v : result.components[c]) {
                reaches = reaches || g.stable(v);
                for (const auto & a : g.arcs(v)) {
                    auto d = result.component_of[a.target];
                    if (d != c) {
                        result.dag_arcs.emplace(c, d);
                        reaches = reaches || result.reaches_stable[d];
                    }
                }
            }
            result.reaches_stable[c] = reaches;
        }
        return result;
    }

    auto trace_path(const DivorceGraph & g, size_t start, const vector<BlockingPair> & pairs) -> vector<size_t>
    {
        vector<size_t> path{start};
        for (auto p : pairs) {
            const auto & arcs = g.arcs(path.back());
            auto it = std::find_if(arcs.begin(), arcs.end(), [&](const Arc & a) { return a.pair == p; });
            if (it == arcs.end())
                throw std::invalid_argument("no arc labelled " + describe(g.instance(), p) + " out of node " + std::to_string(path.back()));
            path.push_back(it->target);
        }
        return path;
    }

    auto export_dot(const DivorceGraph & g, const DotHighlight & highlight) -> string
    {
        const auto & instance = g.instance();
        std::set<size_t> roots(highlight.roots.begin(), highlight.roots.end());
        std::set<std::pair<size_t, size_t>> path_arcs;
        std::set<std::pair<size_t, BlockingPair>> path_labels;
        for (size_t i = 0; i + 1 < highlight.path.size(); ++i) {
            path_arcs.emplace(highlight.path[i], highlight.path[i + 1]);
            if (i < highlight.path_pairs.size())
                path_labels.emplace(highlight.path[i], highlight.path_pairs[i]);
        }
        auto on_path = [&](size_t from, const Arc & a) {
            if (! path_arcs.contains({from, a.target}))
                return false;
            return highlight.path_pairs.empty() || path_labels.contains({from, a.pair});
        };

        std::ostringstream out;
        out << "digraph divorce {\n";
        out << "  node [shape=box, fontname=\"monospace\"];\n";
        for (size_t i = 0; i < g.size(); ++i) {
            out << "  n" << i << " [label=\"" << describe(instance, g.node(i)) << "\"";
            if (highlight.stable && g.stable(i))
                out << ", peripheries=2, color=\"darkgreen\"";
            if (roots.contains(i))
                out << ", style=bold";
            out << "];\n";
        }
        for (size_t i = 0; i < g.size(); ++i)
            for (const auto & a : g.arcs(i)) {
                out << "  n" << i << " -> n" << a.target << " [label=\"" << instance.name(Side::left, a.pair.left) << ","
                    << instance.name(Side::right, a.pair.right) << "\"";
                if (on_path(i, a))
                    out << ", color=\"red\", penwidth=2";
                out << "];\n";
            }
        out << "}\n";
        return out.str();
    }
}
