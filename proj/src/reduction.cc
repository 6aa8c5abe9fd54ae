#include <divorce/reduction.hh>

#include <divorce/dynamics.hh>

#include <algorithm>

using nlohmann::json;
using std::size_t;
using std::string;
using std::vector;

namespace divorce
{
    auto ReductionMeta::edge_agents_of(size_t vertex) const -> vector<AgentIndex>
    {
        vector<AgentIndex> result;
        for (const auto & g : edges) {
            if (g.v == vertex)
                result.push_back(g.e_v);
            else if (g.v_prime == vertex)
                result.push_back(g.e_v_prime);
        }
        return result;
    }

    namespace
    {
        auto indexed(const string & family, size_t i) -> string
        {
            return family + "_" + std::to_string(i + 1);
        }

        // e^{v_3}_2
        auto edge_vertex_name(size_t vertex, size_t edge) -> string
        {
            return "e^{" + vertex_name(vertex) + "}_" + std::to_string(edge + 1);
        }

        auto singleton(AgentIndex a) -> Tier { return Tier{a}; }
    }

    auto reduce(const SourceGraph & g) -> ReductionArtifact
    {
        g.validate();
        const size_t n = g.n, m = g.edges.size(), k = g.k;

        ReductionMeta meta;
        vector<string> left, right;

        auto add = [](vector<string> & side, string name) {
            side.push_back(std::move(name));
            return AgentIndex(side.size() - 1);
        };

        // Left side: V, E, F, A, X, C.
        meta.edges.resize(m);
        for (size_t i = 0; i < n; ++i)
            meta.vertex.push_back(add(left, vertex_name(i)));
        for (size_t j = 0; j < m; ++j)
            meta.edges[j].e = add(left, indexed("e", j));
        for (size_t j = 0; j < m; ++j)
            meta.edges[j].f = add(left, indexed("f", j));
        for (size_t i = 0; i < n; ++i)
            meta.a.push_back(add(left, indexed("a", i)));
        for (size_t j = 0; j < m; ++j)
            meta.edges[j].x = add(left, indexed("x", j));
        for (size_t j = 0; j < m; ++j)
            meta.edges[j].c = add(left, indexed("c", j));

        // Right side: S, T, B, E^V, Y, D.
        for (size_t i = 0; i < k; ++i)
            meta.s.push_back(add(right, indexed("s", i)));
        for (size_t i = 0; i < n - k; ++i)
            meta.t.push_back(add(right, indexed("t", i)));
        for (size_t i = 0; i < n; ++i)
            meta.b.push_back(add(right, indexed("b", i)));
        for (size_t j = 0; j < m; ++j) {
            auto & gadget = meta.edges[j];
            gadget.v = std::min(g.edges[j].first, g.edges[j].second);
            gadget.v_prime = std::max(g.edges[j].first, g.edges[j].second);
            gadget.e_v = add(right, edge_vertex_name(gadget.v, j));
            gadget.e_v_prime = add(right, edge_vertex_name(gadget.v_prime, j));
        }
        for (size_t j = 0; j < m; ++j)
            meta.edges[j].y = add(right, indexed("y", j));
        for (size_t j = 0; j < m; ++j)
            meta.edges[j].d = add(right, indexed("d", j));

        vector<PreferenceList> lp(left.size()), rp(right.size());
        auto push_nonempty = [](PreferenceList & list, Tier tier) {
            if (! tier.empty())
                list.push_back(std::move(tier));
        };

        Tier all_t(meta.t.begin(), meta.t.end()), all_s(meta.s.begin(), meta.s.end());
        Tier all_b(meta.b.begin(), meta.b.end()), all_v(meta.vertex.begin(), meta.vertex.end());

        // v_i: (T) > (E(v_i)) > (S) > b_i
        for (size_t i = 0; i < n; ++i) {
            auto & list = lp[meta.vertex[i]];
            push_nonempty(list, all_t);
            push_nonempty(list, meta.edge_agents_of(i));
            push_nonempty(list, all_s);
            list.push_back(singleton(meta.b[i]));
        }
        // a_i: (B) > s_i for i <= k, (B) > t_{i-k} otherwise
        for (size_t i = 0; i < n; ++i) {
            auto & list = lp[meta.a[i]];
            push_nonempty(list, all_b);
            list.push_back(singleton(i < k ? meta.s[i] : meta.t[i - k]));
        }
        for (const auto & gd : meta.edges) {
            Tier pair{gd.e_v, gd.e_v_prime};
            lp[gd.e] = {pair, singleton(gd.y)};                           // e_j: (e^v, e^v') > y_j
            lp[gd.f] = {pair, singleton(gd.d)};                           // f_j: (e^v, e^v') > d_j
            lp[gd.x] = {singleton(gd.y), pair, singleton(gd.d)};          // x_j: y_j > (e^v, e^v') > d_j
            lp[gd.c] = {singleton(gd.d), pair, singleton(gd.y)};          // c_j: d_j > (e^v, e^v') > y_j
        }

        // s_i: [V] > a_i, strict in vertex order
        for (size_t i = 0; i < k; ++i) {
            auto & list = rp[meta.s[i]];
            for (auto v : meta.vertex)
                list.push_back(singleton(v));
            list.push_back(singleton(meta.a[i]));
        }
        // t_i: (V) > a_{i+k}
        for (size_t i = 0; i < n - k; ++i)
            rp[meta.t[i]] = {all_v, singleton(meta.a[i + k])};
        // b_i: [A] > v_i, strict in index order
        for (size_t i = 0; i < n; ++i) {
            auto & list = rp[meta.b[i]];
            for (auto a : meta.a)
                list.push_back(singleton(a));
            list.push_back(singleton(meta.vertex[i]));
        }
        for (const auto & gd : meta.edges) {
            // e^v_j: e_j > v > f_j > c_j > x_j
            for (auto [agent, vertex] : {std::pair{gd.e_v, gd.v}, std::pair{gd.e_v_prime, gd.v_prime}})
                rp[agent] = {singleton(gd.e), singleton(meta.vertex[vertex]), singleton(gd.f), singleton(gd.c), singleton(gd.x)};
            rp[gd.y] = {singleton(gd.x), singleton(gd.e), singleton(gd.c)};   // y_j: x_j > e_j > c_j
            rp[gd.d] = {singleton(gd.c), singleton(gd.f), singleton(gd.x)};   // d_j: c_j > f_j > x_j
        }

        Instance instance(std::move(left), std::move(right), std::move(lp), std::move(rp));

        vector<AgentPair> initial;
        for (size_t i = 0; i < n; ++i) {
            initial.push_back({meta.vertex[i], meta.b[i]});
            initial.push_back({meta.a[i], i < k ? meta.s[i] : meta.t[i - k]});
        }
        for (const auto & gd : meta.edges) {
            initial.push_back({gd.x, gd.e_v});
            initial.push_back({gd.c, gd.e_v_prime});
            initial.push_back({gd.e, gd.y});
            initial.push_back({gd.f, gd.d});
        }
        auto m0 = Matching::from_pairs(instance, initial);

        return ReductionArtifact{g, std::move(instance), std::move(m0), std::move(meta)};
    }

    auto meta_to_json(const ReductionArtifact & art) -> json
    {
        const auto & in = art.instance;
        const auto & meta = art.meta;
        auto left = [&](AgentIndex i) { return in.name(Side::left, i); };
        auto right = [&](AgentIndex i) { return in.name(Side::right, i); };

        json vertices = json::array();
        for (size_t i = 0; i < art.graph.n; ++i) {
            json edge_agents = json::array();
            for (auto e : meta.edge_agents_of(i))
                edge_agents.push_back(right(e));
            vertices.push_back({{"vertex", vertex_name(i)}, {"agent", left(meta.vertex[i])}, {"a", left(meta.a[i])},
                {"b", right(meta.b[i])}, {"edge_agents", edge_agents}});
        }

        json edges = json::array();
        for (size_t j = 0; j < meta.edges.size(); ++j) {
            const auto & gd = meta.edges[j];
            edges.push_back({{"edge", "e_" + std::to_string(j + 1)}, {"v", vertex_name(gd.v)}, {"v_prime", vertex_name(gd.v_prime)},
                {"agents",
                    {{"e", left(gd.e)}, {"f", left(gd.f)}, {"x", left(gd.x)}, {"c", left(gd.c)}, {"y", right(gd.y)},
                        {"d", right(gd.d)}, {"e_v", right(gd.e_v)}, {"e_v_prime", right(gd.e_v_prime)}}}});
        }

        json s = json::array(), t = json::array();
        for (auto i : meta.s)
            s.push_back(right(i));
        for (auto i : meta.t)
            t.push_back(right(i));

        return json{{"n", art.graph.n}, {"m", art.graph.edges.size()}, {"k", art.graph.k},
            {"agents_per_side", in.size(Side::left)}, {"vertices", vertices}, {"edges", edges}, {"S", s}, {"T", t}};
    }

    auto extract_independent_set(const ReductionArtifact & art, const Matching & m) -> vector<size_t>
    {
        if (! is_stable(art.instance, m))
            throw ValidationError("matching is not stable for the reduced instance");
        vector<size_t> result;
        for (size_t i = 0; i < art.graph.n; ++i) {
            auto partner = m.partner(Side::left, art.meta.vertex[i]);
            if (partner != unmatched && partner < art.graph.k)
                result.push_back(i);
        }
        return result;
    }

    auto Claim1Report::all() const -> bool
    {
        return std::all_of(properties.begin(), properties.end(), [](const auto & p) { return p.holds; });
    }

    auto check_claim1(const ReductionArtifact & art, const Matching & m) -> Claim1Report
    {
        const auto & in = art.instance;
        const auto & meta = art.meta;
        const size_t n = art.graph.n, k = art.graph.k;

        // Right-side families occupy contiguous index ranges: S, T, B, ...
        auto in_s = [&](AgentIndex r) { return r != unmatched && r < k; };
        auto in_t = [&](AgentIndex r) { return r != unmatched && r >= k && r < n; };
        auto in_b = [&](AgentIndex r) { return r != unmatched && r >= n && r < 2 * n; };
        auto in_v = [&](AgentIndex l) { return l != unmatched && l < n; };

        Claim1Report report;
        auto fail = [&](int property, string who) {
            report.properties[property - 1].holds = false;
            report.properties[property - 1].counterexamples.push_back(std::move(who));
        };

        for (size_t i = 0; i < n; ++i)
            if (! in_b(m.partner(Side::left, meta.a[i])))
                fail(1, in.name(Side::left, meta.a[i]));
        for (const auto & gd : meta.edges) {
            if (m.partner(Side::left, gd.x) != gd.y)
                fail(2, in.name(Side::left, gd.x));
            if (m.partner(Side::left, gd.c) != gd.d)
                fail(3, in.name(Side::left, gd.c));
        }
        for (auto t : meta.t)
            if (! in_v(m.partner(Side::right, t)))
                fail(4, in.name(Side::right, t));
        for (auto s : meta.s)
            if (! in_v(m.partner(Side::right, s)))
                fail(5, in.name(Side::right, s));

        for (size_t i = 0; i < n; ++i) {
            if (! in_s(m.partner(Side::left, meta.vertex[i])))
                continue;
            for (const auto & gd : meta.edges) {
                if (gd.v != i && gd.v_prime != i)
                    continue;
                auto own = gd.v == i ? gd.e_v : gd.e_v_prime;
                auto other = gd.v == i ? gd.v_prime : gd.v;
                if (m.partner(Side::left, gd.e) != own || ! in_t(m.partner(Side::left, meta.vertex[other])))
                    fail(6, in.name(Side::left, meta.vertex[i]) + "/" + in.name(Side::left, gd.e));
            }
        }
        return report;
    }
}
