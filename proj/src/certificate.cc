#include <divorce/reduction.hh>

#include <algorithm>

using std::size_t;
using std::vector;

namespace divorce
{
    auto build_certificate(const ReductionArtifact & art, vector<size_t> vset) -> Certificate
    {
        const auto & g = art.graph;
        const auto & meta = art.meta;

        std::sort(vset.begin(), vset.end());
        for (auto v : vset)
            if (v >= g.n)
                throw ValidationError("vertex index " + std::to_string(v + 1) + " is not in the graph");
        if (vset.size() != g.k)
            throw ValidationError("vertex set has " + std::to_string(vset.size()) + " vertices but k = " + std::to_string(g.k));
        if (! is_independent(g, vset))
            throw ValidationError("vertex set is not independent");

        vector<bool> chosen(g.n, false);
        for (auto v : vset)
            chosen[v] = true;

        Certificate cert;

        // Vertices of the set marry s_1..s_k in order; their b's take over the a's.
        for (size_t i = 0; i < vset.size(); ++i)
            cert.steps.push_back({meta.vertex[vset[i]], meta.s[i]});
        cert.boundaries.push_back({StageBoundary::Kind::after_s_stage, cert.steps.size(), std::nullopt});

        // The remaining vertices marry t_1..t_{n-k}.
        size_t next_t = 0;
        for (size_t v = 0; v < g.n; ++v)
            if (! chosen[v])
                cert.steps.push_back({meta.vertex[v], meta.t[next_t++]});
        cert.boundaries.push_back({StageBoundary::Kind::after_t_stage, cert.steps.size(), std::nullopt});

        for (size_t j = 0; j < meta.edges.size(); ++j) {
            const auto & gd = meta.edges[j];
            if (! chosen[gd.v_prime]) {
                cert.steps.push_back({gd.e, gd.e_v});         // x_j takes y_j
                cert.steps.push_back({gd.f, gd.e_v_prime});   // c_j takes d_j
            }
            else {
                cert.steps.push_back({gd.e, gd.e_v_prime});   // c_j takes y_j
                cert.steps.push_back({gd.x, gd.y});           // c_j takes e^v_j
                cert.steps.push_back({gd.c, gd.d});           // f_j takes e^v_j
            }
            cert.boundaries.push_back({StageBoundary::Kind::after_edge, cert.steps.size(), j});
        }
        return cert;
    }

    auto boundary_agents(const ReductionArtifact & art, const StageBoundary & boundary) -> vector<AgentId>
    {
        const auto & meta = art.meta;
        vector<AgentId> result;
        auto right = [&](AgentIndex i) { result.push_back({Side::right, i}); };
        auto left = [&](AgentIndex i) { result.push_back({Side::left, i}); };

        switch (boundary.kind) {
            case StageBoundary::Kind::after_t_stage:
                std::for_each(meta.t.begin(), meta.t.end(), right);
                [[fallthrough]];
            case StageBoundary::Kind::after_s_stage:
                std::for_each(meta.s.begin(), meta.s.end(), right);
                break;
            case StageBoundary::Kind::after_edge: {
                const auto & gd = meta.edges.at(boundary.edge.value());
                for (auto i : {gd.e, gd.f, gd.x, gd.c})
                    left(i);
                for (auto i : {gd.y, gd.d, gd.e_v, gd.e_v_prime})
                    right(i);
                break;
            }
        }
        return result;
    }
}
