#include <divorce/oracles.hh>

#include <algorithm>
#include <random>
#include <set>

using std::optional;
using std::size_t;
using std::vector;

namespace divorce::oracles
{
    namespace
    {
        constexpr long none = -1;

        // Tier position of `other` in the list, or none. Linear scan on purpose.
        auto position(const PreferenceList & list, AgentIndex other) -> long
        {
            for (size_t t = 0; t < list.size(); ++t)
                if (std::find(list[t].begin(), list[t].end(), other) != list[t].end())
                    return long(t);
            return none;
        }

        // State: partner of each left agent, none for single.
        using State = vector<long>;

        auto to_state(const Matching & m) -> State
        {
            State s;
            for (auto w : m.left_partners())
                s.push_back(w == unmatched ? none : long(w));
            return s;
        }

        auto right_partner(const State & s, long w) -> long
        {
            for (size_t u = 0; u < s.size(); ++u)
                if (s[u] == w)
                    return long(u);
            return none;
        }

        auto wants(const PreferenceList & list, long current, AgentIndex candidate) -> bool
        {
            auto c = position(list, candidate);
            if (c == none)
                return false;
            if (current == none)
                return true;
            return c < position(list, AgentIndex(current));
        }

        auto blocks(const Instance & instance, const State & s, AgentIndex u, AgentIndex w) -> bool
        {
            if (s[u] == long(w))
                return false;
            return wants(instance.preferences({Side::left, u}), s[u], w)
                && wants(instance.preferences({Side::right, w}), right_partner(s, long(w)), u);
        }

        auto stable_state(const Instance & instance, const State & s) -> bool
        {
            for (AgentIndex u = 0; u < instance.size(Side::left); ++u)
                for (AgentIndex w = 0; w < instance.size(Side::right); ++w)
                    if (blocks(instance, s, u, w))
                        return false;
            return true;
        }

        // The divorce: u marries w, and their former partners (if both exist) marry each other.
        // Returns nothing if that second marriage is not mutually acceptable.
        auto divorce(const Instance & instance, const State & s, AgentIndex u, AgentIndex w) -> optional<State>
        {
            long old_wife = s[u], old_husband = right_partner(s, long(w));
            State next = s;
            next[u] = long(w);
            if (old_husband != none) {
                next[size_t(old_husband)] = old_wife;
                if (old_wife != none
                    && position(instance.preferences({Side::left, AgentIndex(old_husband)}), AgentIndex(old_wife)) == none)
                    return std::nullopt;
            }
            return next;
        }

        struct Explorer
        {
            const Instance & instance;
            size_t guard;
            std::set<State> seen;
            vector<BlockingPair> path;
            optional<vector<BlockingPair>> witness;
            bool overflow = false;

            void visit(const State & s)
            {
                if (witness || overflow)
                    return;
                if (seen.size() >= guard) {
                    overflow = true;
                    return;
                }
                seen.insert(s);
                if (stable_state(instance, s)) {
                    witness = path;
                    return;
                }
                for (AgentIndex u = 0; u < instance.size(Side::left); ++u)
                    for (AgentIndex w = 0; w < instance.size(Side::right); ++w) {
                        if (! blocks(instance, s, u, w))
                            continue;
                        auto next = divorce(instance, s, u, w);
                        if (! next || seen.contains(*next))
                            continue;
                        path.push_back({u, w});
                        visit(*next);
                        path.pop_back();
                        if (witness || overflow)
                            return;
                    }
            }
        };
    }

    auto brute_force_independent_set(const SourceGraph & g) -> optional<vector<size_t>>
    {
        if (g.n > 25)
            throw GuardExceeded("brute-force independent set needs n <= 25");
        if (g.k > g.n)
            return std::nullopt;

        vector<vector<bool>> adj(g.n, vector<bool>(g.n, false));
        for (auto [a, b] : g.edges)
            adj[a][b] = adj[b][a] = true;

        // k-subsets in lexicographic order
        vector<size_t> pick(g.k);
        for (size_t i = 0; i < g.k; ++i)
            pick[i] = i;
        while (true) {
            bool ok = true;
            for (size_t i = 0; ok && i < g.k; ++i)
                for (size_t j = i + 1; ok && j < g.k; ++j)
                    ok = ! adj[pick[i]][pick[j]];
            if (ok)
                return pick;

            size_t i = g.k;
            while (i > 0 && pick[i - 1] == g.n - g.k + i - 1)
                --i;
            if (i == 0)
                return std::nullopt;
            ++pick[i - 1];
            for (size_t j = i; j < g.k; ++j)
                pick[j] = pick[j - 1] + 1;
        }
    }

    auto enumerate_matchings(const Instance & instance, size_t guard) -> vector<Matching>
    {
        // include/exclude each acceptable pair in turn
        vector<AgentPair> candidates;
        for (AgentIndex u = 0; u < instance.size(Side::left); ++u)
            for (AgentIndex w = 0; w < instance.size(Side::right); ++w)
                if (position(instance.preferences({Side::left, u}), w) != none)
                    candidates.push_back({u, w});

        vector<Matching> out;
        vector<bool> left_used(instance.size(Side::left)), right_used(instance.size(Side::right));
        vector<AgentPair> chosen;

        std::function<void(size_t)> recurse = [&](size_t i) {
            if (i == candidates.size()) {
                if (out.size() >= guard)
                    throw GuardExceeded("instance has more than " + std::to_string(guard) + " matchings");
                out.push_back(Matching::from_pairs(instance, chosen));
                return;
            }
            recurse(i + 1);
            auto p = candidates[i];
            if (left_used[p.left] || right_used[p.right])
                return;
            left_used[p.left] = right_used[p.right] = true;
            chosen.push_back(p);
            recurse(i + 1);
            chosen.pop_back();
            left_used[p.left] = right_used[p.right] = false;
        };
        recurse(0);
        return out;
    }

    auto stable_by_definition(const Instance & instance, const Matching & m) -> bool
    {
        return stable_state(instance, to_state(m));
    }

    auto all_stable_matchings(const Instance & instance, size_t guard) -> vector<Matching>
    {
        vector<Matching> result;
        for (auto & m : enumerate_matchings(instance, guard))
            if (stable_by_definition(instance, m))
                result.push_back(std::move(m));
        return result;
    }

    auto gale_shapley_tiebreak(const Instance & instance, std::uint64_t seed) -> Matching
    {
        std::mt19937_64 rng(seed);
        auto flatten = [&](const PreferenceList & list) {
            vector<AgentIndex> order;
            for (auto tier : list) {
                std::shuffle(tier.begin(), tier.end(), rng);
                order.insert(order.end(), tier.begin(), tier.end());
            }
            return order;
        };

        auto nl = instance.size(Side::left), nr = instance.size(Side::right);
        vector<vector<AgentIndex>> proposals(nl);
        for (AgentIndex u = 0; u < nl; ++u)
            proposals[u] = flatten(instance.preferences({Side::left, u}));
        // strict rank of each left agent in each right agent's broken list
        vector<vector<long>> rank(nr, vector<long>(nl, none));
        for (AgentIndex w = 0; w < nr; ++w) {
            auto order = flatten(instance.preferences({Side::right, w}));
            for (size_t r = 0; r < order.size(); ++r)
                rank[w][order[r]] = long(r);
        }

        vector<long> holds(nr, none);
        vector<size_t> next(nl, 0);
        vector<AgentIndex> free_agents;
        for (AgentIndex u = nl; u-- > 0;)
            free_agents.push_back(u);

        while (! free_agents.empty()) {
            auto u = free_agents.back();
            if (next[u] == proposals[u].size()) {
                free_agents.pop_back();
                continue;
            }
            auto w = proposals[u][next[u]++];
            if (holds[w] == none) {
                holds[w] = long(u);
                free_agents.pop_back();
            }
            else if (rank[w][u] < rank[w][size_t(holds[w])]) {
                free_agents.back() = AgentIndex(holds[w]);
                holds[w] = long(u);
            }
        }

        vector<AgentPair> pairs;
        for (AgentIndex w = 0; w < nr; ++w)
            if (holds[w] != none)
                pairs.push_back({AgentIndex(holds[w]), w});
        return Matching::from_pairs(instance, pairs);
    }

    auto exhaustive_reachability(const Instance & instance, const Matching & m0, size_t guard) -> SearchVerdict
    {
        Explorer explorer{instance, guard, {}, {}, std::nullopt, false};
        explorer.visit(to_state(m0));

        SearchVerdict verdict;
        verdict.explored = explorer.seen.size();
        if (explorer.witness) {
            verdict.kind = VerdictKind::reachable_stable;
            verdict.witness = std::move(explorer.witness);
        }
        else if (explorer.overflow)
            verdict.kind = VerdictKind::inconclusive;
        else
            verdict.kind = VerdictKind::not_reachable;
        return verdict;
    }
}
