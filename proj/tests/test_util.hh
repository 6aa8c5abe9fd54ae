#pragma once

#include <divorce/format.hh>
#include <divorce/instance.hh>

#include <algorithm>
#include <random>
#include <string>
#include <vector>

namespace divorce::testing
{
    inline auto fixture_path(const std::string & name) -> std::string
    {
        return std::string(DIVORCE_FIXTURES) + "/" + name;
    }

    inline auto fixture(const std::string & name) -> std::string
    {
        return read_file(fixture_path(name));
    }

    inline auto tamura() -> Instance
    {
        return parse_instance(fixture("tamura.smi"));
    }

    inline auto tamura_matching(const Instance & instance, const std::string & which) -> Matching
    {
        return parse_matching(instance, fixture("tamura_" + which + ".match"));
    }

    inline auto pair_of(const Instance & instance, const std::string & a, const std::string & b) -> AgentPair
    {
        return make_pair(instance, instance.lookup(a), instance.lookup(b));
    }

    /// Random SMTI instance with up to `max_side` agents per side. Each left/right pair is
    /// mutually acceptable with probability `density`; each agent's acceptable set is cut into
    /// random tiers.
    inline auto random_instance(std::mt19937_64 & rng, std::size_t max_side, double density, bool allow_ties = true)
        -> Instance
    {
        std::uniform_int_distribution<std::size_t> size(1, max_side);
        std::bernoulli_distribution accept(density), cut(allow_ties ? 0.6 : 1.0);
        auto nl = size(rng), nr = size(rng);

        std::vector<std::string> left, right;
        for (std::size_t i = 0; i < nl; ++i)
            left.push_back("u" + std::to_string(i + 1));
        for (std::size_t i = 0; i < nr; ++i)
            right.push_back("w" + std::to_string(i + 1));

        std::vector<std::vector<bool>> ok(nl, std::vector<bool>(nr));
        for (auto & row : ok)
            for (std::size_t j = 0; j < nr; ++j)
                row[j] = accept(rng);

        auto make_list = [&](std::vector<AgentIndex> acceptable) {
            std::shuffle(acceptable.begin(), acceptable.end(), rng);
            PreferenceList list;
            for (auto a : acceptable) {
                if (list.empty() || cut(rng))
                    list.emplace_back();
                list.back().push_back(a);
            }
            return list;
        };

        std::vector<PreferenceList> lp(nl), rp(nr);
        for (std::size_t u = 0; u < nl; ++u) {
            std::vector<AgentIndex> acc;
            for (std::size_t w = 0; w < nr; ++w)
                if (ok[u][w])
                    acc.push_back(AgentIndex(w));
            lp[u] = make_list(acc);
        }
        for (std::size_t w = 0; w < nr; ++w) {
            std::vector<AgentIndex> acc;
            for (std::size_t u = 0; u < nl; ++u)
                if (ok[u][w])
                    acc.push_back(AgentIndex(u));
            rp[w] = make_list(acc);
        }
        return Instance(left, right, lp, rp);
    }

    /// Uniformly random partial matching built by greedily taking shuffled acceptable pairs.
    inline auto random_matching(std::mt19937_64 & rng, const Instance & instance) -> Matching
    {
        std::vector<AgentPair> candidates;
        for (AgentIndex u = 0; u < instance.size(Side::left); ++u)
            for (AgentIndex w = 0; w < instance.size(Side::right); ++w)
                if (instance.acceptable({u, w}))
                    candidates.push_back({u, w});
        std::shuffle(candidates.begin(), candidates.end(), rng);
        std::bernoulli_distribution keep(0.8);
        std::vector<bool> lu(instance.size(Side::left)), ru(instance.size(Side::right));
        std::vector<AgentPair> chosen;
        for (auto p : candidates)
            if (! lu[p.left] && ! ru[p.right] && keep(rng)) {
                lu[p.left] = ru[p.right] = true;
                chosen.push_back(p);
            }
        return Matching::from_pairs(instance, chosen);
    }

    /// Agents (as side/index) matched in m.
    inline auto matched_set(const Matching & m) -> std::vector<AgentId>
    {
        std::vector<AgentId> result;
        for (auto p : m.pairs()) {
            result.push_back({Side::left, p.left});
            result.push_back({Side::right, p.right});
        }
        std::sort(result.begin(), result.end());
        return result;
    }
}
