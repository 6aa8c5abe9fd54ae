#include <divorce/explorer.hh>

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>
#include <unordered_set>

using std::size_t;
using std::vector;
using std::chrono::steady_clock;

namespace divorce
{
    auto to_string(VerdictKind kind) -> std::string_view
    {
        switch (kind) {
            case VerdictKind::reachable_stable: return "REACHABLE_STABLE";
            case VerdictKind::not_reachable: return "NOT_REACHABLE";
            case VerdictKind::inconclusive: return "INCONCLUSIVE";
        }
        return "?";
    }

    namespace
    {
        constexpr size_t no_parent = static_cast<size_t>(-1);

        struct Node
        {
            CanonicalKey key;
            size_t parent;
            BlockingPair via;
        };

        auto witness_to(const vector<Node> & nodes, size_t i) -> vector<BlockingPair>
        {
            vector<BlockingPair> path;
            for (; nodes[i].parent != no_parent; i = nodes[i].parent)
                path.push_back(nodes[i].via);
            std::reverse(path.begin(), path.end());
            return path;
        }

        class Deadline
        {
        public:
            explicit Deadline(std::chrono::milliseconds limit) :
                _limit(limit),
                _start(steady_clock::now())
            {
            }

            auto passed() const -> bool
            {
                return _limit.count() > 0 && steady_clock::now() - _start >= _limit;
            }

        private:
            std::chrono::milliseconds _limit;
            steady_clock::time_point _start;
        };

        auto sequential_search(const Instance & instance, const Matching & m0, const SearchOptions & options)
            -> SearchVerdict
        {
            SearchVerdict verdict;
            Deadline deadline(options.budget.max_millis);

            vector<Node> nodes;
            std::unordered_map<CanonicalKey, size_t> visited;
            nodes.push_back({canonical_key(instance, m0), no_parent, {}});
            visited.emplace(nodes.back().key, 0);
            verdict.explored = verdict.frontier_peak = 1;

            if (is_stable(instance, m0)) {
                verdict.kind = VerdictKind::reachable_stable;
                verdict.witness.emplace();
                return verdict;
            }
            if (options.budget.max_nodes == 0) {
                verdict.kind = VerdictKind::inconclusive;
                return verdict;
            }

            // nodes[] doubles as the queue: everything past `next` is the frontier
            for (size_t next = 0; next < nodes.size(); ++next) {
                if ((next & 0xff) == 0 && deadline.passed())
                    return verdict;

                auto current = matching_from_key(instance, nodes[next].key);
                for (auto pair : blocking_pairs(instance, current)) {
                    auto result = apply_b_interchange(instance, current, pair, options.rule);
                    auto successor = std::get_if<Matching>(&result);
                    if (! successor)
                        continue;
                    if (options.on_transition)
                        options.on_transition(current, pair, *successor);

                    auto key = canonical_key(instance, *successor);
                    if (visited.contains(key))
                        continue;
                    if (nodes.size() >= options.budget.max_nodes)
                        return verdict;

                    visited.emplace(key, nodes.size());
                    nodes.push_back({std::move(key), next, pair});
                    verdict.explored = nodes.size();
                    verdict.frontier_peak = std::max(verdict.frontier_peak, nodes.size() - next - 1);

                    if (is_stable(instance, *successor)) {
                        verdict.kind = VerdictKind::reachable_stable;
                        verdict.witness = witness_to(nodes, nodes.size() - 1);
                        return verdict;
                    }
                }
            }

            verdict.kind = VerdictKind::not_reachable;
            return verdict;
        }

        /// Visited set with insert-if-absent under per-shard locks.
        class ShardedVisited
        {
        public:
            auto insert(const CanonicalKey & key) -> bool
            {
                auto & shard = _shards[key.hash() % shard_count];
                std::lock_guard lock(shard.mutex);
                return shard.keys.insert(key).second;
            }

        private:
            static constexpr size_t shard_count = 64;

            struct Shard
            {
                std::mutex mutex;
                std::unordered_set<CanonicalKey> keys;
            };

            std::array<Shard, shard_count> _shards;
        };

        auto parallel_search(const Instance & instance, const Matching & m0, const SearchOptions & options)
            -> SearchVerdict
        {
            SearchVerdict verdict;
            Deadline deadline(options.budget.max_millis);

            vector<Node> nodes;
            ShardedVisited visited;
            nodes.push_back({canonical_key(instance, m0), no_parent, {}});
            visited.insert(nodes.back().key);
            verdict.explored = verdict.frontier_peak = 1;

            if (is_stable(instance, m0)) {
                verdict.kind = VerdictKind::reachable_stable;
                verdict.witness.emplace();
                return verdict;
            }
            if (options.budget.max_nodes == 0)
                return verdict;

            struct Discovery
            {
                Node node;
                bool stable;
            };

            size_t level_begin = 0, level_end = 1;
            std::atomic<size_t> total{1};
            while (level_begin < level_end) {
                std::atomic<size_t> cursor{level_begin};
                std::atomic<bool> found{false}, out_of_budget{false};
                vector<vector<Discovery>> discovered(options.workers);

                auto work = [&](unsigned worker) {
                    auto & out = discovered[worker];
                    for (size_t i; (i = cursor.fetch_add(1)) < level_end;) {
                        if (found.load() || out_of_budget.load())
                            return;
                        if (deadline.passed()) {
                            out_of_budget = true;
                            return;
                        }
                        auto current = matching_from_key(instance, nodes[i].key);
                        for (auto pair : blocking_pairs(instance, current)) {
                            auto result = apply_b_interchange(instance, current, pair, options.rule);
                            auto successor = std::get_if<Matching>(&result);
                            if (! successor)
                                continue;
                            if (options.on_transition)
                                options.on_transition(current, pair, *successor);
                            auto key = canonical_key(instance, *successor);
                            if (! visited.insert(key))
                                continue;
                            if (total.fetch_add(1) >= options.budget.max_nodes) {
                                out_of_budget = true;
                                return;
                            }
                            bool stable = is_stable(instance, *successor);
                            out.push_back({{std::move(key), i, pair}, stable});
                            if (stable) {
                                found = true;
                                return;
                            }
                        }
                    }
                };

                vector<std::thread> threads;
                for (unsigned w = 1; w < options.workers; ++w)
                    threads.emplace_back(work, w);
                work(0);
                for (auto & t : threads)
                    t.join();

                std::optional<size_t> stable_node;
                for (auto & out : discovered)
                    for (auto & d : out) {
                        nodes.push_back(std::move(d.node));
                        if (d.stable && ! stable_node)
                            stable_node = nodes.size() - 1;
                    }
                verdict.explored = nodes.size();
                verdict.frontier_peak = std::max(verdict.frontier_peak, nodes.size() - level_end);

                if (stable_node) {
                    verdict.kind = VerdictKind::reachable_stable;
                    verdict.witness = witness_to(nodes, *stable_node);
                    return verdict;
                }
                if (out_of_budget)
                    return verdict;

                level_begin = level_end;
                level_end = nodes.size();
            }

            verdict.kind = VerdictKind::not_reachable;
            return verdict;
        }
    }

    auto reachable_search(const Instance & instance, const Matching & m0, const SearchOptions & options)
        -> SearchVerdict
    {
        if (options.workers <= 1)
            return sequential_search(instance, m0, options);
        return parallel_search(instance, m0, options);
    }
}
