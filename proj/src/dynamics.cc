#include <divorce/dynamics.hh>

#include <algorithm>

using std::size_t;
using std::vector;

namespace divorce
{
    auto to_string(Infeasible reason) -> std::string_view
    {
        switch (reason) {
            case Infeasible::not_blocking: return "NOT_BLOCKING";
            case Infeasible::remarriage_unacceptable: return "REMARRIAGE_UNACCEPTABLE";
            case Infeasible::partner_unmatched: return "PARTNER_UNMATCHED";
        }
        return "?";
    }

    auto is_blocking(const Instance & instance, const Matching & m, AgentPair pair) -> bool
    {
        auto [u, w] = pair;
        if (u >= instance.size(Side::left) || w >= instance.size(Side::right))
            throw ValidationError("pair references an agent outside the instance");
        if (m.partner(Side::left, u) == w)
            return false;

        auto u_rank = instance.rank(Side::left, u, w);
        auto w_rank = instance.rank(Side::right, w, u);
        if (u_rank < 0 || w_rank < 0)
            return false;

        auto mu = m.partner(Side::left, u);
        if (mu != unmatched && instance.rank(Side::left, u, mu) <= u_rank)
            return false;

        auto mw = m.partner(Side::right, w);
        if (mw != unmatched && instance.rank(Side::right, w, mw) <= w_rank)
            return false;

        return true;
    }

    auto is_blocking(const Instance & instance, const Matching & m, AgentId a, AgentId b) -> bool
    {
        return is_blocking(instance, m, make_pair(instance, a, b));
    }

    auto blocking_pairs(const Instance & instance, const Matching & m) -> vector<BlockingPair>
    {
        vector<BlockingPair> result;
        for (AgentIndex u = 0; u < instance.size(Side::left); ++u) {
            auto mu = m.partner(Side::left, u);
            int current = mu == unmatched ? -1 : instance.rank(Side::left, u, mu);
            // only walk the tiers u strictly prefers to its partner
            const auto & tiers = instance.preferences({Side::left, u});
            auto limit = current < 0 ? tiers.size() : size_t(current);
            auto start = result.size();
            for (size_t t = 0; t < limit; ++t)
                for (auto w : tiers[t])
                    if (is_blocking(instance, m, {u, w}))
                        result.push_back({u, w});
            std::sort(result.begin() + std::ptrdiff_t(start), result.end());
        }
        return result;
    }

    auto is_stable(const Instance & instance, const Matching & m) -> bool
    {
        for (AgentIndex u = 0; u < instance.size(Side::left); ++u) {
            auto mu = m.partner(Side::left, u);
            const auto & tiers = instance.preferences({Side::left, u});
            auto limit = mu == unmatched ? tiers.size() : size_t(instance.rank(Side::left, u, mu));
            for (size_t t = 0; t < limit; ++t)
                for (auto w : tiers[t])
                    if (is_blocking(instance, m, {u, w}))
                        return false;
        }
        return true;
    }

    auto b_inter_raw(const Matching & m, AgentPair pair) -> vector<AgentPair>
    {
        auto [u, w] = pair;
        auto mu = m.partner(Side::left, u), mw = m.partner(Side::right, w);

        vector<AgentPair> result;
        for (auto p : m.pairs())
            if (p != AgentPair{u, mu} && p != AgentPair{mw, w})
                result.push_back(p);
        result.push_back(pair);
        if (mu != unmatched && mw != unmatched)
            result.push_back({mw, mu});

        std::sort(result.begin(), result.end());
        result.erase(std::unique(result.begin(), result.end()), result.end());
        return result;
    }

    auto apply_b_interchange(const Instance & instance, const Matching & m, BlockingPair pair, InterchangeRule rule)
        -> Interchange
    {
        if (! is_blocking(instance, m, pair))
            return Infeasible::not_blocking;

        auto [u, w] = pair;
        auto mu = m.partner(Side::left, u), mw = m.partner(Side::right, w);

        if (rule == InterchangeRule::both_matched && (mu == unmatched || mw == unmatched))
            return Infeasible::partner_unmatched;

        // The freed agents mw (left) and mu (right) must accept each other when both exist.
        if (mu != unmatched && mw != unmatched && ! instance.acceptable({mw, mu}))
            return Infeasible::remarriage_unacceptable;

        auto partners = m.left_partners();
        partners[u] = w;
        if (mw != unmatched)
            partners[mw] = mu;
        return Matching::from_partners(instance, std::move(partners));
    }

    auto verify_sequence(const Instance & instance, const Matching & m0, std::span<const AgentPair> sequence,
        InterchangeRule rule) -> std::variant<SequenceReport, Rejection>
    {
        SequenceReport report{m0, {}, false};
        report.steps.reserve(sequence.size());
        auto key = canonical_key(instance, m0);
        for (size_t i = 0; i < sequence.size(); ++i) {
            auto p = sequence[i];
            if (p.left >= instance.size(Side::left) || p.right >= instance.size(Side::right))
                return Rejection{i, Infeasible::not_blocking};
            auto next = apply_b_interchange(instance, report.final, p, rule);
            if (auto reason = std::get_if<Infeasible>(&next))
                return Rejection{i, *reason};
            report.final = std::get<Matching>(std::move(next));
            auto after = canonical_key(instance, report.final);
            report.steps.push_back({p, std::move(key), after});
            key = std::move(after);
        }
        report.final_stable = is_stable(instance, report.final);
        return report;
    }
}
