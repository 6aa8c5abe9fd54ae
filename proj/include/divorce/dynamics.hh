#pragma once

#include <divorce/instance.hh>

#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace divorce
{
    using BlockingPair = AgentPair;

    /// Which pairs may be used for a b-interchange, beyond being blocking.
    enum class InterchangeRule
    {
        /// Set semantics of the interchange formula for any matched-ness of the two agents; the
        /// only extra gate is that the result is a matching.
        set_semantics,
        /// Additionally require both agents of the pair to be matched.
        both_matched
    };

    enum class Infeasible
    {
        not_blocking,
        remarriage_unacceptable,
        /// Only produced under InterchangeRule::both_matched.
        partner_unmatched
    };

    auto to_string(Infeasible reason) -> std::string_view;

    /// Weak-stability blocking: the pair is not in m, is mutually acceptable, and each member
    /// is unmatched or strictly prefers the other to its partner. Ties never block.
    auto is_blocking(const Instance & instance, const Matching & m, AgentPair pair) -> bool;

    /// Throws ValidationError if the agents are on the same side or missing.
    auto is_blocking(const Instance & instance, const Matching & m, AgentId a, AgentId b) -> bool;

    /// All blocking pairs, ordered by left index then right index.
    auto blocking_pairs(const Instance & instance, const Matching & m) -> std::vector<BlockingPair>;

    auto is_stable(const Instance & instance, const Matching & m) -> bool;

    /// m - {u, m(u)} - {m(w), w} + {u, w} + {m(w), m(u)}, as a sorted pair set. Pairs that do
    /// not exist are not removed, and the ex-partner pair is only added when both exist. The
    /// result need not be a matching of any instance.
    auto b_inter_raw(const Matching & m, AgentPair pair) -> std::vector<AgentPair>;

    using Interchange = std::variant<Matching, Infeasible>;

    /// The b-interchange by `pair`, or why it is not allowed.
    auto apply_b_interchange(const Instance & instance, const Matching & m, BlockingPair pair,
        InterchangeRule rule = InterchangeRule::set_semantics) -> Interchange;

    struct StepRecord
    {
        BlockingPair pair;
        CanonicalKey before, after;
    };

    struct SequenceReport
    {
        Matching final;
        std::vector<StepRecord> steps;
        bool final_stable;
    };

    struct Rejection
    {
        std::size_t step;
        Infeasible reason;
    };

    /// Replays the pairs as b-interchanges from m0, stopping at the first infeasible one.
    auto verify_sequence(const Instance & instance, const Matching & m0, std::span<const AgentPair> sequence,
        InterchangeRule rule = InterchangeRule::set_semantics) -> std::variant<SequenceReport, Rejection>;
}
