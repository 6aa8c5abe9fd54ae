#pragma once

#include <divorce/explorer.hh>
#include <divorce/instance.hh>
#include <divorce/source_graph.hh>

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

// Brute-force references. Nothing here calls into the dynamics or explorer code (they only
// share the Instance/Matching types and the SearchVerdict shape), so agreement between the two
// is evidence rather than tautology. None of this is meant to be fast.
namespace divorce::oracles
{
    /// The lexicographically least independent set of size k, if any. Requires n <= 25.
    auto brute_force_independent_set(const SourceGraph & g) -> std::optional<std::vector<std::size_t>>;

    /// Every matching (partial ones and the empty one included), each once. Throws
    /// GuardExceeded once more than `guard` matchings would be produced.
    auto enumerate_matchings(const Instance & instance, std::size_t guard = 1'000'000) -> std::vector<Matching>;

    auto all_stable_matchings(const Instance & instance, std::size_t guard = 1'000'000) -> std::vector<Matching>;

    /// Breaks ties by a seeded shuffle inside each tier, then runs left-proposing deferred
    /// acceptance on the strict lists.
    auto gale_shapley_tiebreak(const Instance & instance, std::uint64_t seed) -> Matching;

    /// Plain recursive depth-first exploration of everything reachable from m0. The witness,
    /// when one is found, is some path to a stable matching (not necessarily a shortest one).
    /// More than `guard` reachable matchings gives INCONCLUSIVE.
    auto exhaustive_reachability(const Instance & instance, const Matching & m0, std::size_t guard = 20'000)
        -> SearchVerdict;

    /// Weak stability, checked pair by pair straight from the preference lists.
    auto stable_by_definition(const Instance & instance, const Matching & m) -> bool;
}
