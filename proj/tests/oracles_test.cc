#include "test_util.hh"

#include <divorce/dynamics.hh>
#include <divorce/oracles.hh>

#include <doctest.h>

using namespace divorce;
using namespace divorce::testing;

namespace
{
    auto cycle(std::size_t n, std::size_t k) -> SourceGraph
    {
        SourceGraph g;
        g.n = n;
        g.k = k;
        for (std::size_t i = 0; i + 1 < n; ++i)
            g.edges.push_back({i, i + 1});
        g.edges.push_back({0, n - 1});
        return g;
    }
}

TEST_CASE("brute-force independent set")
{
    CHECK(oracles::brute_force_independent_set(cycle(5, 2)) == std::vector<std::size_t>{0, 2});
    CHECK(! oracles::brute_force_independent_set(cycle(5, 3)));
    CHECK(oracles::brute_force_independent_set(cycle(4, 2)) == std::vector<std::size_t>{0, 2});

    auto k3 = parse_source_graph(fixture("k3.graph"));
    CHECK(oracles::brute_force_independent_set(k3) == std::vector<std::size_t>{0});
    k3.k = 2;
    CHECK(! oracles::brute_force_independent_set(k3));
    k3.k = 0;
    CHECK(oracles::brute_force_independent_set(k3) == std::vector<std::size_t>{});

    auto edgeless = parse_source_graph(fixture("edgeless3.graph"));
    CHECK(oracles::brute_force_independent_set(edgeless) == std::vector<std::size_t>{0, 1, 2});

    SourceGraph big;
    big.n = 26;
    CHECK_THROWS_AS(oracles::brute_force_independent_set(big), GuardExceeded);
}

TEST_CASE("matching enumeration counts")
{
    // complete 4x4: sum over i of C(4,i)^2 i!
    CHECK(oracles::enumerate_matchings(tamura()).size() == 209);
    CHECK(oracles::enumerate_matchings(parse_instance("")).size() == 1);
    CHECK(oracles::enumerate_matchings(parse_instance("side LEFT: u\nside RIGHT: w\npref u: w\npref w: u\n")).size()
        == 2);
    CHECK(oracles::enumerate_matchings(parse_instance("side LEFT: u\nside RIGHT: w\n")).size() == 1);
    CHECK_THROWS_AS(oracles::enumerate_matchings(tamura(), 100), GuardExceeded);
}

TEST_CASE("the Tamura identity matching is the left-optimal stable matching")
{
    auto in = tamura();
    auto identity = tamura_matching(in, "stable");
    auto stable = oracles::all_stable_matchings(in);
    CHECK(std::find(stable.begin(), stable.end(), identity) != stable.end());
    for (const auto & m : stable)
        CHECK(m.perfect());
    CHECK(oracles::gale_shapley_tiebreak(in, 0) == identity);
}

TEST_CASE("deferred acceptance with random tie-breaking is weakly stable")
{
    std::mt19937_64 rng(17);
    for (int i = 0; i < 200; ++i) {
        auto in = random_instance(rng, 5, 0.6);
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
            auto m = oracles::gale_shapley_tiebreak(in, seed);
            CHECK(oracles::stable_by_definition(in, m));
            CHECK(is_stable(in, m));
        }
    }
}

TEST_CASE("stability by definition agrees with blocking_pairs")
{
    std::mt19937_64 rng(23);
    for (int i = 0; i < 80; ++i) {
        auto in = random_instance(rng, 4, 0.7);
        for (const auto & m : oracles::enumerate_matchings(in))
            CHECK(oracles::stable_by_definition(in, m) == blocking_pairs(in, m).empty());
    }
}

TEST_CASE("exhaustive reachability on the Tamura instance")
{
    auto in = tamura();
    auto yes = oracles::exhaustive_reachability(in, tamura_matching(in, "m0"));
    CHECK(yes.kind == VerdictKind::reachable_stable);
    REQUIRE(yes.witness);
    CHECK(yes.witness->size() == 1);

    auto no = oracles::exhaustive_reachability(in, tamura_matching(in, "n0"));
    CHECK(no.kind == VerdictKind::not_reachable);
    CHECK(no.explored <= 24);

    auto capped = oracles::exhaustive_reachability(in, tamura_matching(in, "n0"), 2);
    CHECK(capped.kind == VerdictKind::inconclusive);

    auto already = oracles::exhaustive_reachability(in, tamura_matching(in, "stable"));
    REQUIRE(already.witness);
    CHECK(already.witness->empty());
}

TEST_CASE("exhaustive reachability honours acceptability of the remarriage")
{
    auto in = parse_instance(fixture("nonstable_sink.smi"));
    auto m = parse_matching(in, fixture("nonstable_sink.match"));
    auto v = oracles::exhaustive_reachability(in, m);
    CHECK(v.kind == VerdictKind::not_reachable);
    CHECK(v.explored == 1);
}
