// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "invariants.hh"
#include "test_util.hh"

#include <divorce/dynamics.hh>
#include <divorce/explorer.hh>
#include <divorce/oracles.hh>
#include <divorce/reduction.hh>

#include <chrono>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>

using namespace divorce;
using namespace divorce::testing;
using Clock = std::chrono::steady_clock;
using std::chrono::milliseconds;

namespace
{
    // Pinned thresholds.
    constexpr auto example_limit = milliseconds(1);
    constexpr auto tamura_search_limit = milliseconds(1000);
    constexpr auto forward_soundness_limit = milliseconds(10'000);
    constexpr std::size_t tamura_explored_max = 24;
    constexpr std::size_t backward_budget = 1'000'000;
    constexpr std::size_t backward_max_n = 3;
    constexpr std::size_t forward_max_n = 4;
    constexpr int corpus_size = 500;
    constexpr std::size_t corpus_max_side = 4;
    constexpr std::uint64_t corpus_seed = 20'240'601;

    auto elapsed(Clock::time_point since) -> milliseconds
    {
        return std::chrono::duration_cast<milliseconds>(Clock::now() - since);
    }

    auto micros(Clock::duration d) -> long
    {
        return long(std::chrono::duration_cast<std::chrono::microseconds>(d).count());
    }

    int failures = 0;

    void report(int number, bool pass, const std::string & title, const std::string & detail)
    {
        failures += ! pass;
        std::cout << "criterion " << number << ": " << (pass ? "PASS" : "FAIL") << "  " << title << "  [" << detail
                  << "]" << std::endl;
    }

    // Criterion 10 bookkeeping, fed by every search and graph build below.
    struct InvariantLog
    {
        std::mutex lock;
        std::size_t transitions = 0, witnesses = 0, violations = 0;
        std::string first;

        void violation(const std::string & what)
        {
            ++violations;
            if (first.empty())
                first = what;
        }

        auto observer(const Instance & in) -> TransitionObserver
        {
            return [this, &in](const Matching & from, BlockingPair p, const Matching & to) {
                auto v = transition_violation(in, from, p, to);
                std::lock_guard guard(lock);
                ++transitions;
                if (! v.empty())
                    violation(v);
            };
        }

        void witness(const Instance & in, const Matching & m0, const SearchVerdict & verdict)
        {
            if (! verdict.witness)
                return;
            ++witnesses;
            auto r = verify_sequence(in, m0, *verdict.witness);
            if (! std::holds_alternative<SequenceReport>(r) || ! std::get<SequenceReport>(r).final_stable)
                violation("witness does not re-verify from " + describe(in, m0));
        }
    };

    InvariantLog invariants;

    auto search(const Instance & in, const Matching & m0, std::size_t budget = 1'000'000) -> SearchVerdict
    {
        SearchOptions opts;
        opts.budget.max_nodes = budget;
        opts.on_transition = invariants.observer(in);
        auto v = reachable_search(in, m0, opts);
        invariants.witness(in, m0, v);
        return v;
    }

    // Every simple graph on n labelled vertices, edges in lexicographic order.
    auto all_graphs(std::size_t n) -> std::vector<SourceGraph>
    {
        std::vector<std::pair<std::size_t, std::size_t>> possible;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b)
                possible.push_back({a, b});
        std::vector<SourceGraph> out;
        for (std::size_t mask = 0; mask < (std::size_t(1) << possible.size()); ++mask) {
            SourceGraph g;
            g.n = n;
            for (std::size_t i = 0; i < possible.size(); ++i)
                if (mask >> i & 1)
                    g.edges.push_back(possible[i]);
            out.push_back(g);
        }
        return out;
    }

    auto independent_sets(const SourceGraph & g) -> std::vector<std::vector<std::size_t>>
    {
        std::vector<std::vector<std::size_t>> out;
        for (std::size_t mask = 0; mask < (std::size_t(1) << g.n); ++mask) {
            std::vector<std::size_t> vs;
            for (std::size_t v = 0; v < g.n; ++v)
                if (mask >> v & 1)
                    vs.push_back(v);
            if (is_independent(g, vs))
                out.push_back(vs);
        }
        return out;
    }

    auto graph_text(const SourceGraph & g) -> std::string
    {
        std::ostringstream s;
        s << "n=" << g.n << " k=" << g.k << " E={";
        for (auto [a, b] : g.edges)
            s << " " << a + 1 << b + 1;
        s << " }";
        return s.str();
    }

    void criterion_1()
    {
        auto in = tamura();
        auto m0 = tamura_matching(in, "m0");
        auto start = Clock::now();
        auto blocking = blocking_pairs(in, m0);
        auto took = Clock::now() - start;
        std::vector<BlockingPair> expected{pair_of(in, "u2", "w2"), pair_of(in, "u4", "w4")};
        std::string got;
        for (auto p : blocking)
            got += "{" + in.name(Side::left, p.left) + "," + in.name(Side::right, p.right) + "}";
        report(1, blocking == expected && took < example_limit, "Tamura instance blocking pairs at M0",
            got + ", " + std::to_string(micros(took)) + " us");
    }

    void criterion_2()
    {
        auto in = tamura();
        auto m0 = tamura_matching(in, "m0");
        auto target = tamura_matching(in, "stable");
        bool ok = true;
        Clock::duration worst{};
        for (auto p : {pair_of(in, "u2", "w2"), pair_of(in, "u4", "w4")}) {
            auto start = Clock::now();
            auto r = apply_b_interchange(in, m0, p);
            bool stable = std::holds_alternative<Matching>(r) && is_stable(in, std::get<Matching>(r));
            worst = std::max(worst, Clock::now() - start);
            ok = ok && stable && std::get<Matching>(r) == target;
            if (std::holds_alternative<Matching>(r))
                invariants.observer(in)(m0, p, std::get<Matching>(r));
        }
        report(2, ok && worst < example_limit, "Tamura instance: either blocking pair leads to the stable identity matching",
            "worst " + std::to_string(micros(worst)) + " us");
    }

    void criterion_3()
    {
        auto in = tamura();
        auto n0 = tamura_matching(in, "n0");
        auto start = Clock::now();
        auto v = search(in, n0);
        auto took = elapsed(start);
        bool ok = v.kind == VerdictKind::not_reachable && v.explored <= tamura_explored_max && took < tamura_search_limit;
        report(3, ok, "Tamura's N0 reaches no stable matching",
            std::string(to_string(v.kind)) + ", explored " + std::to_string(v.explored) + ", "
                + std::to_string(took.count()) + " ms");
    }

    void criterion_4()
    {
        std::vector<SourceGraph> graphs;
        SourceGraph k2{2, {{0, 1}}, 1}, k3{3, {{0, 1}, {0, 2}, {1, 2}}, 1}, p3{3, {{0, 1}, {1, 2}}, 2};
        graphs = {k2, k3, p3};
        for (std::size_t n = 1; n <= 4; ++n)
            graphs.push_back(SourceGraph{n, {}, n});
        bool ok = true;
        std::string sizes;
        for (const auto & g : graphs) {
            auto art = reduce(g);
            auto want = 4 * g.edges.size() + 2 * g.n;
            ok = ok && art.instance.size(Side::left) == want && art.instance.size(Side::right) == want;
            sizes += (sizes.empty() ? "" : " ") + std::to_string(art.instance.size(Side::left));
        }
        report(4, ok, "reduction has 4m+2n agents per side", "K2 K3 P3 edgeless1-4: " + sizes);
    }

    struct BoundaryTally
    {
        std::map<StageBoundary::Kind, std::size_t> checked, violated;
        std::string first;
    };

    void criteria_5_and_6()
    {
        auto start = Clock::now();
        std::size_t runs = 0, forward_failures = 0;
        std::string first_failure;
        BoundaryTally tally;

        for (std::size_t n = 1; n <= forward_max_n; ++n)
            for (auto g : all_graphs(n))
                for (const auto & vs : independent_sets(g)) {
                    g.k = vs.size();
                    auto art = reduce(g);
                    auto cert = build_certificate(art, vs);
                    ++runs;

                    auto r = verify_sequence(art.instance, art.m0, cert.steps);
                    bool ok = std::holds_alternative<SequenceReport>(r);
                    if (ok) {
                        const auto & rep = std::get<SequenceReport>(r);
                        ok = rep.final_stable && check_claim1(art, rep.final).all()
                            && extract_independent_set(art, rep.final) == vs;
                    }
                    if (! ok && ++forward_failures == 1)
                        first_failure = graph_text(g);

                    // replay once, checking each boundary on the way
                    Matching m = art.m0;
                    std::size_t done = 0;
                    for (const auto & b : cert.boundaries) {
                        for (; done < b.prefix; ++done)
                            m = std::get<Matching>(apply_b_interchange(art.instance, m, cert.steps[done]));
                        auto forbidden = boundary_agents(art, b);
                        auto touches = [&](BlockingPair p) {
                            return std::find(forbidden.begin(), forbidden.end(), AgentId{Side::left, p.left})
                                    != forbidden.end()
                                || std::find(forbidden.begin(), forbidden.end(), AgentId{Side::right, p.right})
                                    != forbidden.end();
                        };
                        ++tally.checked[b.kind];
                        for (auto p : blocking_pairs(art.instance, m))
                            if (touches(p)) {
                                if (++tally.violated[b.kind] == 1 && tally.first.empty())
                                    tally.first = graph_text(g) + " V'={" + [&] {
                                        std::string s;
                                        for (auto v : vs)
                                            s += " " + vertex_name(v);
                                        return s;
                                    }() + " } blocking " + describe(art.instance, p);
                                break;
                            }
                    }
                }
        auto took = elapsed(start);

        report(5, forward_failures == 0 && took < forward_soundness_limit,
            "certificates verify for every independent set, n <= 4",
            std::to_string(runs) + " certificates, " + std::to_string(forward_failures) + " failed"
                + (first_failure.empty() ? "" : " (first " + first_failure + ")") + ", " + std::to_string(took.count())
                + " ms");

        auto line = [&](StageBoundary::Kind k, const char * name) {
            return std::string(name) + " " + std::to_string(tally.violated[k]) + "/" + std::to_string(tally.checked[k]);
        };
        std::size_t violated = 0;
        for (auto [k, count] : tally.violated)
            violated += count;
        report(6, violated == 0, "stage-boundary laws at certificate prefixes",
            "violations: " + line(StageBoundary::Kind::after_s_stage, "S-stage") + ", "
                + line(StageBoundary::Kind::after_t_stage, "T-stage") + ", "
                + line(StageBoundary::Kind::after_edge, "edge") + (tally.first.empty() ? "" : "; first: " + tally.first));
    }

    void criterion_7()
    {
        auto start = Clock::now();
        std::size_t cases = 0, wrong = 0, inconclusive = 0, largest = 0;
        std::string first;
        for (std::size_t n = 1; n <= backward_max_n; ++n)
            for (auto g : all_graphs(n))
                for (std::size_t k = 0; k <= n; ++k) {
                    g.k = k;
                    auto art = reduce(g);
                    auto v = search(art.instance, art.m0, backward_budget);
                    bool yes = oracles::brute_force_independent_set(g).has_value();
                    ++cases;
                    largest = std::max(largest, v.explored);
                    if (v.kind == VerdictKind::inconclusive)
                        ++inconclusive;
                    else if ((v.kind == VerdictKind::reachable_stable) != yes)
                        ++wrong;
                    else
                        continue;
                    if (first.empty())
                        first = graph_text(g) + " " + std::string(to_string(v.kind));
                }
        report(7, wrong == 0 && inconclusive == 0, "search decides every reduced instance, n <= 3",
            std::to_string(cases) + " cases, " + std::to_string(wrong) + " wrong, " + std::to_string(inconclusive)
                + " inconclusive, largest explored " + std::to_string(largest) + ", "
                + std::to_string(elapsed(start).count()) + " ms" + (first.empty() ? "" : "; first: " + first));
    }

    struct CorpusEntry
    {
        Instance instance;
        Matching m0;
    };

    auto corpus() -> std::vector<CorpusEntry>
    {
        std::mt19937_64 rng(corpus_seed);
        const double densities[] = {1.0, 0.75, 0.5};
        std::vector<CorpusEntry> out;
        for (int i = 0; i < corpus_size; ++i) {
            auto in = random_instance(rng, corpus_max_side, densities[i % 3]);
            auto m0 = random_matching(rng, in);
            out.push_back({std::move(in), std::move(m0)});
        }
        return out;
    }

    void criterion_8(const std::vector<CorpusEntry> & entries)
    {
        std::size_t agree = 0, reachable = 0;
        std::string first;
        for (const auto & e : entries) {
            auto v = search(e.instance, e.m0);
            auto o = oracles::exhaustive_reachability(e.instance, e.m0);
            if (v.kind == o.kind && o.kind != VerdictKind::inconclusive)
                ++agree;
            else if (first.empty())
                first = describe(e.instance, e.m0);
            reachable += v.kind == VerdictKind::reachable_stable;
        }
        report(8, agree == entries.size(), "search agrees with exhaustive oracle on random SMTI",
            std::to_string(agree) + "/" + std::to_string(entries.size()) + " agree, " + std::to_string(reachable)
                + " reachable" + (first.empty() ? "" : "; first disagreement at " + first));
    }

    void criterion_9(const std::vector<CorpusEntry> & entries)
    {
        std::size_t stable_not_sink = 0, complete_sink_not_stable = 0, complete = 0, nodes = 0;
        for (const auto & e : entries) {
            GraphOptions opts;
            opts.on_transition = invariants.observer(e.instance);
            auto g = build_divorce_graph(e.instance, std::nullopt, opts);
            nodes += g.size();
            complete += e.instance.complete();
            for (std::size_t i = 0; i < g.size(); ++i) {
                if (g.stable(i) && ! g.arcs(i).empty())
                    ++stable_not_sink;
                if (e.instance.complete() && g.arcs(i).empty() && ! g.stable(i))
                    ++complete_sink_not_stable;
            }
        }

        auto in = parse_instance(fixture("nonstable_sink.smi"));
        auto m = parse_matching(in, fixture("nonstable_sink.match"));
        auto g = build_divorce_graph(in, std::nullopt);
        auto idx = g.find(m);
        bool fixture_ok = idx && g.arcs(*idx).empty() && ! g.stable(*idx) && ! in.complete();

        report(9, stable_not_sink == 0 && complete_sink_not_stable == 0 && fixture_ok,
            "stable => sink; sink => stable when complete; incomplete fixture has a non-stable sink",
            std::to_string(nodes) + " nodes over " + std::to_string(entries.size()) + " instances (" + std::to_string(complete)
                + " complete), " + std::to_string(stable_not_sink) + " stable non-sinks, "
                + std::to_string(complete_sink_not_stable) + " unstable complete sinks, fixture "
                + (fixture_ok ? "ok" : "NOT ok"));
    }

    void criterion_10()
    {
        report(10, invariants.violations == 0 && invariants.transitions > 0, "transition invariants and witness re-verification",
            std::to_string(invariants.transitions) + " transitions, " + std::to_string(invariants.witnesses)
                + " witnesses, " + std::to_string(invariants.violations) + " violations"
                + (invariants.first.empty() ? "" : "; first: " + invariants.first));
    }
}

int main()
{
    try {
        criterion_1();
        criterion_2();
        criterion_3();
        criterion_4();
        criteria_5_and_6();
        criterion_7();
        auto entries = corpus();
        criterion_8(entries);
        criterion_9(entries);
        criterion_10();
    }
    catch (const std::exception & e) {
        std::cout << "acceptance aborted: " << e.what() << std::endl;
        return 2;
    }
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
