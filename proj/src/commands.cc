#include <divorce/cli.hh>
#include <divorce/dynamics.hh>
#include <divorce/explorer.hh>
#include <divorce/format.hh>
#include <divorce/reduction.hh>

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <sstream>

using nlohmann::json;
using std::size_t;
using std::string;
using std::vector;

namespace divorce::cli
{
    namespace
    {
        struct Options
        {
            string instance_file, matching_file, certificate_file, graph_file, out_dir, out_file, dot_file;
            vector<string> roots, vertices;
            size_t max_nodes = 1'000'000;
            long max_millis = 0;
            unsigned parallel = 1;
            bool json = false, stats = false, strict = false;
        };

        auto rule_of(const Options & o) -> InterchangeRule
        {
            return o.strict ? InterchangeRule::both_matched : InterchangeRule::set_semantics;
        }

        auto pair_list(const Instance & instance, const vector<BlockingPair> & pairs) -> string
        {
            string s;
            for (size_t i = 0; i < pairs.size(); ++i)
                s += (i ? "," : "") + ("{" + instance.name(Side::left, pairs[i].left) + "," + instance.name(Side::right, pairs[i].right) + "}");
            return s;
        }

        auto cmd_check(const Options & o, std::ostream & out) -> int
        {
            auto instance = parse_instance(read_file(o.instance_file));
            auto m = parse_matching(instance, read_file(o.matching_file));
            auto blocking = blocking_pairs(instance, m);

            if (o.json) {
                out << json{{"valid", true}, {"pairs", m.pair_count()}, {"stable", blocking.empty()},
                    {"blocking", pairs_to_json(instance, blocking)}}.dump()
                    << '\n';
            }
            else {
                out << "valid matching with " << m.pair_count() << " pairs\n";
                if (blocking.empty())
                    out << "stable\n";
                else
                    out << "not stable; blocking: " << pair_list(instance, blocking) << '\n';
            }
            return blocking.empty() ? ok : no;
        }

        auto cmd_reach(const Options & o, std::ostream & out, std::ostream & err) -> int
        {
            auto instance = parse_instance(read_file(o.instance_file));
            auto m0 = parse_matching(instance, read_file(o.matching_file));

            SearchOptions options;
            options.budget.max_nodes = o.max_nodes;
            options.budget.max_millis = std::chrono::milliseconds(o.max_millis);
            options.rule = rule_of(o);
            options.workers = std::max(1u, o.parallel);
            auto verdict = reachable_search(instance, m0, options);

            if (o.json) {
                json j{{"kind", to_string(verdict.kind)}, {"witness", nullptr}, {"explored", verdict.explored},
                    {"frontier_peak", verdict.frontier_peak}};
                if (verdict.witness)
                    j["witness"] = pairs_to_json(instance, *verdict.witness);
                out << j.dump() << '\n';
            }
            else {
                out << to_string(verdict.kind) << '\n';
                if (verdict.witness) {
                    out << "witness (" << verdict.witness->size() << " steps):\n";
                    out << serialize_certificate(instance, *verdict.witness);
                }
                out << "explored: " << verdict.explored << '\n';
                out << "frontier peak: " << verdict.frontier_peak << '\n';
            }

            if (! o.dot_file.empty()) {
                try {
                    auto g = build_divorce_graph(instance, vector{m0}, {o.max_nodes, options.rule, {}});
                    DotHighlight highlight;
                    highlight.roots = {0};
                    if (verdict.witness) {
                        highlight.path = trace_path(g, 0, *verdict.witness);
                        highlight.path_pairs = *verdict.witness;
                    }
                    write_file(o.dot_file, export_dot(g, highlight));
                }
                catch (const GuardExceeded & e) {
                    err << "warning: DOT output skipped: " << e.what() << '\n';
                }
            }

            switch (verdict.kind) {
                case VerdictKind::reachable_stable: return ok;
                case VerdictKind::not_reachable: return no;
                case VerdictKind::inconclusive: return inconclusive;
            }
            return inconclusive;
        }

        auto cmd_reduce(const Options & o, std::ostream & out) -> int
        {
            auto graph = parse_source_graph(read_file(o.graph_file));
            auto art = reduce(graph);

            std::filesystem::path dir(o.out_dir);
            std::filesystem::create_directories(dir);
            write_file(dir / "instance.smi", serialize_instance(art.instance));
            write_file(dir / "m0.match", serialize_matching(art.instance, art.m0));
            write_file(dir / "meta.json", meta_to_json(art).dump(2) + "\n");

            out << art.instance.size(Side::left) << " agents per side (4m+2n with n=" << graph.n << ", m=" << graph.edges.size()
                << ", k=" << graph.k << ")\n";
            out << "wrote " << (dir / "instance.smi").string() << ", " << (dir / "m0.match").string() << ", "
                << (dir / "meta.json").string() << '\n';
            return ok;
        }

        auto split_vertices(const vector<string> & raw) -> vector<string>
        {
            vector<string> tokens;
            for (auto s : raw) {
                for (auto & c : s)
                    if (c == ',')
                        c = ' ';
                std::istringstream in(s);
                for (string t; in >> t;)
                    tokens.push_back(t);
            }
            return tokens;
        }

        auto cmd_certify(const Options & o, std::ostream & out) -> int
        {
            auto graph = parse_source_graph(read_file(o.graph_file));
            vector<size_t> vset;
            for (const auto & t : split_vertices(o.vertices))
                vset.push_back(parse_vertex(t, graph.n));

            auto art = reduce(graph);
            auto cert = build_certificate(art, vset);
            auto text = serialize_certificate(art.instance, cert.steps);
            if (! o.out_file.empty())
                write_file(o.out_file, text);
            else
                out << text;

            auto result = verify_sequence(art.instance, art.m0, cert.steps);
            if (auto rejected = std::get_if<Rejection>(&result)) {
                out << "REJECTED at step " << rejected->step << ": " << to_string(rejected->reason) << '\n';
                return no;
            }
            const auto & report = std::get<SequenceReport>(result);
            if (! report.final_stable) {
                out << "NOT stable after " << cert.steps.size() << " steps\n";
                return no;
            }
            out << "VERIFIED stable, length " << cert.steps.size() << '\n';
            return ok;
        }

        auto cmd_verify(const Options & o, std::ostream & out) -> int
        {
            auto instance = parse_instance(read_file(o.instance_file));
            auto m0 = parse_matching(instance, read_file(o.matching_file));
            auto steps = parse_certificate(instance, read_file(o.certificate_file));

            auto result = verify_sequence(instance, m0, steps, rule_of(o));
            if (auto rejected = std::get_if<Rejection>(&result)) {
                out << "rejected at step " << rejected->step << " (" << describe(instance, steps[rejected->step])
                    << "): " << to_string(rejected->reason) << '\n';
                return no;
            }
            const auto & report = std::get<SequenceReport>(result);
            for (size_t i = 0; i < report.steps.size(); ++i) {
                const auto & s = report.steps[i];
                out << "step " << i << ": " << instance.name(Side::left, s.pair.left) << " " << instance.name(Side::right, s.pair.right)
                    << "  [" << describe(instance, matching_from_key(instance, s.before)) << "] -> ["
                    << describe(instance, matching_from_key(instance, s.after)) << "]\n";
            }
            out << "final: " << describe(instance, report.final) << '\n';
            out << (report.final_stable ? "accepted; final matching stable\n" : "accepted; final matching NOT stable\n");
            return report.final_stable ? ok : no;
        }

        auto cmd_atlas(const Options & o, std::ostream & out) -> int
        {
            auto instance = parse_instance(read_file(o.instance_file));
            std::optional<vector<Matching>> roots;
            if (! o.roots.empty()) {
                roots.emplace();
                for (const auto & r : o.roots)
                    roots->push_back(parse_matching(instance, read_file(r)));
            }

            auto g = build_divorce_graph(instance, roots, {o.max_nodes, rule_of(o), {}});
            auto sink_list = sinks(g);
            auto scc = condensation(g);

            size_t with_path = 0, stable_nodes = 0;
            for (size_t i = 0; i < g.size(); ++i) {
                with_path += scc.reaches_stable[scc.component_of[i]];
                stable_nodes += g.stable(i);
            }

            out << "nodes: " << g.size() << '\n';
            out << "arcs: " << g.arc_count() << '\n';
            out << "stable nodes: " << stable_nodes << '\n';
            out << "sinks: " << sink_list.size() << '\n';
            for (auto s : sink_list)
                out << "  " << (g.stable(s) ? "stable     " : "NOT stable ") << describe(instance, g.node(s)) << '\n';
            out << "strongly connected components: " << scc.components.size() << '\n';
            out << "nodes with path to stable: " << with_path << '\n';
            out << "nodes without path to stable: " << g.size() - with_path << '\n';

            if (o.stats) {
                size_t cyclic = 0, largest = 0;
                for (const auto & c : scc.components) {
                    cyclic += c.size() > 1;
                    largest = std::max(largest, c.size());
                }
                size_t perfect = 0;
                for (size_t i = 0; i < g.size(); ++i)
                    perfect += g.node(i).perfect();
                out << "perfect matchings among nodes: " << perfect << '\n';
                out << "components with cycles: " << cyclic << '\n';
                out << "largest component: " << largest << '\n';
                out << "condensation arcs: " << scc.dag_arcs.size() << '\n';
            }

            if (! o.dot_file.empty()) {
                DotHighlight highlight;
                if (roots)
                    for (size_t i = 0; i < roots->size(); ++i)
                        highlight.roots.push_back(*g.find((*roots)[i]));
                write_file(o.dot_file, export_dot(g, highlight));
            }
            return ok;
        }
    }

    auto run(const vector<string> & args, std::ostream & out, std::ostream & err) -> int
    {
        CLI::App app{"Stable-marriage divorce dynamics: blocking pairs, b-interchanges, reachability search, and the "
                     "Independent Set reduction"};
        app.name(args.empty() ? "divorce" : args.front());
        app.require_subcommand(1);

        Options o;
        auto strict_flag = [&](CLI::App * sub) {
            sub->add_flag("--strict-interchange", o.strict, "only allow b-interchanges where both agents are matched");
        };

        auto check = app.add_subcommand("check", "validate a matching and list its blocking pairs (exit 0 iff stable)");
        check->add_option("instance", o.instance_file, "instance file")->required();
        check->add_option("matching", o.matching_file, "matching file")->required();
        check->add_flag("--json", o.json, "JSON output");

        auto reach = app.add_subcommand("reach", "search for a stable matching reachable by b-interchanges");
        reach->add_option("instance", o.instance_file, "instance file")->required();
        reach->add_option("matching", o.matching_file, "initial matching file")->required();
        reach->add_option("--max-nodes", o.max_nodes, "node budget")->capture_default_str();
        reach->add_option("--max-millis", o.max_millis, "time budget in milliseconds, 0 for none")->capture_default_str();
        reach->add_option("--parallel", o.parallel, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);
        reach->add_option("--dot", o.dot_file, "write the reachable divorce graph as DOT");
        reach->add_flag("--json", o.json, "JSON verdict");
        strict_flag(reach);

        auto reduce_cmd = app.add_subcommand("reduce", "build the stable-marriage instance for an Independent Set instance");
        reduce_cmd->add_option("graph", o.graph_file, "graph file")->required();
        reduce_cmd->add_option("--out-dir", o.out_dir, "output directory")->required();

        auto certify = app.add_subcommand("certify", "build and verify the b-interchange certificate for an independent set");
        certify->add_option("graph", o.graph_file, "graph file")->required();
        certify->add_option("vertices", o.vertices, "vertices of the independent set (v1 v2 ...)");
        certify->add_option("--out", o.out_file, "certificate file (default: stdout)");

        auto verify = app.add_subcommand("verify", "replay a b-interchange sequence (exit 0 iff accepted and stable)");
        verify->add_option("instance", o.instance_file, "instance file")->required();
        verify->add_option("matching", o.matching_file, "initial matching file")->required();
        verify->add_option("certificate", o.certificate_file, "certificate file")->required();
        strict_flag(verify);

        auto atlas = app.add_subcommand("atlas", "divorce-graph analytics: sinks, components, reachability of stable nodes");
        atlas->add_option("instance", o.instance_file, "instance file")->required();
        atlas->add_option("--root", o.roots, "restrict to matchings reachable from this matching file (repeatable)");
        atlas->add_option("--dot", o.dot_file, "write the graph as DOT");
        atlas->add_option("--max-nodes", o.max_nodes, "enumeration guard")->capture_default_str();
        atlas->add_flag("--stats", o.stats, "extra component statistics");
        strict_flag(atlas);

        vector<const char *> argv;
        for (const auto & a : args)
            argv.push_back(a.c_str());
        if (argv.empty())
            argv.push_back("divorce");

        try {
            app.parse(int(argv.size()), argv.data());
        }
        catch (const CLI::ParseError & e) {
            auto code = app.exit(e, out, err);
            return code == 0 ? ok : parse_failure;
        }

        try {
            if (check->parsed())
                return cmd_check(o, out);
            if (reach->parsed())
                return cmd_reach(o, out, err);
            if (reduce_cmd->parsed())
                return cmd_reduce(o, out);
            if (certify->parsed())
                return cmd_certify(o, out);
            if (verify->parsed())
                return cmd_verify(o, out);
            if (atlas->parsed())
                return cmd_atlas(o, out);
        }
        catch (const ParseError & e) {
            err << "parse error: " << e.what() << '\n';
            return parse_failure;
        }
        catch (const ValidationError & e) {
            err << "invalid input: " << e.what() << '\n';
            return semantic_failure;
        }
        catch (const GuardExceeded & e) {
            err << "too large: " << e.what() << '\n';
            return guard_exceeded;
        }
        catch (const std::exception & e) {
            err << "error: " << e.what() << '\n';
            return parse_failure;
        }
        return parse_failure;
    }
}
