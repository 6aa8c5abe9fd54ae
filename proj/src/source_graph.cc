#include <divorce/errors.hh>
#include <divorce/source_graph.hh>

#include <algorithm>
#include <charconv>
#include <optional>
#include <set>
#include <sstream>

using std::size_t;
using std::string;
using std::string_view;

namespace divorce
{
    void SourceGraph::validate() const
    {
        if (k > n)
            throw ValidationError("k = " + std::to_string(k) + " exceeds n = " + std::to_string(n));
        std::set<std::pair<size_t, size_t>> seen;
        for (auto [a, b] : edges) {
            if (a >= n || b >= n)
                throw ValidationError("edge " + vertex_name(a) + " " + vertex_name(b) + " leaves the vertex range");
            if (a == b)
                throw ValidationError("self-loop at " + vertex_name(a));
            if (! seen.emplace(std::min(a, b), std::max(a, b)).second)
                throw ValidationError("duplicate edge " + vertex_name(a) + " " + vertex_name(b));
        }
    }

    auto SourceGraph::adjacent(size_t a, size_t b) const -> bool
    {
        return std::any_of(edges.begin(), edges.end(), [&](auto e) {
            return (e.first == a && e.second == b) || (e.first == b && e.second == a);
        });
    }

    namespace
    {
        auto parse_number(string_view token, size_t line, size_t column) -> size_t
        {
            size_t value = 0;
            auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
            if (ec != std::errc() || end != token.data() + token.size())
                throw ParseError(line, column, "expected a non-negative integer, found '" + string(token) + "'");
            return value;
        }
    }

    auto parse_source_graph(string_view text) -> SourceGraph
    {
        SourceGraph g;
        std::optional<size_t> n, k;
        std::istringstream in{string(text)};
        string raw;
        size_t number = 0;
        while (std::getline(in, raw)) {
            ++number;
            if (auto hash = raw.find('#'); hash != string::npos)
                raw.erase(hash);
            std::istringstream words(raw);
            string keyword;
            if (! (words >> keyword))
                continue;
            auto column = raw.find(keyword) + 1;
            std::vector<string> args;
            for (string w; words >> w;)
                args.push_back(w);

            auto arg = [&](size_t i) { return parse_number(args[i], number, raw.find(args[i], column) + 1); };

            if (keyword == "n" || keyword == "k") {
                if (args.size() != 1)
                    throw ParseError(number, column, "expected '" + keyword + " <int>'");
                auto & slot = keyword == "n" ? n : k;
                if (slot)
                    throw ParseError(number, column, "'" + keyword + "' given twice");
                slot = arg(0);
            }
            else if (keyword == "edge") {
                if (args.size() != 2)
                    throw ParseError(number, column, "expected 'edge <i> <j>'");
                auto a = arg(0), b = arg(1);
                if (a == 0 || b == 0)
                    throw ParseError(number, column, "vertices are numbered from 1");
                g.edges.emplace_back(std::min(a, b) - 1, std::max(a, b) - 1);
            }
            else
                throw ParseError(number, column, "unknown keyword '" + keyword + "'");
        }
        if (! n)
            throw ParseError(number, 0, "missing 'n' line");
        if (! k)
            throw ParseError(number, 0, "missing 'k' line");
        g.n = *n;
        g.k = *k;
        g.validate();
        return g;
    }

    auto serialize_source_graph(const SourceGraph & g) -> string
    {
        std::ostringstream out;
        out << "n " << g.n << "\nk " << g.k << "\n";
        for (auto [a, b] : g.edges)
            out << "edge " << a + 1 << " " << b + 1 << "\n";
        return out.str();
    }

    auto is_independent(const SourceGraph & g, std::span<const size_t> vertices) -> bool
    {
        for (size_t i = 0; i < vertices.size(); ++i)
            for (size_t j = i + 1; j < vertices.size(); ++j)
                if (vertices[i] == vertices[j] || g.adjacent(vertices[i], vertices[j]))
                    return false;
        return true;
    }

    auto vertex_name(size_t v) -> string
    {
        return "v_" + std::to_string(v + 1);
    }

    auto parse_vertex(string_view token, size_t n) -> size_t
    {
        auto digits = token;
        if (digits.starts_with("v_"))
            digits.remove_prefix(2);
        else if (digits.starts_with("v"))
            digits.remove_prefix(1);
        size_t value = 0;
        auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
        if (digits.empty() || ec != std::errc() || end != digits.data() + digits.size() || value == 0 || value > n)
            throw ValidationError("'" + string(token) + "' is not a vertex of the graph (expected v1..v" + std::to_string(n) + ")");
        return value - 1;
    }
}
