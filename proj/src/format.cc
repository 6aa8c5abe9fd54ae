#include <divorce/format.hh>

#include <fstream>
#include <map>
#include <optional>
#include <sstream>

using nlohmann::json;
using std::optional;
using std::size_t;
using std::string;
using std::string_view;
using std::vector;

namespace divorce
{
    namespace
    {
        struct Token
        {
            string_view text;
            size_t column; // 1-based
        };

        struct Line
        {
            size_t number;
            string_view content; // comment stripped
        };

        auto split_lines(string_view text) -> vector<Line>
        {
            vector<Line> result;
            size_t number = 0, start = 0;
            while (start <= text.size()) {
                auto end = text.find('\n', start);
                if (end == string_view::npos)
                    end = text.size();
                ++number;
                auto line = text.substr(start, end - start);
                if (! line.empty() && line.back() == '\r')
                    line.remove_suffix(1);
                if (auto hash = line.find('#'); hash != string_view::npos)
                    line = line.substr(0, hash);
                result.push_back({number, line});
                if (end == text.size())
                    break;
                start = end + 1;
            }
            return result;
        }

        auto tokenize(string_view line, size_t offset) -> vector<Token>
        {
            vector<Token> tokens;
            size_t i = 0;
            while (i < line.size()) {
                if (line[i] == ' ' || line[i] == '\t') {
                    ++i;
                    continue;
                }
                if (line[i] == '|' || line[i] == ':') {
                    tokens.push_back({line.substr(i, 1), offset + i + 1});
                    ++i;
                    continue;
                }
                auto j = i;
                while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '|' && line[j] != ':')
                    ++j;
                tokens.push_back({line.substr(i, j - i), offset + i + 1});
                i = j;
            }
            return tokens;
        }

        auto blank(string_view s) -> bool
        {
            return s.find_first_not_of(" \t") == string_view::npos;
        }

        void expect_name(const Line & line, const Token & t)
        {
            if (! valid_agent_name(t.text))
                throw ParseError(line.number, t.column, "invalid agent name '" + string(t.text) + "'");
        }

        struct RawPref
        {
            size_t line;
            Token owner;
            vector<vector<Token>> tiers;
        };

        auto resolve_pair(const Instance & instance, const Line & line, const Token & a, const Token & b) -> AgentPair
        {
            auto ia = instance.find(a.text), ib = instance.find(b.text);
            if (! ia)
                throw ValidationError("line " + std::to_string(line.number) + ": unknown agent '" + string(a.text) + "'");
            if (! ib)
                throw ValidationError("line " + std::to_string(line.number) + ": unknown agent '" + string(b.text) + "'");
            if (ia->side == ib->side)
                throw ValidationError("line " + std::to_string(line.number) + ": '" + string(a.text) + "' and '"
                    + string(b.text) + "' are on the same side");
            return make_pair(instance, *ia, *ib);
        }
    }

    auto parse_instance(string_view text) -> Instance
    {
        optional<vector<Token>> sides[2];
        size_t side_line[2] = {0, 0};
        vector<RawPref> prefs;

        for (const auto & line : split_lines(text)) {
            if (blank(line.content))
                continue;
            auto tokens = tokenize(line.content, 0);
            const auto & keyword = tokens.front();

            if (keyword.text == "side") {
                if (tokens.size() < 3 || tokens[2].text != ":")
                    throw ParseError(line.number, keyword.column, "expected 'side LEFT:' or 'side RIGHT:'");
                int s;
                if (tokens[1].text == "LEFT")
                    s = 0;
                else if (tokens[1].text == "RIGHT")
                    s = 1;
                else
                    throw ParseError(line.number, tokens[1].column, "side must be LEFT or RIGHT, not '" + string(tokens[1].text) + "'");
                if (sides[s])
                    throw ParseError(line.number, keyword.column, "side " + string(tokens[1].text) + " declared twice");
                sides[s].emplace();
                side_line[s] = line.number;
                for (size_t i = 3; i < tokens.size(); ++i) {
                    expect_name(line, tokens[i]);
                    sides[s]->push_back(tokens[i]);
                }
            }
            else if (keyword.text == "pref") {
                if (tokens.size() < 3 || tokens[2].text != ":")
                    throw ParseError(line.number, keyword.column, "expected 'pref <name>:'");
                expect_name(line, tokens[1]);
                RawPref pref{line.number, tokens[1], {}};
                vector<Token> tier;
                bool any = false;
                for (size_t i = 3; i < tokens.size(); ++i) {
                    if (tokens[i].text == "|") {
                        if (tier.empty())
                            throw ParseError(line.number, tokens[i].column, "empty tier");
                        pref.tiers.push_back(std::move(tier));
                        tier.clear();
                    }
                    else if (tokens[i].text == ":")
                        throw ParseError(line.number, tokens[i].column, "unexpected ':'");
                    else {
                        expect_name(line, tokens[i]);
                        tier.push_back(tokens[i]);
                    }
                    any = true;
                }
                if (tier.empty() && any)
                    throw ParseError(line.number, tokens.back().column, "empty tier");
                if (! tier.empty())
                    pref.tiers.push_back(std::move(tier));
                prefs.push_back(std::move(pref));
            }
            else
                throw ParseError(line.number, keyword.column, "unknown keyword '" + string(keyword.text) + "'");
        }

        vector<string> names[2];
        std::map<string, AgentId, std::less<>> by_name;
        for (int s = 0; s < 2; ++s) {
            if (! sides[s])
                continue;
            for (const auto & t : *sides[s]) {
                auto id = AgentId{s == 0 ? Side::left : Side::right, AgentIndex(names[s].size())};
                if (! by_name.emplace(string(t.text), id).second)
                    throw ValidationError("line " + std::to_string(side_line[s]) + ": duplicate agent name '" + string(t.text) + "'");
                names[s].emplace_back(t.text);
            }
        }

        vector<PreferenceList> lists[2] = {vector<PreferenceList>(names[0].size()), vector<PreferenceList>(names[1].size())};
        vector<bool> seen[2] = {vector<bool>(names[0].size()), vector<bool>(names[1].size())};
        for (const auto & pref : prefs) {
            auto owner = by_name.find(pref.owner.text);
            if (owner == by_name.end())
                throw ValidationError("line " + std::to_string(pref.line) + ": unknown agent '" + string(pref.owner.text) + "'");
            auto [side, index] = owner->second;
            int s = side == Side::left ? 0 : 1;
            if (seen[s][index])
                throw ValidationError("line " + std::to_string(pref.line) + ": second preference list for '" + string(pref.owner.text) + "'");
            seen[s][index] = true;
            for (const auto & tier : pref.tiers) {
                Tier resolved;
                for (const auto & t : tier) {
                    auto it = by_name.find(t.text);
                    if (it == by_name.end())
                        throw ValidationError("line " + std::to_string(pref.line) + ": unknown agent '" + string(t.text) + "'");
                    if (it->second.side == side)
                        throw ValidationError("line " + std::to_string(pref.line) + ": '" + string(pref.owner.text)
                            + "' lists '" + string(t.text) + "' from its own side");
                    resolved.push_back(it->second.index);
                }
                lists[s][index].push_back(std::move(resolved));
            }
        }

        return Instance(std::move(names[0]), std::move(names[1]), std::move(lists[0]), std::move(lists[1]));
    }

    auto serialize_instance(const Instance & instance) -> string
    {
        std::ostringstream out;
        for (auto side : {Side::left, Side::right}) {
            out << "side " << to_string(side) << ":";
            for (const auto & n : instance.names(side))
                out << ' ' << n;
            out << '\n';
        }
        for (auto side : {Side::left, Side::right})
            for (AgentIndex i = 0; i < instance.size(side); ++i) {
                out << "pref " << instance.name(side, i) << ":";
                const auto & tiers = instance.preferences({side, i});
                for (size_t t = 0; t < tiers.size(); ++t) {
                    if (t)
                        out << " |";
                    for (auto j : tiers[t])
                        out << ' ' << instance.name(opposite(side), j);
                }
                out << '\n';
            }
        return out.str();
    }

    auto parse_pair_lines(const Instance & instance, string_view text, string_view keyword) -> vector<AgentPair>
    {
        vector<AgentPair> result;
        for (const auto & line : split_lines(text)) {
            if (blank(line.content))
                continue;
            auto tokens = tokenize(line.content, 0);
            if (tokens.front().text != keyword)
                throw ParseError(line.number, tokens.front().column,
                    "expected '" + string(keyword) + "', found '" + string(tokens.front().text) + "'");
            if (tokens.size() != 3)
                throw ParseError(line.number, tokens.front().column, "expected '" + string(keyword) + " <name> <name>'");
            expect_name(line, tokens[1]);
            expect_name(line, tokens[2]);
            result.push_back(resolve_pair(instance, line, tokens[1], tokens[2]));
        }
        return result;
    }

    auto parse_matching(const Instance & instance, string_view text) -> Matching
    {
        auto pairs = parse_pair_lines(instance, text, "pair");
        return Matching::from_pairs(instance, pairs);
    }

    auto serialize_matching(const Instance & instance, const Matching & m) -> string
    {
        string out;
        for (auto p : m.pairs())
            out += "pair " + instance.name(Side::left, p.left) + " " + instance.name(Side::right, p.right) + "\n";
        return out;
    }

    auto parse_certificate(const Instance & instance, string_view text) -> vector<AgentPair>
    {
        return parse_pair_lines(instance, text, "step");
    }

    auto serialize_certificate(const Instance & instance, const vector<AgentPair> & steps) -> string
    {
        string out;
        for (auto p : steps)
            out += "step " + instance.name(Side::left, p.left) + " " + instance.name(Side::right, p.right) + "\n";
        return out;
    }

    auto instance_to_json(const Instance & instance) -> json
    {
        json prefs = json::object();
        for (auto side : {Side::left, Side::right})
            for (AgentIndex i = 0; i < instance.size(side); ++i) {
                json tiers = json::array();
                for (const auto & tier : instance.preferences({side, i})) {
                    json names = json::array();
                    for (auto j : tier)
                        names.push_back(instance.name(opposite(side), j));
                    tiers.push_back(std::move(names));
                }
                prefs[instance.name(side, i)] = std::move(tiers);
            }
        return json{{"sides", {{"LEFT", instance.names(Side::left)}, {"RIGHT", instance.names(Side::right)}}}, {"prefs", prefs}};
    }

    auto instance_from_json(const json & j) -> Instance
    {
        try {
            vector<string> names[2] = {j.at("sides").at("LEFT").get<vector<string>>(), j.at("sides").at("RIGHT").get<vector<string>>()};
            std::map<string, AgentIndex> index[2];
            for (int s = 0; s < 2; ++s)
                for (AgentIndex i = 0; i < names[s].size(); ++i)
                    index[s].emplace(names[s][i], i);

            vector<PreferenceList> lists[2] = {vector<PreferenceList>(names[0].size()), vector<PreferenceList>(names[1].size())};
            const auto & prefs = j.at("prefs");
            for (int s = 0; s < 2; ++s)
                for (AgentIndex i = 0; i < names[s].size(); ++i) {
                    auto it = prefs.find(names[s][i]);
                    if (it == prefs.end())
                        continue;
                    for (const auto & tier : *it) {
                        Tier resolved;
                        for (const auto & n : tier) {
                            auto found = index[1 - s].find(n.get<string>());
                            if (found == index[1 - s].end())
                                throw ValidationError("'" + names[s][i] + "' lists unknown or same-side agent '" + n.get<string>() + "'");
                            resolved.push_back(found->second);
                        }
                        lists[s][i].push_back(std::move(resolved));
                    }
                }
            return Instance(std::move(names[0]), std::move(names[1]), std::move(lists[0]), std::move(lists[1]));
        }
        catch (const json::exception & e) {
            throw ValidationError(string("malformed instance JSON: ") + e.what());
        }
    }

    auto pairs_to_json(const Instance & instance, const vector<AgentPair> & pairs) -> json
    {
        json result = json::array();
        for (auto p : pairs)
            result.push_back({instance.name(Side::left, p.left), instance.name(Side::right, p.right)});
        return result;
    }

    auto matching_to_json(const Instance & instance, const Matching & m) -> json
    {
        return json{{"pairs", pairs_to_json(instance, m.pairs())}};
    }

    auto read_file(const std::filesystem::path & path) -> string
    {
        std::ifstream in(path, std::ios::binary);
        if (! in)
            throw std::runtime_error("cannot open '" + path.string() + "'");
        std::ostringstream buffer;
        buffer << in.rdbuf();
        return buffer.str();
    }

    void write_file(const std::filesystem::path & path, string_view content)
    {
        std::ofstream out(path, std::ios::binary);
        if (! out)
            throw std::runtime_error("cannot write '" + path.string() + "'");
        out << content;
    }
}
