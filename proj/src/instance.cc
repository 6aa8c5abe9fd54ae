#include <divorce/instance.hh>

#include <algorithm>
#include <sstream>

using std::optional;
using std::size_t;
using std::string;
using std::string_view;
using std::vector;

namespace divorce
{
    ParseError::ParseError(size_t line, size_t column, const string & what) :
        std::runtime_error("line " + std::to_string(line) + (column ? ", column " + std::to_string(column) : "") + ": " + what),
        _line(line),
        _column(column)
    {
    }

    auto to_string(Side s) -> string_view
    {
        return s == Side::left ? "LEFT" : "RIGHT";
    }

    auto to_string(Preference p) -> string_view
    {
        switch (p) {
            case Preference::prefers_a: return "PREFERS_A";
            case Preference::tied: return "TIED";
            case Preference::prefers_b: return "PREFERS_B";
            case Preference::incomparable: return "INCOMPARABLE";
        }
        return "?";
    }

    auto valid_agent_name(string_view name) -> bool
    {
        if (name.empty())
            return false;
        return std::all_of(name.begin(), name.end(), [](char c) {
            return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' || c == '^'
                || c == '{' || c == '}';
        });
    }

    Instance::Instance(vector<string> left_names, vector<string> right_names, vector<PreferenceList> left_prefs,
        vector<PreferenceList> right_prefs) :
        _names{std::move(left_names), std::move(right_names)},
        _prefs{std::move(left_prefs), std::move(right_prefs)}
    {
        for (auto side : {Side::left, Side::right}) {
            auto s = idx(side);
            if (_prefs[s].size() != _names[s].size())
                throw ValidationError("side " + string(to_string(side)) + " has " + std::to_string(_names[s].size())
                    + " agents but " + std::to_string(_prefs[s].size()) + " preference lists");
            for (AgentIndex i = 0; i < _names[s].size(); ++i) {
                const auto & n = _names[s][i];
                if (! valid_agent_name(n))
                    throw ValidationError("invalid agent name '" + n + "'");
                if (! _by_name.emplace(n, AgentId{side, i}).second)
                    throw ValidationError("duplicate agent name '" + n + "'");
            }
        }

        for (auto side : {Side::left, Side::right}) {
            auto s = idx(side);
            auto other = size(opposite(side));
            _rank[s].assign(size(side) * other, -1);
            for (AgentIndex i = 0; i < size(side); ++i) {
                const auto & tiers = _prefs[s][i];
                for (size_t t = 0; t < tiers.size(); ++t) {
                    if (tiers[t].empty())
                        throw ValidationError("agent '" + _names[s][i] + "' has an empty tier");
                    for (auto j : tiers[t]) {
                        if (j >= other)
                            throw ValidationError("agent '" + _names[s][i] + "' lists an agent outside the opposite side");
                        auto & cell = _rank[s][size_t(i) * other + j];
                        if (cell != -1)
                            throw ValidationError("agent '" + _names[s][i] + "' lists '" + _names[idx(opposite(side))][j]
                                + "' more than once");
                        cell = std::int32_t(t);
                    }
                }
            }
        }

        for (AgentIndex u = 0; u < size(Side::left); ++u)
            for (AgentIndex w = 0; w < size(Side::right); ++w) {
                bool lw = rank(Side::left, u, w) >= 0, wl = rank(Side::right, w, u) >= 0;
                if (lw != wl) {
                    const auto & [who, whom] = lw ? std::pair{_names[0][u], _names[1][w]} : std::pair{_names[1][w], _names[0][u]};
                    throw ValidationError("acceptability is not mutual: '" + who + "' lists '" + whom
                        + "' but not the other way round");
                }
            }
    }

    auto Instance::name(AgentId a) const -> const string &
    {
        if (! contains(a))
            throw ValidationError("no agent with index " + std::to_string(a.index) + " on side " + string(to_string(a.side)));
        return _names[idx(a.side)][a.index];
    }

    auto Instance::find(string_view name) const -> optional<AgentId>
    {
        auto it = _by_name.find(string(name));
        if (it == _by_name.end())
            return std::nullopt;
        return it->second;
    }

    auto Instance::lookup(string_view name) const -> AgentId
    {
        if (auto a = find(name))
            return *a;
        throw ValidationError("unknown agent '" + string(name) + "'");
    }

    auto Instance::preferences(AgentId a) const -> const PreferenceList &
    {
        if (! contains(a))
            throw ValidationError("no agent with index " + std::to_string(a.index) + " on side " + string(to_string(a.side)));
        return _prefs[idx(a.side)][a.index];
    }

    auto Instance::complete() const -> bool
    {
        return std::all_of(_rank[0].begin(), _rank[0].end(), [](auto r) { return r >= 0; });
    }

    auto Instance::strict() const -> bool
    {
        for (const auto & side : _prefs)
            for (const auto & list : side)
                for (const auto & tier : list)
                    if (tier.size() > 1)
                        return false;
        return true;
    }

    auto make_pair(const Instance & instance, AgentId a, AgentId b) -> AgentPair
    {
        if (! instance.contains(a) || ! instance.contains(b))
            throw ValidationError("pair references an agent outside the instance");
        if (a.side == b.side)
            throw ValidationError("'" + instance.name(a) + "' and '" + instance.name(b) + "' are on the same side");
        return a.side == Side::left ? AgentPair{a.index, b.index} : AgentPair{b.index, a.index};
    }

    auto compare(const Instance & instance, AgentId who, AgentId a, AgentId b) -> Preference
    {
        for (auto x : {who, a, b})
            if (! instance.contains(x))
                throw ValidationError("compare references an agent outside the instance");
        if (a.side == who.side || b.side == who.side)
            throw ValidationError("compare needs agents from the side opposite to '" + instance.name(who) + "'");

        auto ra = instance.rank(who.side, who.index, a.index);
        auto rb = instance.rank(who.side, who.index, b.index);
        if (ra < 0 || rb < 0)
            return Preference::incomparable;
        if (ra < rb)
            return Preference::prefers_a;
        if (rb < ra)
            return Preference::prefers_b;
        return Preference::tied;
    }

    Matching::Matching(const Instance & instance) :
        _left(instance.size(Side::left), unmatched),
        _right(instance.size(Side::right), unmatched)
    {
    }

    auto Matching::from_pairs(const Instance & instance, std::span<const AgentPair> pairs) -> Matching
    {
        Matching m(instance);
        for (auto p : pairs) {
            if (p.left >= m._left.size() || p.right >= m._right.size())
                throw ValidationError("pair references an agent outside the instance");
            if (! instance.acceptable(p))
                throw ValidationError("pair " + describe(instance, p) + " is not mutually acceptable");
            if (m._left[p.left] != unmatched || m._right[p.right] != unmatched)
                throw ValidationError("pair " + describe(instance, p) + " shares an agent with another pair");
            m._left[p.left] = p.right;
            m._right[p.right] = p.left;
        }
        return m;
    }

    auto Matching::from_partners(const Instance & instance, vector<AgentIndex> left_partner) -> Matching
    {
        if (left_partner.size() != instance.size(Side::left))
            throw ValidationError("partner vector has the wrong length");
        Matching m;
        m._left = std::move(left_partner);
        m._right.assign(instance.size(Side::right), unmatched);
        for (AgentIndex u = 0; u < m._left.size(); ++u) {
            auto w = m._left[u];
            if (w == unmatched)
                continue;
            if (w >= m._right.size() || ! instance.acceptable({u, w}))
                throw ValidationError("partner vector pairs '" + instance.name(Side::left, u) + "' with an unacceptable agent");
            if (m._right[w] != unmatched)
                throw ValidationError("partner vector is not injective");
            m._right[w] = u;
        }
        return m;
    }

    auto Matching::partner(AgentId a) const -> optional<AgentIndex>
    {
        const auto & v = a.side == Side::left ? _left : _right;
        if (a.index >= v.size() || v[a.index] == unmatched)
            return std::nullopt;
        return v[a.index];
    }

    auto Matching::pairs() const -> vector<AgentPair>
    {
        vector<AgentPair> result;
        for (AgentIndex u = 0; u < _left.size(); ++u)
            if (_left[u] != unmatched)
                result.push_back({u, _left[u]});
        return result;
    }

    auto Matching::pair_count() const -> size_t
    {
        return size_t(std::count_if(_left.begin(), _left.end(), [](auto w) { return w != unmatched; }));
    }

    auto Matching::perfect() const -> bool
    {
        auto matched = [](auto x) { return x != unmatched; };
        return std::all_of(_left.begin(), _left.end(), matched) && std::all_of(_right.begin(), _right.end(), matched);
    }

    auto is_matching(const Instance & instance, std::span<const AgentPair> pairs) -> bool
    {
        vector<bool> left_used(instance.size(Side::left)), right_used(instance.size(Side::right));
        for (auto p : pairs) {
            if (p.left >= left_used.size() || p.right >= right_used.size())
                return false;
            if (! instance.acceptable(p) || left_used[p.left] || right_used[p.right])
                return false;
            left_used[p.left] = right_used[p.right] = true;
        }
        return true;
    }

    auto CanonicalKey::hash() const -> size_t
    {
        // FNV-1a over the 16-bit codes
        std::uint64_t h = 14695981039346656037ull;
        for (auto c : _code) {
            h ^= c;
            h *= 1099511628211ull;
        }
        return size_t(h);
    }

    auto canonical_key(const Instance & instance, const Matching & m) -> CanonicalKey
    {
        if (instance.size(Side::right) >= 0xffff)
            throw GuardExceeded("canonical keys support fewer than 65535 right agents");
        vector<std::uint16_t> code;
        code.reserve(m.left_partners().size());
        for (auto w : m.left_partners())
            code.push_back(w == unmatched ? std::uint16_t(0xffff) : std::uint16_t(w));
        return CanonicalKey(std::move(code));
    }

    auto matching_from_key(const Instance & instance, const CanonicalKey & key) -> Matching
    {
        vector<AgentIndex> partners;
        partners.reserve(key.code().size());
        for (auto c : key.code())
            partners.push_back(c == 0xffff ? unmatched : AgentIndex(c));
        return Matching::from_partners(instance, std::move(partners));
    }

    auto describe(const Instance & instance, AgentPair p) -> string
    {
        return instance.name(Side::left, p.left) + "-" + instance.name(Side::right, p.right);
    }

    auto describe(const Instance & instance, const Matching & m) -> string
    {
        auto pairs = m.pairs();
        if (pairs.empty())
            return "(empty)";
        std::ostringstream out;
        for (size_t i = 0; i < pairs.size(); ++i)
            out << (i ? " " : "") << describe(instance, pairs[i]);
        return out.str();
    }
}
