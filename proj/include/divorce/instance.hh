#pragma once

#include <divorce/errors.hh>

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace divorce
{
    enum class Side : std::uint8_t
    {
        left,
        right
    };

    constexpr auto opposite(Side s) -> Side { return s == Side::left ? Side::right : Side::left; }
    auto to_string(Side s) -> std::string_view;

    using AgentIndex = std::uint32_t;

    inline constexpr AgentIndex unmatched = std::numeric_limits<AgentIndex>::max();

    struct AgentId
    {
        Side side;
        AgentIndex index;

        auto operator<=>(const AgentId &) const = default;
    };

    /// An unordered {left, right} pair, stored with its left member first.
    struct AgentPair
    {
        AgentIndex left;
        AgentIndex right;

        auto operator<=>(const AgentPair &) const = default;
    };

    /// One tie class: indices into the opposite side.
    using Tier = std::vector<AgentIndex>;

    /// Tiers from most to least preferred. Agents in no tier are unacceptable.
    using PreferenceList = std::vector<Tier>;

    /// A two-sided instance with weak-order, possibly incomplete preferences. Validated on
    /// construction and immutable afterwards.
    class Instance
    {
    public:
        Instance() = default;

        /// Throws ValidationError on duplicate or malformed names, out-of-range references,
        /// empty or overlapping tiers, or non-mutual acceptability.
        Instance(std::vector<std::string> left_names, std::vector<std::string> right_names,
            std::vector<PreferenceList> left_prefs, std::vector<PreferenceList> right_prefs);

        auto size(Side s) const -> std::size_t { return _names[idx(s)].size(); }
        auto names(Side s) const -> const std::vector<std::string> & { return _names[idx(s)]; }
        auto name(AgentId a) const -> const std::string &;
        auto name(Side s, AgentIndex i) const -> const std::string & { return name(AgentId{s, i}); }

        auto find(std::string_view name) const -> std::optional<AgentId>;

        /// Throws ValidationError for unknown names.
        auto lookup(std::string_view name) const -> AgentId;

        auto preferences(AgentId a) const -> const PreferenceList &;

        /// Tier index of `other` (on the opposite side) in who's list, or -1 when unacceptable.
        /// No bounds checks; this is the hot path of every blocking test.
        auto rank(Side who_side, AgentIndex who, AgentIndex other) const -> int
        {
            return _rank[idx(who_side)][std::size_t(who) * size(opposite(who_side)) + other];
        }

        auto acceptable(AgentPair p) const -> bool { return rank(Side::left, p.left, p.right) >= 0; }

        auto contains(AgentId a) const -> bool { return a.index < size(a.side); }

        /// True iff every agent finds every agent on the other side acceptable.
        auto complete() const -> bool;

        /// True iff no preference list contains a tier of size > 1.
        auto strict() const -> bool;

        friend auto operator==(const Instance & a, const Instance & b) -> bool
        {
            return a._names == b._names && a._prefs == b._prefs;
        }

    private:
        static constexpr auto idx(Side s) -> std::size_t { return s == Side::left ? 0 : 1; }

        std::array<std::vector<std::string>, 2> _names;
        std::array<std::vector<PreferenceList>, 2> _prefs;
        std::array<std::vector<std::int32_t>, 2> _rank;
        std::unordered_map<std::string, AgentId> _by_name;
    };

    /// True iff `name` matches [A-Za-z0-9_^{}]+.
    auto valid_agent_name(std::string_view name) -> bool;

    /// Orders two opposite-side agents into a pair. Throws ValidationError if both are on the
    /// same side or either is not in the instance.
    auto make_pair(const Instance & instance, AgentId a, AgentId b) -> AgentPair;

    enum class Preference
    {
        prefers_a,
        tied,
        prefers_b,
        incomparable
    };

    auto to_string(Preference p) -> std::string_view;

    /// How `who` ranks a against b. Either being unacceptable gives incomparable. Throws
    /// ValidationError if an agent is missing or a or b is on who's own side.
    auto compare(const Instance & instance, AgentId who, AgentId a, AgentId b) -> Preference;

    /// A set of disjoint, mutually acceptable pairs. Immutable once built.
    class Matching
    {
    public:
        Matching() = default;

        /// The empty matching over the instance's agents.
        explicit Matching(const Instance & instance);

        /// Throws ValidationError unless the pairs form a matching of the instance.
        static auto from_pairs(const Instance & instance, std::span<const AgentPair> pairs) -> Matching;

        /// `left_partner[i]` is the right partner of left agent i, or `unmatched`. Throws
        /// ValidationError on a wrong length, a repeated partner, or an unacceptable pair.
        static auto from_partners(const Instance & instance, std::vector<AgentIndex> left_partner) -> Matching;

        auto partner(Side s, AgentIndex i) const -> AgentIndex { return s == Side::left ? _left[i] : _right[i]; }
        auto partner(AgentId a) const -> std::optional<AgentIndex>;

        auto contains(AgentPair p) const -> bool { return p.left < _left.size() && _left[p.left] == p.right; }

        /// Pairs in ascending left index.
        auto pairs() const -> std::vector<AgentPair>;
        auto pair_count() const -> std::size_t;

        /// Every agent on both sides is matched.
        auto perfect() const -> bool;

        auto left_partners() const -> const std::vector<AgentIndex> & { return _left; }

        friend auto operator==(const Matching & a, const Matching & b) -> bool { return a._left == b._left; }

    private:
        std::vector<AgentIndex> _left, _right;
    };

    /// Total predicate: injective and every pair mutually acceptable (and in range).
    auto is_matching(const Instance & instance, std::span<const AgentPair> pairs) -> bool;

    /// Fixed-length encoding of a matching: one 16-bit partner code per left agent, with
    /// 0xffff for unmatched. Equal keys iff equal pair sets over the same instance.
    class CanonicalKey
    {
    public:
        CanonicalKey() = default;
        explicit CanonicalKey(std::vector<std::uint16_t> code) : _code(std::move(code)) {}

        auto code() const -> const std::vector<std::uint16_t> & { return _code; }
        auto hash() const -> std::size_t;

        auto operator<=>(const CanonicalKey &) const = default;

    private:
        std::vector<std::uint16_t> _code;
    };

    auto canonical_key(const Instance & instance, const Matching & m) -> CanonicalKey;
    auto matching_from_key(const Instance & instance, const CanonicalKey & key) -> Matching;

    /// "u1-w1 u2-w4 ..." in ascending left order; "(empty)" for no pairs.
    auto describe(const Instance & instance, const Matching & m) -> std::string;
    auto describe(const Instance & instance, AgentPair p) -> std::string;
}

template <>
struct std::hash<divorce::CanonicalKey>
{
    auto operator()(const divorce::CanonicalKey & k) const noexcept -> std::size_t { return k.hash(); }
};
