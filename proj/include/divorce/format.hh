#pragma once

#include <divorce/instance.hh>

#include <json.hpp>

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace divorce
{
    // Instance files are line oriented:
    //
    //     side LEFT: u1 u2
    //     side RIGHT: w1 w2
    //     pref u1: w1 | w2        # tiers separated by '|', ties within a tier
    //     pref w1: u1 u2
    //
    // '#' starts a comment, blank lines are ignored, tokens are separated by any run of spaces or
    // tabs. Agents without a pref line find nobody acceptable. Matching files hold one
    // `pair <a> <b>` line per pair and certificates one `step <a> <b>` line per b-interchange;
    // a and b may be given in either side order.

    /// Throws ParseError for syntax problems and ValidationError for semantic ones.
    auto parse_instance(std::string_view text) -> Instance;

    /// Canonical form: both side lines, then one pref line per agent (left side first, in
    /// index order), single spaces, " | " between tiers, trailing newline.
    auto serialize_instance(const Instance & instance) -> std::string;

    auto parse_matching(const Instance & instance, std::string_view text) -> Matching;
    auto serialize_matching(const Instance & instance, const Matching & m) -> std::string;

    /// Lines `<keyword> <a> <b>`. The result is the raw pair sequence; no matching checks.
    auto parse_pair_lines(const Instance & instance, std::string_view text, std::string_view keyword)
        -> std::vector<AgentPair>;

    auto parse_certificate(const Instance & instance, std::string_view text) -> std::vector<AgentPair>;
    auto serialize_certificate(const Instance & instance, const std::vector<AgentPair> & steps) -> std::string;

    auto instance_to_json(const Instance & instance) -> nlohmann::json;
    auto instance_from_json(const nlohmann::json & j) -> Instance;
    auto matching_to_json(const Instance & instance, const Matching & m) -> nlohmann::json;
    auto pairs_to_json(const Instance & instance, const std::vector<AgentPair> & pairs) -> nlohmann::json;

    /// Whole file as a string; throws std::runtime_error if it cannot be opened.
    auto read_file(const std::filesystem::path & path) -> std::string;
    void write_file(const std::filesystem::path & path, std::string_view content);
}
