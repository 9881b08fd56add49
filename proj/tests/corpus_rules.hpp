#pragma once

#include <map>
#include <string>
#include <vector>

// The nine substitutions of the line, in table order.
struct LineExample {
    const char* name;
    std::map<std::string, std::string> rules;
    const char* k0;
};

inline const std::vector<LineExample>& line_examples()
{
    static const std::vector<LineExample> v = {
        {"Fibonacci", {{"a", "ab"}, {"b", "a"}}, "Z^2"},
        {"Morse", {{"a", "ab"}, {"b", "ba"}}, "Z + Z[1/2]"},
        {"Nonreducible 4 letter", {{"a", "aad"}, {"b", "cd"}, {"c", "cb"}, {"d", "ab"}}, "Z^5"},
        {"Period doubling", {{"a", "bb"}, {"b", "ba"}}, "Z + Z[1/2]"},
        {"Rauzy", {{"a", "ab"}, {"b", "ac"}, {"c", "a"}}, "Z^3"},
        {"Rudin-Shapiro", {{"a", "ab"}, {"b", "ac"}, {"c", "db"}, {"d", "dc"}}, "Z + Z[1/2]^3"},
        {"OneFifth", {{"a", "aba"}, {"b", "bbab"}}, "Z[1/5]^2"},
        {"OneSixth", {{"a", "bbaaab"}, {"b", "bbab"}}, "Z[1/6]^2"},
        {"Pathologic", {{"a", "babbaaa"}, {"b", "abbbbb"}}, "Z + lim[[3,1],[1,6]]"},
    };
    return v;
}

inline std::vector<std::string> letters_of(const std::map<std::string, std::string>& rules)
{
    std::vector<std::string> out;
    for (const auto& [k, v] : rules) out.push_back(k);
    return out;
}

using BlockRules = std::map<std::string, std::vector<std::vector<std::string>>>;

inline const BlockRules& trisquare_rules()
{
    static const BlockRules r = {{"a", {{"c", "b"}, {"b", "c"}}}, {"b", {{"a", "b"}, {"b", "a"}}}, {"c", {{"c", "a"}, {"a", "c"}}}};
    return r;
}

inline const BlockRules& table_rules()
{
    static const BlockRules r = {{"a", {{"c", "a"}, {"d", "a"}}},
                                 {"b", {{"b", "c"}, {"b", "d"}}},
                                 {"c", {{"a", "b"}, {"c", "c"}}},
                                 {"d", {{"d", "d"}, {"a", "b"}}}};
    return r;
}
