#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "ocm/money.hpp"

namespace ocm {

// Structured plain-text configuration:
//   # comment                 (also allowed after values)
//   [kind]  or  [kind name]   section header
//   key = value               entries; lists are comma-separated
// Parsing is strict: duplicate keys within a section, entries outside any
// section, and malformed lines are errors (code "ConfigError").
struct ConfigSection {
    std::string kind;
    std::string name;
    int line = 0;
    std::vector<std::pair<std::string, std::string>> entries;
};

std::vector<ConfigSection> parse_config_text(const std::string& text);
std::vector<ConfigSection> parse_config_file(const std::string& path);

// Schema-checked access to one section's entries. Every get_* consumes its
// key; finish() rejects any key the schema never asked for.
class SectionReader {
public:
    explicit SectionReader(const ConfigSection& section);

    bool has(const std::string& key) const;
    std::string get_string(const std::string& key);
    std::string get_string(const std::string& key, const std::string& def);
    std::int64_t get_int(const std::string& key);
    std::int64_t get_int(const std::string& key, std::int64_t def);
    std::uint64_t get_uint(const std::string& key);
    std::uint64_t get_uint(const std::string& key, std::uint64_t def);
    Money get_money(const std::string& key);
    Money get_money(const std::string& key, Money def);
    double get_double(const std::string& key);
    double get_double(const std::string& key, double def);
    bool get_bool(const std::string& key, bool def);
    std::vector<std::string> get_list(const std::string& key);
    std::vector<std::string> get_list(const std::string& key,
                                      const std::vector<std::string>& def);
    // Throws ConfigError naming the first unconsumed (unknown) key.
    void finish() const;

    const ConfigSection& section() const { return section_; }

private:
    std::string take(const std::string& key);
    const ConfigSection& section_;
    std::map<std::string, std::string> values_;
    std::set<std::string> consumed_;
};

} // namespace ocm
