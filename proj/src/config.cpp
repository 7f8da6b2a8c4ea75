#include "ocm/config.hpp"

#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "ocm/error.hpp"

namespace ocm {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

// Strips an unquoted trailing comment. Values never contain '#'.
std::string strip_comment(const std::string& s) {
    auto pos = s.find('#');
    return pos == std::string::npos ? s : s.substr(0, pos);
}

[[noreturn]] void fail(int line, const std::string& what) {
    throw Error("ConfigError", "line " + std::to_string(line) + ": " + what);
}

} // namespace

std::vector<ConfigSection> parse_config_text(const std::string& text) {
    std::vector<ConfigSection> sections;
    std::istringstream in(text);
    std::string raw;
    int lineNo = 0;
    ConfigSection* current = nullptr;
    while (std::getline(in, raw)) {
        ++lineNo;
        std::string line = trim(strip_comment(raw));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(lineNo, "unterminated section header");
            std::string inner = trim(line.substr(1, line.size() - 2));
            if (inner.empty()) fail(lineNo, "empty section header");
            ConfigSection section;
            section.line = lineNo;
            auto space = inner.find_first_of(" \t");
            if (space == std::string::npos) {
                section.kind = inner;
            } else {
                section.kind = inner.substr(0, space);
                section.name = trim(inner.substr(space + 1));
            }
            sections.push_back(std::move(section));
            current = &sections.back();
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            fail(lineNo, "expected 'key = value', got '" + line + "'");
        if (!current) fail(lineNo, "entry outside any [section]");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) fail(lineNo, "empty key");
        for (const auto& [k, v] : current->entries)
            if (k == key)
                fail(lineNo, "duplicate key '" + key + "' in section [" +
                                 current->kind + "]");
        current->entries.emplace_back(std::move(key), std::move(value));
    }
    return sections;
}

std::vector<ConfigSection> parse_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("IoError", "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

SectionReader::SectionReader(const ConfigSection& section) : section_(section) {
    for (const auto& [k, v] : section.entries) values_.emplace(k, v);
}

bool SectionReader::has(const std::string& key) const {
    return values_.count(key) > 0;
}

std::string SectionReader::take(const std::string& key) {
    auto it = values_.find(key);
    if (it == values_.end())
        throw Error("ConfigError", "section [" + section_.kind +
                                       (section_.name.empty() ? "" : " " + section_.name) +
                                       "] is missing key '" + key + "'");
    consumed_.insert(key);
    return it->second;
}

std::string SectionReader::get_string(const std::string& key) { return take(key); }

std::string SectionReader::get_string(const std::string& key,
                                      const std::string& def) {
    if (!has(key)) return def;
    return take(key);
}

namespace {

std::int64_t parse_int(const std::string& key, const std::string& text) {
    errno = 0;
    char* end = nullptr;
    long long v = std::strtoll(text.c_str(), &end, 10);
    if (errno == ERANGE)
        throw Error("ConfigError", "value of '" + key + "' out of range");
    if (end == text.c_str() || *end != '\0')
        throw Error("ConfigError",
                    "value of '" + key + "' is not an integer: '" + text + "'");
    return v;
}

std::uint64_t parse_uint(const std::string& key, const std::string& text) {
    if (!text.empty() && text.front() == '-')
        throw Error("ConfigError", "value of '" + key + "' must be non-negative");
    errno = 0;
    char* end = nullptr;
    unsigned long long v = std::strtoull(text.c_str(), &end, 10);
    if (errno == ERANGE)
        throw Error("ConfigError", "value of '" + key + "' out of range");
    if (end == text.c_str() || *end != '\0')
        throw Error("ConfigError",
                    "value of '" + key + "' is not an integer: '" + text + "'");
    return v;
}

double parse_double(const std::string& key, const std::string& text) {
    errno = 0;
    char* end = nullptr;
    double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0')
        throw Error("ConfigError",
                    "value of '" + key + "' is not a number: '" + text + "'");
    return v;
}

} // namespace

std::int64_t SectionReader::get_int(const std::string& key) {
    return parse_int(key, take(key));
}

std::int64_t SectionReader::get_int(const std::string& key, std::int64_t def) {
    if (!has(key)) return def;
    return get_int(key);
}

std::uint64_t SectionReader::get_uint(const std::string& key) {
    return parse_uint(key, take(key));
}

std::uint64_t SectionReader::get_uint(const std::string& key, std::uint64_t def) {
    if (!has(key)) return def;
    return get_uint(key);
}

Money SectionReader::get_money(const std::string& key) {
    return parse_int(key, take(key));
}

Money SectionReader::get_money(const std::string& key, Money def) {
    if (!has(key)) return def;
    return get_money(key);
}

double SectionReader::get_double(const std::string& key) {
    return parse_double(key, take(key));
}

double SectionReader::get_double(const std::string& key, double def) {
    if (!has(key)) return def;
    return get_double(key);
}

bool SectionReader::get_bool(const std::string& key, bool def) {
    if (!has(key)) return def;
    std::string v = take(key);
    if (v == "true" || v == "yes" || v == "1") return true;
    if (v == "false" || v == "no" || v == "0") return false;
    throw Error("ConfigError", "value of '" + key + "' is not a bool: '" + v + "'");
}

std::vector<std::string> SectionReader::get_list(const std::string& key) {
    std::string v = take(key);
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= v.size()) {
        auto comma = v.find(',', start);
        std::string item = trim(comma == std::string::npos
                                    ? v.substr(start)
                                    : v.substr(start, comma - start));
        if (!item.empty()) out.push_back(std::move(item));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

std::vector<std::string> SectionReader::get_list(
    const std::string& key, const std::vector<std::string>& def) {
    if (!has(key)) return def;
    return get_list(key);
}

void SectionReader::finish() const {
    for (const auto& [k, v] : section_.entries)
        if (!consumed_.count(k))
            throw Error("ConfigError",
                        "section [" + section_.kind +
                            (section_.name.empty() ? "" : " " + section_.name) +
                            "] has unknown key '" + k + "'");
}

} // namespace ocm
