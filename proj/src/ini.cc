// Copyright 2026 The speckleq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "speckleq/ini.h"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "speckleq/errors.h"

namespace speckleq {

namespace {

std::string trim(const std::string &s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string &s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, ',')) {
        out.push_back(trim(item));
    }
    return out;
}

}  // namespace

IniDocument IniDocument::parse(std::istream &in, std::string source_name) {
    IniDocument doc;
    doc.source_ = std::move(source_name);
    std::string line;
    std::string section;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        lineno++;
        size_t hash = line.find_first_of("#;");
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3) {
                throw ParseError(doc.source_, lineno, "malformed section header '" + line + "'");
            }
            section = trim(line.substr(1, line.size() - 2));
            if (doc.section_lines_.count(section)) {
                throw ParseError(doc.source_, lineno, "duplicate section [" + section + "]");
            }
            doc.section_lines_[section] = lineno;
            doc.data_[section];
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParseError(doc.source_, lineno, "expected 'key = value', got '" + line + "'");
        }
        if (section.empty()) {
            throw ParseError(doc.source_, lineno, "key outside of any [section]");
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw ParseError(doc.source_, lineno, "empty key");
        }
        auto &sec = doc.data_[section];
        if (sec.count(key)) {
            throw ParseError(doc.source_, lineno, "duplicate key '" + key + "' in [" + section + "]");
        }
        sec[key] = Entry{value, lineno};
    }
    return doc;
}

bool IniDocument::has_section(const std::string &section) const {
    return data_.count(section) > 0;
}

std::vector<std::string> IniDocument::sections() const {
    std::vector<std::string> out;
    for (const auto &[name, _] : data_) out.push_back(name);
    return out;
}

const IniDocument::Entry *IniDocument::find(const std::string &section, const std::string &key) const {
    auto s = data_.find(section);
    if (s == data_.end()) return nullptr;
    auto k = s->second.find(key);
    return k == s->second.end() ? nullptr : &k->second;
}

size_t IniDocument::line_of(const std::string &section, const std::string &key) const {
    if (const Entry *e = find(section, key)) return e->line;
    auto s = section_lines_.find(section);
    return s == section_lines_.end() ? 0 : s->second;
}

void IniDocument::fail(const std::string &section, const std::string &key, const std::string &what) const {
    throw ParseError(source_, line_of(section, key), "[" + section + "] " + (key.empty() ? "" : key + ": ") + what);
}

void IniDocument::reject_unknown_keys(const std::string &section, const std::set<std::string> &allowed) const {
    auto s = data_.find(section);
    if (s == data_.end()) return;
    for (const auto &[key, _] : s->second) {
        if (!allowed.count(key)) fail(section, key, "unknown key");
    }
}

std::optional<std::string> IniDocument::get_string(const std::string &section, const std::string &key) const {
    if (const Entry *e = find(section, key)) return e->value;
    return std::nullopt;
}

std::optional<double> IniDocument::get_double(const std::string &section, const std::string &key) const {
    const Entry *e = find(section, key);
    if (!e) return std::nullopt;
    const char *begin = e->value.c_str();
    char *end = nullptr;
    errno = 0;
    double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || errno == ERANGE) {
        fail(section, key, "expected a number, got '" + e->value + "'");
    }
    return v;
}

std::optional<uint64_t> IniDocument::get_uint(const std::string &section, const std::string &key) const {
    const Entry *e = find(section, key);
    if (!e) return std::nullopt;
    const char *begin = e->value.c_str();
    char *end = nullptr;
    errno = 0;
    if (e->value.empty() || e->value[0] == '-') {
        fail(section, key, "expected a non-negative integer, got '" + e->value + "'");
    }
    unsigned long long v = std::strtoull(begin, &end, 10);
    if (end == begin || *end != '\0' || errno == ERANGE) {
        fail(section, key, "expected a non-negative integer, got '" + e->value + "'");
    }
    return static_cast<uint64_t>(v);
}

std::optional<bool> IniDocument::get_bool(const std::string &section, const std::string &key) const {
    const Entry *e = find(section, key);
    if (!e) return std::nullopt;
    if (e->value == "true" || e->value == "yes" || e->value == "on" || e->value == "1") return true;
    if (e->value == "false" || e->value == "no" || e->value == "off" || e->value == "0") return false;
    fail(section, key, "expected true/false, got '" + e->value + "'");
}

std::optional<std::vector<double>> IniDocument::get_doubles(const std::string &section, const std::string &key) const {
    const Entry *e = find(section, key);
    if (!e) return std::nullopt;
    std::vector<double> out;
    for (const auto &item : split_list(e->value)) {
        char *end = nullptr;
        double v = std::strtod(item.c_str(), &end);
        if (item.empty() || *end != '\0') {
            fail(section, key, "expected a comma-separated list of numbers");
        }
        out.push_back(v);
    }
    return out;
}

std::optional<std::vector<size_t>> IniDocument::get_indices(const std::string &section, const std::string &key) const {
    const Entry *e = find(section, key);
    if (!e) return std::nullopt;
    std::vector<size_t> out;
    for (const auto &item : split_list(e->value)) {
        char *end = nullptr;
        unsigned long long v = std::strtoull(item.c_str(), &end, 10);
        if (item.empty() || item[0] == '-' || *end != '\0') {
            fail(section, key, "expected a comma-separated list of mode indices");
        }
        out.push_back(static_cast<size_t>(v));
    }
    return out;
}

}  // namespace speckleq
