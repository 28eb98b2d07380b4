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

#ifndef SPECKLEQ_INI_H
#define SPECKLEQ_INI_H

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace speckleq {

/// Plain-text "[section]" + "key = value" document. '#' and ';' start comments. Every value
/// remembers its line so that semantic errors can point back into the file.
class IniDocument {
   public:
    struct Entry {
        std::string value;
        size_t line = 0;
    };

    static IniDocument parse(std::istream &in, std::string source_name);

    const std::string &source_name() const { return source_; }
    bool has_section(const std::string &section) const;
    std::vector<std::string> sections() const;
    const Entry *find(const std::string &section, const std::string &key) const;
    /// Line of the key, or of the section header when the key is absent, or 0.
    size_t line_of(const std::string &section, const std::string &key = "") const;

    /// Throws ParseError for keys in `section` outside `allowed`.
    void reject_unknown_keys(const std::string &section, const std::set<std::string> &allowed) const;

    std::optional<std::string> get_string(const std::string &section, const std::string &key) const;
    std::optional<double> get_double(const std::string &section, const std::string &key) const;
    std::optional<uint64_t> get_uint(const std::string &section, const std::string &key) const;
    std::optional<bool> get_bool(const std::string &section, const std::string &key) const;
    std::optional<std::vector<double>> get_doubles(const std::string &section, const std::string &key) const;
    std::optional<std::vector<size_t>> get_indices(const std::string &section, const std::string &key) const;

    [[noreturn]] void fail(const std::string &section, const std::string &key, const std::string &what) const;

   private:
    std::string source_;
    std::map<std::string, std::map<std::string, Entry>> data_;
    std::map<std::string, size_t> section_lines_;
};

}  // namespace speckleq

#endif
