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

#include "speckleq/records_io.h"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "speckleq/errors.h"

namespace speckleq {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

double round12(double v) {
    return std::strtod(fmt(v).c_str(), nullptr);
}

std::vector<std::string> split_csv(const std::string &line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

double parse_number(const std::string &cell, const std::string &source, size_t lineno, const char *column) {
    if (cell.empty()) {
        throw ParseError(source, lineno, std::string("empty ") + column + " field");
    }
    errno = 0;
    char *end = nullptr;
    double v = std::strtod(cell.c_str(), &end);
    if (end != cell.c_str() + cell.size() || errno == ERANGE || !std::isfinite(v)) {
        throw ParseError(source, lineno, std::string("bad ") + column + " value '" + cell + "'");
    }
    return v;
}

}  // namespace

void write_records(const RecordSet &rs, std::ostream &out) {
    out << kRecordsHeader << '\n';
    for (const auto &r : rs.records) {
        out << r.setting_index << ',' << fmt(r.I1) << ',' << fmt(r.I2) << ',' << fmt(r.C) << ',' << fmt(r.R) << ','
            << (r.g2_valid ? fmt(r.g2) : "0") << ',' << (r.g2_valid ? 1 : 0) << '\n';
    }
}

RecordSet read_records(std::istream &in, const std::string &source_name) {
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError(source_name, 0, "empty records file");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kRecordsHeader) {
        throw ParseError(source_name, 1, std::string("header must be '") + kRecordsHeader + "'");
    }
    static constexpr const char *kColumns[] = {"setting_index", "I1", "I2", "C", "R", "g2", "g2_valid"};
    RecordSet rs;
    size_t lineno = 1;
    while (std::getline(in, line)) {
        lineno++;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto cells = split_csv(line);
        if (cells.size() != 7) {
            throw ParseError(source_name, lineno, "expected 7 columns, got " + std::to_string(cells.size()));
        }
        MeasurementRecord r;
        double idx = parse_number(cells[0], source_name, lineno, kColumns[0]);
        if (idx != static_cast<double>(rs.records.size())) {
            throw ParseError(source_name, lineno,
                             "setting_index must be contiguous from 0; expected " + std::to_string(rs.records.size()));
        }
        r.setting_index = rs.records.size();
        r.I1 = parse_number(cells[1], source_name, lineno, kColumns[1]);
        r.I2 = parse_number(cells[2], source_name, lineno, kColumns[2]);
        r.C = parse_number(cells[3], source_name, lineno, kColumns[3]);
        r.R = parse_number(cells[4], source_name, lineno, kColumns[4]);
        r.g2 = parse_number(cells[5], source_name, lineno, kColumns[5]);
        if (cells[6] != "0" && cells[6] != "1") {
            throw ParseError(source_name, lineno, "g2_valid must be 0 or 1");
        }
        r.g2_valid = cells[6] == "1";
        if (r.I1 < 0 || r.I2 < 0 || r.C < 0 || r.R < 0) {
            throw ParseError(source_name, lineno, "rates must be non-negative");
        }
        rs.records.push_back(r);
    }
    if (rs.records.empty()) {
        throw ParseError(source_name, lineno, "records file has no data rows");
    }
    return rs;
}

RecordSet read_records(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError(path.string(), 0, "cannot open records file");
    }
    return read_records(in, path.string());
}

RecordSet quantize_records(const RecordSet &rs) {
    RecordSet out = rs;
    for (auto &r : out.records) {
        r.I1 = round12(r.I1);
        r.I2 = round12(r.I2);
        r.C = round12(r.C);
        r.R = round12(r.R);
        r.g2 = r.g2_valid ? round12(r.g2) : 0.0;
    }
    return out;
}

}  // namespace speckleq
