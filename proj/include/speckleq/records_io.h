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

#ifndef SPECKLEQ_RECORDS_IO_H
#define SPECKLEQ_RECORDS_IO_H

#include <filesystem>
#include <istream>
#include <ostream>
#include <string>

#include "speckleq/measurement.h"

namespace speckleq {

inline constexpr const char *kRecordsHeader = "setting_index,I1,I2,C,R,g2,g2_valid";

/// One header line, then one row per record with 12 significant digits. Invalid g2 is
/// written as 0 with g2_valid = 0.
void write_records(const RecordSet &rs, std::ostream &out);

/// Throws ParseError on an empty stream, a header mismatch, malformed rows or
/// non-contiguous setting indices.
RecordSet read_records(std::istream &in, const std::string &source_name);
RecordSet read_records(const std::filesystem::path &path);

/// Rounds every numeric field to what write_records would store, so that features computed
/// before writing equal those computed after reading back.
RecordSet quantize_records(const RecordSet &rs);

}  // namespace speckleq

#endif
