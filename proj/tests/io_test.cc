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

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "speckleq/config.h"
#include "speckleq/errors.h"
#include "speckleq/features.h"
#include "speckleq/ini.h"
#include "speckleq/records_io.h"

using namespace speckleq;

namespace {

size_t parse_error_line(const std::string &text) {
    std::istringstream in(text);
    try {
        parse_run_config(in, "cfg.ini");
    } catch (const ParseError &e) {
        return e.line();
    }
    return 0;
}

RecordSet small_ensemble() {
    DetectorConfig d;
    return quantize_records(run_ensemble(SourceModel{}, InterferometerConfig{}, d, 300, 17));
}

}  // namespace

TEST(ini, sections_keys_and_lines) {
    std::istringstream in("# comment\n[a]\nx = 1.5 ; trailing\n\n[b]\nlist = 1, 2,3\nflag = true\nname = hello world\n");
    auto doc = IniDocument::parse(in, "t.ini");
    ASSERT_TRUE(doc.has_section("a"));
    ASSERT_FALSE(doc.has_section("c"));
    ASSERT_EQ(doc.get_double("a", "x"), 1.5);
    ASSERT_EQ(doc.line_of("a", "x"), 3u);
    ASSERT_EQ(doc.line_of("b"), 5u);
    ASSERT_EQ(doc.get_indices("b", "list"), (std::vector<size_t>{1, 2, 3}));
    ASSERT_EQ(doc.get_bool("b", "flag"), true);
    ASSERT_EQ(doc.get_string("b", "name"), "hello world");
    ASSERT_FALSE(doc.get_double("a", "missing").has_value());
    ASSERT_THROW(doc.get_double("b", "name"), ParseError);
    ASSERT_THROW(doc.reject_unknown_keys("b", {"list", "flag"}), ParseError);
}

TEST(ini, syntax_errors) {
    std::istringstream no_eq("[a]\njust text\n");
    ASSERT_THROW(IniDocument::parse(no_eq, "t.ini"), ParseError);
    std::istringstream orphan("x = 1\n");
    ASSERT_THROW(IniDocument::parse(orphan, "t.ini"), ParseError);
    std::istringstream dup("[a]\nx = 1\nx = 2\n");
    try {
        IniDocument::parse(dup, "t.ini");
        FAIL();
    } catch (const ParseError &e) {
        ASSERT_EQ(e.line(), 3u);
    }
}

TEST(records_io, round_trip_features_bit_identical) {
    auto rs = small_ensemble();
    std::stringstream ss;
    write_records(rs, ss);
    auto back = read_records(ss, "records.csv");
    ASSERT_EQ(back.records.size(), rs.records.size());
    ASSERT_FALSE(back.provenance.has_value());
    Corrections c;
    c.bootstrap_resamples = 100;
    ASSERT_EQ(format_features(estimate_features(rs, c)), format_features(estimate_features(back, c)));
    for (size_t k = 0; k < rs.records.size(); k++) {
        ASSERT_EQ(back.records[k].I1, rs.records[k].I1);
        ASSERT_EQ(back.records[k].g2_valid, rs.records[k].g2_valid);
    }
}

TEST(records_io, rate_identity_survives_rounding) {
    auto rs = small_ensemble();
    DetectorConfig d;
    for (const auto &r : rs.records) {
        ASSERT_NEAR(r.R, d.tau_c * r.I1 * r.I2, 1e-11 * r.R);
    }
}

TEST(records_io, malformed_inputs) {
    auto expect_line = [](const std::string &text, size_t line) {
        std::istringstream in(text);
        try {
            read_records(in, "r.csv");
            FAIL() << text;
        } catch (const ParseError &e) {
            ASSERT_EQ(e.line(), line) << text;
        }
    };
    std::string h = std::string(kRecordsHeader) + "\n";
    expect_line("", 0);
    expect_line("a,b,c\n", 1);
    expect_line(h, 1);
    expect_line(h + "0,1,2,3,4,5\n", 2);
    expect_line(h + "0,1,2,3,4,5,1\n2,1,2,3,4,5,1\n", 3);
    expect_line(h + "0,1,x,3,4,5,1\n", 2);
    expect_line(h + "0,-1,2,3,4,5,1\n", 2);
}

TEST(run_config, minimal_and_defaults) {
    std::istringstream in("[source]\nkind = HeraldedSinglePhoton\n[run]\nN = 100\nseed = 4\n");
    auto cfg = parse_run_config(in, "c.ini");
    ASSERT_EQ(cfg.source.kind, SourceKind::HeraldedSinglePhoton);
    ASSERT_EQ(cfg.n_settings, 100u);
    ASSERT_EQ(cfg.master_seed, 4u);
    ASSERT_EQ(cfg.source.input_modes, std::vector<size_t>{0});
    ASSERT_EQ(cfg.interferometer.m, 400u);
}

TEST(run_config, errors_carry_lines) {
    ASSERT_EQ(parse_error_line("[source]\nkind = Laser\n"), 2u);
    ASSERT_EQ(parse_error_line("[source]\nkind = BiphotonPair\nx = 1.5\n"), 3u);
    ASSERT_EQ(parse_error_line("[source]\nkind = BiphotonPair\n[bogus]\na = 1\n"), 3u);
    ASSERT_EQ(parse_error_line("[source]\nkind = BiphotonPair\n[detector]\nT = -1\n"), 4u);
    ASSERT_EQ(parse_error_line("[source]\nkind = BiphotonPair\n[interferometer]\nm = 10\np = 1\n"), 5u);
    ASSERT_EQ(parse_error_line("[source]\nkind = BiphotonPair\n\n[run]\nnope = 3\n"), 5u);
    ASSERT_EQ(parse_error_line("[run]\nN = 10\n"), 0u);
}

TEST(run_config, spectral_source) {
    std::istringstream in(
        "[source]\nkind = SpectralBiphoton\nx = 0\n[interferometer]\nbins = 7\n[run]\nN = 100\n");
    auto cfg = parse_run_config(in, "c.ini");
    ASSERT_EQ(cfg.source.n_spectral_bins, 7u);
    ASSERT_EQ(cfg.interferometer.n_spectral_bins, 7u);
    ASSERT_FALSE(cfg.source.jsa.has_value());

    std::istringstream custom("[source]\nkind = SpectralBiphoton\njsa_pump_nm = 0.2\njsa_phasematch_nm = 2\n"
                              "[interferometer]\nbins = 3\n");
    ASSERT_TRUE(parse_run_config(custom, "c.ini").source.jsa.has_value());
}
