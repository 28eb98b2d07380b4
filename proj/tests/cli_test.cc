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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "speckleq/records_io.h"

namespace fs = std::filesystem;
using namespace speckleq;

namespace {

// Each test gets a fresh scratch directory in the system temp area.
struct Scratch {
    fs::path dir;
    explicit Scratch(const std::string &name) : dir(fs::temp_directory_path() / ("speckleq_cli_" + name)) {
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    ~Scratch() { fs::remove_all(dir); }
    fs::path write(const std::string &file, const std::string &text) const {
        fs::path p = dir / file;
        fs::create_directories(p.parent_path());
        std::ofstream(p) << text;
        return p;
    }
};

int run(const std::string &args, const fs::path &log) {
    std::string cmd = std::string(SPECKLEQ_BIN) + " " + args + " > " + log.string() + " 2>&1";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string config(const std::string &kind, size_t n, const fs::path &out, const std::string &extra = "") {
    return "[source]\nkind = " + kind + "\n" + extra + "[run]\nN = " + std::to_string(n) + "\nseed = 3\noutput = " +
           out.string() + "\nbootstrap = 50\n";
}

}  // namespace

TEST(cli, simulate_single_photon) {
    Scratch s("single");
    auto cfg = s.write("c.ini", config("HeraldedSinglePhoton", 100, s.dir / "out",
                                       "[detector]\nnoise = Noiseless\ndark1 = 0\ndark2 = 0\n"));
    ASSERT_EQ(run("simulate " + cfg.string(), s.dir / "log"), 0) << slurp(s.dir / "log");
    auto rs = read_records(s.dir / "out" / "records.csv");
    ASSERT_EQ(rs.records.size(), 100u);
    for (const auto &r : rs.records) {
        if (r.g2_valid) ASSERT_NEAR(r.g2, 1.0, 1e-9);
    }
    ASSERT_TRUE(fs::exists(s.dir / "out" / "features.txt"));
    ASSERT_TRUE(fs::exists(s.dir / "out" / "gof.txt"));
    ASSERT_NE(slurp(s.dir / "out" / "features.txt").find("d_hat"), std::string::npos);
}

TEST(cli, malformed_config_writes_nothing) {
    Scratch s("bad");
    auto cfg = s.write("c.ini", config("BiphotonPair", 100, s.dir / "out", "x = 2\n"));
    ASSERT_EQ(run("simulate " + cfg.string(), s.dir / "log"), 2);
    ASSERT_NE(slurp(s.dir / "log").find(":3"), std::string::npos) << slurp(s.dir / "log");
    ASSERT_FALSE(fs::exists(s.dir / "out" / "records.csv"));
}

TEST(cli, analyze_errors_and_scatter) {
    Scratch s("analyze");
    auto empty = s.write("empty.csv", "");
    ASSERT_EQ(run("analyze " + empty.string(), s.dir / "log"), 2);
    ASSERT_EQ(run("analyze " + (s.dir / "missing.csv").string(), s.dir / "log"), 2);

    auto cfg = s.write("c.ini", config("BiphotonPair", 300, s.dir / "out"));
    ASSERT_EQ(run("simulate " + cfg.string(), s.dir / "log"), 0) << slurp(s.dir / "log");
    auto records = (s.dir / "out" / "records.csv").string();
    auto scatter = (s.dir / "scatter.csv").string();
    for (int k = 0; k < 2; k++) {
        ASSERT_EQ(run("analyze " + records + " --scatter " + scatter + " --label run" + std::to_string(k) +
                          " --bootstrap 20",
                      s.dir / "log"),
                  0)
            << slurp(s.dir / "log");
    }
    std::istringstream rows(slurp(scatter));
    std::string line;
    size_t n = 0;
    std::getline(rows, line);
    ASSERT_EQ(line.rfind("label,", 0), 0u);
    while (std::getline(rows, line)) n++;
    ASSERT_EQ(n, 2u);
    ASSERT_TRUE(fs::exists(s.dir / "out" / "analysis" / "features.txt"));
}

TEST(cli, train_and_classify) {
    Scratch s("train");
    const char *kinds[][2] = {{"HeraldedSinglePhoton", "SinglePhoton"}, {"BiphotonPair", "IndistBiphoton"}};
    for (auto &k : kinds) {
        auto cfg = s.write(std::string(k[1]) + ".ini", config(k[0], 1000, s.dir / "sim" / k[1]));
        ASSERT_EQ(run("simulate " + cfg.string(), s.dir / "log"), 0) << slurp(s.dir / "log");
        fs::create_directories(s.dir / "train" / k[1]);
        fs::copy_file(s.dir / "sim" / k[1] / "records.csv", s.dir / "train" / k[1] / "a.csv");
    }
    auto model = (s.dir / "model.ini").string();
    ASSERT_EQ(run("train " + (s.dir / "train").string() + " -o " + model + " --chunk 100", s.dir / "log"), 0)
        << slurp(s.dir / "log");
    ASSERT_EQ(run("classify " + (s.dir / "sim" / "IndistBiphoton" / "records.csv").string() + " -m " + model,
                  s.dir / "log"),
              0);
    ASSERT_NE(slurp(s.dir / "log").find("classification = IndistBiphoton"), std::string::npos)
        << slurp(s.dir / "log");

    fs::create_directories(s.dir / "badtrain" / "Laser");
    ASSERT_NE(run("train " + (s.dir / "badtrain").string() + " -o " + model, s.dir / "log"), 0);
}

TEST(cli, validate_ensemble_and_usage) {
    Scratch s("validate");
    auto cfg = s.write("c.ini", config("BiphotonPair", 100, s.dir / "out", "[interferometer]\nensemble = HaarTruncated\nm = 20\n"));
    ASSERT_EQ(run("validate-ensemble " + cfg.string() + " --draws 300", s.dir / "log"), 0) << slurp(s.dir / "log");
    ASSERT_NE(slurp(s.dir / "log").find("unitarity"), std::string::npos) << slurp(s.dir / "log");
    ASSERT_EQ(run("frobnicate", s.dir / "log"), 2);
}
