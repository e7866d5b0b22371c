// Copyright 2026 The Everett Authors
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

#include "everett/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

using namespace everett;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path &p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST(ExitCodes, Mapping) {
    EXPECT_EQ(exit_code_for(ErrorKind::Config), exit_code::config);
    EXPECT_EQ(exit_code_for(ErrorKind::Io), exit_code::io);
    EXPECT_EQ(exit_code_for(ErrorKind::ResourceCap), exit_code::resource_cap);
    EXPECT_EQ(exit_code_for(ErrorKind::Internal), exit_code::failure);
}

TEST(Cli, HelpSucceeds) {
    const CliRun r = run({"--help"});
    EXPECT_EQ(r.code, 0);
    for (const char *name : {"schmidt", "branch", "chain", "overlap", "zeno", "worlds", "evolve"}) {
        EXPECT_NE(r.out.find(name), std::string::npos) << name;
    }
    EXPECT_EQ(run({"evolve", "--help"}).code, 0);
}

TEST(Cli, WritesToStdout) {
    const CliRun r = run({"zeno", "--k", "2", "--format", "csv"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "k,probability\n2,0.42187500000000011\n");
    EXPECT_NE(r.err.find("zeno finished in"), std::string::npos);
}

TEST(Cli, ErrorExitCodes) {
    EXPECT_EQ(run({"overlap", "--dim", "4"}).code, exit_code::config);
    EXPECT_EQ(run({"zeno", "--k", "-1"}).code, exit_code::config);
    EXPECT_EQ(run({"nonsense"}).code, exit_code::config);
    EXPECT_EQ(run({"zeno", "--k", "1", "--out", "/nonexistent/dir/z.json"}).code, exit_code::io);
    EXPECT_EQ(run({"zeno", "--k", "1", "--config", "/nonexistent/z.cfg"}).code, exit_code::io);
    EXPECT_EQ(run({"evolve", "--depth", "40", "--mode", "full-branching"}).code, exit_code::resource_cap);
    const CliRun bad = run({"zeno", "--k", "x"});
    EXPECT_EQ(bad.code, exit_code::config);
    EXPECT_TRUE(bad.out.empty());
    EXPECT_NE(bad.err.find("error"), std::string::npos);
}

TEST(Cli, FileOutputIsByteStableAcrossThreads) {
    const auto dir = std::filesystem::temp_directory_path() / "everett_cli_test";
    std::filesystem::create_directories(dir);
    const std::vector<std::vector<std::string>> commands = {
        {"overlap", "--dim", "16", "--trials", "2000", "--seed", "3"},
        {"zeno-random", "--dim", "4", "--k", "2", "--trials", "2000", "--seed", "3"},
        {"evolve", "--depth", "10", "--trials", "2000", "--seed", "3"},
        {"branch", "--dim", "2", "--devices", "4", "--seed", "3"},
    };
    for (const auto &base : commands) {
        for (const char *format : {"json", "csv"}) {
            std::string previous;
            for (const char *threads : {"1", "3", "8"}) {
                auto args = base;
                const auto path = dir / (base[0] + "_" + threads + "." + format);
                args.insert(args.end(), {"--format", format, "--threads", threads, "--out", path.string()});
                const CliRun r = run(args);
                ASSERT_EQ(r.code, 0) << r.err;
                EXPECT_TRUE(r.out.empty());
                const std::string bytes = slurp(path);
                EXPECT_FALSE(bytes.empty());
                if (!previous.empty()) EXPECT_EQ(bytes, previous) << base[0] << " " << format;
                previous = bytes;
            }
        }
    }
    std::filesystem::remove_all(dir);
}
