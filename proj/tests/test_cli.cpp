#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include <unistd.h>

#include "loopcoh/cli/cache.hpp"
#include "loopcoh/cli/commands.hpp"
#include "loopcoh/cli/config.hpp"

using namespace loopcoh::cli;

namespace {

const char* kZx = R"({"ring":"Z","generators":[{"name":"x","degree":2}],"bounds":{"max_degree":10}})";
const char* kU23 =
    R"({"ring":"F2","generators":[{"name":"u2","degree":2},{"name":"u3","degree":3}],"sq1":{"u2":"u3"},"bounds":{"max_degree":6}})";

std::vector<std::string> paths_of(const std::string& text)
{
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        std::vector<std::string> out;
        for (const auto& i : e.issues()) out.push_back(i.path);
        return out;
    }
    return {};
}

std::filesystem::path fresh_dir(const std::string& name)
{
    auto d = std::filesystem::temp_directory_path() / ("loopcoh-test-" + name + "-" + std::to_string(::getpid()));
    std::filesystem::remove_all(d);
    return d;
}

}  // namespace

TEST(Config, Examples)
{
    auto c = parse_config(kZx);
    EXPECT_EQ(c.ring.name(), "Z");
    ASSERT_EQ(c.generators.size(), 1u);
    EXPECT_EQ(c.bounds.max_degree, 10);
    EXPECT_EQ(c.bounds.effective_weight_cap(), 11);

    auto u = parse_config(kU23);
    EXPECT_TRUE(u.ring.is_char2());
    ASSERT_TRUE(u.steenrod());
    EXPECT_EQ(u.steenrod()->algebra().to_string(u.steenrod()->on_generator(0)), "u3");

    EXPECT_EQ(paths_of(R"({"ring":"Z","generators":[{"name":"x","degree":3}]})"),
              std::vector<std::string>{"/generators/0/degree"});
}

TEST(Config, ReportsAllIssuesWithPaths)
{
    auto p = paths_of(R"({"ring":"F2","generators":[{"name":"u","degree":2},{"name":"v","degree":1}],
                          "bounds":{"max_degree":-1,"colour":3},"extra":true})");
    EXPECT_EQ(p, (std::vector<std::string>{"/extra", "/generators/1/degree", "/bounds/colour", "/bounds/max_degree"}));
    EXPECT_EQ(paths_of(R"({"ring":"F2","generators":[{"name":"u","degree":2}],"sq1":{"w":"u"}})"),
              std::vector<std::string>{"/sq1/w"});
    EXPECT_EQ(paths_of(R"({"ring":"F2","generators":[{"name":"u","degree":2},{"name":"v","degree":3}],"sq1":{"u":"v+u^2"}})"),
              std::vector<std::string>{"/sq1/u"});
    EXPECT_EQ(paths_of(R"({"ring":"Q","generators":[{"name":"u","degree":2}],"sq1":{}})"), std::vector<std::string>{"/sq1"});
    EXPECT_EQ(paths_of(R"({"ring":"F4","generators":[{"name":"u","degree":2}]})"), std::vector<std::string>{"/ring"});
    EXPECT_EQ(paths_of("{\"ring\":"), std::vector<std::string>{""});
}

TEST(Config, RingSpellings)
{
    EXPECT_EQ(parse_ring("integers")->name(), "Z");
    EXPECT_EQ(parse_ring("Q")->name(), "Q");
    EXPECT_EQ(parse_ring("F3")->name(), "F3");
    EXPECT_EQ(parse_ring("prime_field(5)")->name(), "F5");
    EXPECT_FALSE(parse_ring("F1"));
    EXPECT_FALSE(parse_ring("R"));
}

TEST(Config, OverridesAreValidated)
{
    const std::string base = R"({"ring":"F2","generators":[{"name":"u2","degree":2},{"name":"u3","degree":3}],"sq1":{"u2":"u3"},)";
    auto ok = parse_config(base + R"("sq_overrides":[{"p":2,"q":1,"args":["u2","u2","u2"],"value":"u2^2"}]})");
    EXPECT_EQ(ok.op_table()->override_count(), 2u);  // installed with its mirror
    EXPECT_EQ(paths_of(base + R"("sq_overrides":[{"p":2,"q":1,"args":["u2","u2","u2"],"value":"u3"}]})"),
              std::vector<std::string>{"/sq_overrides"});
    EXPECT_EQ(paths_of(base + R"("sq_overrides":[{"p":1,"q":1,"args":["u2"],"value":"u3"}]})"),
              std::vector<std::string>{"/sq_overrides/0/args"});
}

TEST(Commands, ExitCodesAndVerdicts)
{
    auto z = run_command_text("check-exterior", kZx, {});
    EXPECT_EQ(z.exit_code, kSuccess);
    EXPECT_EQ(z.report["result"]["verdict"], "exterior");
    EXPECT_EQ(z.report["convention_version"], "1");

    auto u = run_command_text("check-exterior", kU23, {});
    EXPECT_EQ(u.exit_code, kSuccess);
    EXPECT_EQ(u.report["result"]["verdict"], "not_exterior");
    EXPECT_FALSE(u.report["result"]["witness"].get<std::string>().empty());

    auto bad = run_command_text("ranks", R"({"ring":"Z","generators":[{"name":"x","degree":3}]})", {});
    EXPECT_EQ(bad.exit_code, kNotComputable);
    EXPECT_EQ(bad.report["status"], "invalid_config");
    EXPECT_EQ(bad.report["errors"][0]["path"], "/generators/0/degree");

    auto thin = run_command_text("ranks", R"({"ring":"Z","generators":[{"name":"x","degree":2}],"bounds":{"max_degree":6,"weight_cap":4}})", {});
    EXPECT_EQ(thin.exit_code, kNotComputable);
    EXPECT_EQ(thin.report["status"], "not_computable");
}

TEST(Commands, OracleCompareAndVerify)
{
    auto o = run_command_text("oracle-compare", kU23, {});
    EXPECT_EQ(o.exit_code, kSuccess);
    EXPECT_TRUE(o.report["result"]["all_equal"].get<bool>());
    auto v = run_command_text("verify", kU23, {});
    EXPECT_EQ(v.exit_code, kSuccess) << v.text;
    EXPECT_TRUE(v.report["result"]["all_passed"].get<bool>());
    auto vz = run_command_text("verify", kZx, RunOptions{6, std::nullopt});
    EXPECT_EQ(vz.exit_code, kSuccess) << vz.text;
    EXPECT_EQ(vz.report["truncation"]["max_degree"], 6);
}

TEST(Commands, ReportsIdenticalWithAndWithoutCache)
{
    const auto dir = fresh_dir("cache");
    for (const std::string cmd : {"ranks", "ring", "check-exterior", "oracle-compare"}) {
        const auto cold = run_command_text(cmd, kU23, {}).report.dump(2);
        const auto fill = run_command_text(cmd, kU23, RunOptions{std::nullopt, dir.string()}).report.dump(2);
        const auto warm = run_command_text(cmd, kU23, RunOptions{std::nullopt, dir.string()});
        EXPECT_EQ(cold, fill) << cmd;
        EXPECT_EQ(cold, warm.report.dump(2)) << cmd;
        EXPECT_NE(warm.text.find(", 0 built"), std::string::npos) << warm.text;
    }
    std::filesystem::remove_all(dir);
}

TEST(Cache, DamagedFileIsIgnored)
{
    const auto dir = fresh_dir("damaged");
    const auto cold = run_command_text("ring", kU23, {}).report.dump();
    (void)run_command_text("ring", kU23, RunOptions{std::nullopt, dir.string()});
    for (const auto& f : std::filesystem::directory_iterator(dir)) {
        std::ofstream out(f.path(), std::ios::trunc);
        out << R"({"convention_version":"1","key":"wrong","matrices":[]})";
    }
    EXPECT_EQ(run_command_text("ring", kU23, RunOptions{std::nullopt, dir.string()}).report.dump(), cold);
    std::filesystem::remove_all(dir);
}

TEST(Cache, ContentHashIsSha256)
{
    EXPECT_EQ(content_hash("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
