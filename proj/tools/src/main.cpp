#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "loopcoh/cli/commands.hpp"

namespace {

bool write_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::trunc);
    out << content;
    return static_cast<bool>(out);
}

}  // namespace

int main(int argc, char** argv)
{
    using namespace loopcoh::cli;
    CLI::App app{"Bar construction homology of polynomial algebras with Hirsch structure"};
    app.require_subcommand(1);
    std::string config_path, json_path;
    loopcoh::cli::RunOptions options;
    int max_degree = 0;
    std::string cache_dir;

    const std::map<std::string, std::string> help{
        {"ranks", "ranks (and torsion) of H^n(BA) per degree"},
        {"ring", "the homology ring table with flagged entries"},
        {"check-exterior", "compare H(BA) with the exterior algebra on the desuspended generators"},
        {"verify", "run the mechanical check suites"},
        {"oracle-compare", "compare computed ranks with the Koszul oracle"}};
    for (const auto& name : command_names()) {
        auto* sub = app.add_subcommand(name, help.at(name));
        sub->add_option("--config", config_path, "JSON job description")->required()->check(CLI::ExistingFile);
        sub->add_option("--max-degree", max_degree, "override bounds.max_degree")->check(CLI::Range(1, 1000));
        sub->add_option("--json", json_path, "write the JSON report here");
        sub->add_option("--cache-dir", cache_dir, "boundary matrix cache directory");
    }
    CLI11_PARSE(app, argc, argv);

    const std::string command = app.get_subcommands().front()->get_name();
    if (max_degree > 0) options.max_degree = max_degree;
    if (!cache_dir.empty()) options.cache_dir = cache_dir;

    std::ifstream in(config_path);
    std::stringstream buf;
    buf << in.rdbuf();
    if (!in) {
        std::cerr << "cannot read " << config_path << '\n';
        return kNotComputable;
    }

    const auto result = run_command_text(command, buf.str(), options);
    std::cout << result.text;
    const std::string json = result.report.dump(2) + "\n";
    if (!json_path.empty()) {
        if (!write_file(json_path, json)) {
            std::cerr << "cannot write " << json_path << '\n';
            return kCheckFailed;
        }
    } else {
        std::cout << json;
    }
    return result.exit_code;
}
