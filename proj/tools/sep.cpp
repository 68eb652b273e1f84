// sep: decide whether a scheme glued from two affine charts admits a
// separator, construct it when it does, and run the supporting
// commutative-algebra checks declared in a manifest.

#include "sep/run.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw sep::Error("cannot open file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"separator checks for schemes glued from two affine charts"};
    app.require_subcommand(1);

    auto* check = app.add_subcommand("check", "run all queries of a manifest");
    std::string file;
    sep::RunOptions opt;
    std::string oracle_arg, expect_path;
    std::uint64_t budget = 0;
    check->add_option("file", file, "manifest file")->required();
    check->add_option("--format", opt.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    check->add_option("--oracle", oracle_arg,
                      "comma-separated primes for finite-field cross-checks");
    check->add_option("--budget", budget, "step budget for basis computations");
    check->add_option("--strict-expect", expect_path,
                      "JSON file with expected verdicts; mismatches exit 1");
    check->add_option("--seed", opt.seed, "seed echoed into the report")
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (!oracle_arg.empty()) {
            std::stringstream ss(oracle_arg);
            std::string tok;
            while (std::getline(ss, tok, ','))
                opt.oracle_primes.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
        }
        if (budget != 0) opt.budget_steps = budget;
        else if (const char* env = std::getenv("SEP_BUDGET"))
            opt.budget_steps = std::strtoull(env, nullptr, 10);
        if (!expect_path.empty()) opt.strict_expect = read_file(expect_path);

        sep::Manifest m = sep::parse_manifest(read_file(file));
        sep::RunOutcome out = sep::run_manifest(m, opt);
        std::cout << (opt.format == "json" ? out.json : out.text);
        return out.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
