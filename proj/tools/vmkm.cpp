#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vmkm/cli.hpp"

namespace {

void add_common_options(CLI::App& sub, vmkm::cli::CliConfig& config, std::string& delimiter) {
    sub.add_option("--output-dir", config.output_dir, "Directory for result files")->capture_default_str();
    sub.add_option("--k", config.k, "Number of clusters (default 5)")->check(CLI::PositiveNumber);
    sub.add_option("--seed", config.seed, "Seed for initial centers and sampling")->capture_default_str();
    sub.add_option("--alpha0", config.alpha0, "Initial balance threshold, in (0, 1/3)");
    sub.add_option("--gamma", config.gamma, "RBF gamma for kernel k-means (default: auto)");
    sub.add_option("--max-iter", config.max_iterations, "Main-loop iteration cap");
    sub.add_flag("--strict-eq10", config.strict_eq10, "Decay alpha_a instead of alpha_b after each main iteration");
    sub.add_option("--delimiter", delimiter, "CSV field delimiter")->capture_default_str();
    sub.add_flag("--header", config.has_header, "CSV input starts with a header row");
    sub.add_option("--workers", config.workers, "Worker threads for sensitivity trials (0 = all cores)");
}

}  // namespace

int main(int argc, char** argv) {
    using vmkm::cli::Command;
    CLI::App app{"Variance based moving k-means clustering and baselines"};
    app.require_subcommand(1);

    vmkm::cli::CliConfig config;
    std::string delimiter = ",";

    auto* cluster = app.add_subcommand("cluster", "Cluster one dataset with one algorithm");
    cluster->add_option("--input", config.inputs, "CSV or PGM dataset")->required()->expected(1);
    cluster->add_option("--algo", config.algorithms, "Algorithm: " + vmkm::supported_algorithms())->expected(1);

    auto* compare = app.add_subcommand("compare", "Mean MSE of several algorithms on several datasets");
    compare->add_option("--input", config.inputs, "CSV or PGM datasets")->required();
    compare->add_option("--algos", config.algorithms, "Comma separated algorithms")->delimiter(',');
    compare->add_option("--trials", config.trials, "Paired initializations per dataset (default 1)");

    auto* sensitivity = app.add_subcommand("sensitivity", "Per-trial MSE under paired random initializations");
    sensitivity->add_option("--input", config.inputs, "CSV or PGM dataset")->required()->expected(1);
    sensitivity->add_option("--algos", config.algorithms, "Comma separated algorithms")->delimiter(',');
    sensitivity->add_option("--trials", config.trials, "Number of trials (default 20)");

    auto* segment = app.add_subcommand("segment", "Segment a greyscale PGM image");
    segment->add_option("--input", config.inputs, "PGM image")->required()->expected(1);
    segment->add_option("--algo", config.algorithms, "Algorithm: " + vmkm::supported_algorithms())->expected(1);

    for (auto* sub : {cluster, compare, sensitivity, segment}) {
        add_common_options(*sub, config, delimiter);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return vmkm::cli::kUsage;
    }
    if (delimiter.size() != 1) {
        std::cerr << "error: --delimiter must be a single character\n";
        return vmkm::cli::kUsage;
    }
    config.delimiter = delimiter.front();

    if (cluster->parsed()) {
        config.command = Command::Cluster;
    } else if (compare->parsed()) {
        config.command = Command::Compare;
    } else if (sensitivity->parsed()) {
        config.command = Command::Sensitivity;
    } else {
        config.command = Command::Segment;
    }
    return vmkm::cli::run_command(config, std::cout, std::cerr);
}
