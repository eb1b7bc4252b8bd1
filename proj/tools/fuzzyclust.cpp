// fuzzyclust: generate test sets, fit fuzzy partitions, compare algorithms
// and render 2-D partitions as SVG.
//
// Exit codes: 0 success, 2 usage or parse error, 3 numerical degeneracy.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fuzzy/fuzzy.hpp"

namespace {

constexpr int kUsage = 2;
constexpr int kDegenerate = 3;

struct FitFlags {
    std::string input;
    std::string algorithm = "GGK";
    std::size_t clusters = 0;
    double alpha = 2.0;
    double tol = 1e-6;
    std::size_t max_iter = 300;
    std::uint64_t seed = 0;
    std::string init = "sampled-centers";
    std::vector<double> lambda;
};

void add_shared_flags(CLI::App* cmd, FitFlags& f) {
    cmd->add_option("--input", f.input, "points CSV")->required();
    cmd->add_option("-c,--clusters", f.clusters, "number of clusters");
    cmd->add_option("--alpha", f.alpha, "fuzzifier, > 1")->capture_default_str();
    cmd->add_option("--tol", f.tol, "stop when max |dW| <= tol")->capture_default_str();
    cmd->add_option("--max-iter", f.max_iter, "iteration cap")->capture_default_str();
    cmd->add_option("--seed", f.seed, "initialization seed")->capture_default_str();
    cmd->add_option("--init", f.init, "random-partition or sampled-centers")->capture_default_str();
    cmd->add_option("--lambda", f.lambda, "GK volume constants, one per cluster")->delimiter(',');
}

fuzzy::FitConfig make_config(const FitFlags& f, std::size_t clusters) {
    fuzzy::FitConfig cfg;
    cfg.algorithm = fuzzy::parse_algorithm(f.algorithm);
    cfg.clusters = clusters;
    cfg.alpha = f.alpha;
    cfg.tol = f.tol;
    cfg.max_iter = f.max_iter;
    cfg.seed = f.seed;
    cfg.init = fuzzy::parse_init(f.init);
    cfg.lambda = f.lambda;
    return cfg;
}

int cmd_generate(const std::string& scenario, const std::string& out, std::uint64_t seed, bool seed_given) {
    fuzzy::ScenarioSpec spec;
    if (std::filesystem::is_regular_file(scenario)) {
        spec = fuzzy::read_scenario(scenario);
        if (seed_given) spec.seed = seed;
    } else {
        spec = fuzzy::builtin_scenario(scenario, seed);
    }
    const auto data = fuzzy::sample_scenario(spec);
    fuzzy::write_points_csv(out, data);
    std::cout << data.size() << " points written to " << out << "\n";
    return 0;
}

int cmd_fit(const FitFlags& f, const std::string& out, const std::string& memberships_out) {
    const auto data = fuzzy::read_points_csv(f.input);
    const auto cfg = make_config(f, f.clusters == 0 ? 2 : f.clusters);
    const auto report = fuzzy::fit(data, cfg);
    fuzzy::write_model(out, fuzzy::ModelFile::from_report(report));
    if (!memberships_out.empty())
        fuzzy::detail::write_file(memberships_out, fuzzy::format_memberships_csv(report.partition));
    const double j = report.objective_trace.empty() ? 0.0 : report.objective_trace.back();
    std::cout << fuzzy::to_string(report.algorithm) << ": iterations=" << report.iterations
              << " J=" << fuzzy::format_double(j) << " converged=" << (report.converged ? "true" : "false")
              << "\n";
    return 0;
}

int cmd_compare(const FitFlags& f, const std::vector<std::string>& names) {
    const auto data = fuzzy::read_points_csv(f.input);
    if (!data.labels()) {
        std::cerr << "error: compare needs a points file with a label column\n";
        return kUsage;
    }
    std::size_t clusters = f.clusters;
    if (clusters == 0) {
        int top = 0;
        for (int l : *data.labels()) top = std::max(top, l);
        clusters = static_cast<std::size_t>(top) + 1;
    }
    std::vector<fuzzy::Algorithm> algorithms;
    for (const auto& n : names) algorithms.push_back(fuzzy::parse_algorithm(n));
    auto cfg = make_config(f, clusters);
    const auto report = fuzzy::compare(data, algorithms, cfg);
    std::cout << fuzzy::to_json(report).dump(2) << "\n";
    return 0;
}

int cmd_render(const std::string& input, const std::string& model_path, const std::string& out) {
    const auto data = fuzzy::read_points_csv(input);
    const auto model = fuzzy::read_model(model_path);
    fuzzy::detail::write_file(out, fuzzy::render_svg(data, model));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fuzzy clustering with FCM, Gustafson-Kessel, generalized Gustafson-Kessel and Gath-Geva"};
    app.require_subcommand(1);

    std::string scenario;
    std::string gen_out;
    std::uint64_t gen_seed = 0;
    auto* generate = app.add_subcommand("generate", "sample a test set into a points CSV");
    generate->add_option("--scenario", scenario, "two-ellipse, three-ellipse, or a scenario JSON file")->required();
    generate->add_option("--out", gen_out, "output CSV")->required();
    auto* seed_opt = generate->add_option("--seed", gen_seed, "sampling seed");

    FitFlags fit_flags;
    std::string model_out;
    std::string memberships_out;
    auto* fit = app.add_subcommand("fit", "fit a fuzzy partition and write a model JSON");
    add_shared_flags(fit, fit_flags);
    fit->add_option("--algorithm", fit_flags.algorithm, "FCM, GK, GGK or GG")->capture_default_str();
    fit->add_option("--out", model_out, "model JSON")->required();
    fit->add_option("--memberships-out", memberships_out, "optional N x c membership CSV");

    FitFlags cmp_flags;
    std::vector<std::string> algorithms{"GK", "GGK", "GG"};
    auto* compare = app.add_subcommand("compare", "fit several algorithms and score them against labels");
    add_shared_flags(compare, cmp_flags);
    compare->add_option("--algorithms", algorithms, "comma-separated list")->delimiter(',')->capture_default_str();

    std::string render_input;
    std::string render_model;
    std::string render_out;
    auto* render = app.add_subcommand("render", "draw a 2-D partition as SVG");
    render->add_option("--input", render_input, "points CSV")->required();
    render->add_option("--model", render_model, "model JSON")->required();
    render->add_option("--out", render_out, "output SVG")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*generate) return cmd_generate(scenario, gen_out, gen_seed, seed_opt->count() > 0);
        if (*fit) return cmd_fit(fit_flags, model_out, memberships_out);
        if (*compare) return cmd_compare(cmp_flags, algorithms);
        if (*render) return cmd_render(render_input, render_model, render_out);
    } catch (const fuzzy::DegenerateCluster& e) {
        std::cerr << "error: degenerate cluster " << e.cluster() << ": " << e.what() << "\n";
        return kDegenerate;
    } catch (const fuzzy::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
