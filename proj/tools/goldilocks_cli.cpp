#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "goldilocks/runner.hpp"

namespace {

int report_error(const std::exception& e, const std::string& out_dir) {
    gold::Json err = gold::error_json(e);
    std::cerr << err.dump() << "\n";
    if (!out_dir.empty()) {
        try {
            std::filesystem::create_directories(out_dir);
            gold::write_atomic(std::filesystem::path(out_dir) / "error.json", err.dump(2) + "\n");
        } catch (const std::exception&) {
        }
    }
    return dynamic_cast<const gold::SchemaError*>(&e) ? 2 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kobayashi-geometry experiments on bounded domains"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    std::uint64_t seed = 0;
    unsigned threads = 0;

    auto* run = app.add_subcommand("run", "run the experiment described by a config file");
    run->add_option("--config", config_path, "experiment config (JSON)")->required()->check(CLI::ExistingFile);
    run->add_option("--out", out_dir, "output directory (overrides output_dir)");
    auto* seed_opt = run->add_option("--seed", seed, "RNG seed (overrides seed)");
    auto* threads_opt = run->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);

    auto* corpus = app.add_subcommand("corpus", "list the built-in domains and maps");
    bool as_json = false;
    corpus->add_flag("--json", as_json, "print as JSON");

    auto* validate = app.add_subcommand("validate-config", "check a config file against the schema");
    validate->add_option("--config", config_path, "experiment config (JSON)")->required()->check(CLI::ExistingFile);

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) {
        std::string target = out_dir;
        try {
            gold::ExperimentConfig cfg = gold::load_config(config_path);
            target = out_dir.empty() ? cfg.output_dir : out_dir;
            gold::RunOverrides ov;
            if (!out_dir.empty()) ov.output_dir = out_dir;
            if (*seed_opt) ov.seed = seed;
            if (*threads_opt) ov.threads = threads;
            gold::RunManifest m = gold::run(cfg, ov);
            std::cout << m.to_json().dump(2) << "\n";
            return 0;
        } catch (const std::exception& e) {
            return report_error(e, target);
        }
    }
    if (corpus->parsed()) {
        if (as_json)
            std::cout << gold::corpus_json().dump(2) << "\n";
        else
            std::cout << gold::corpus_listing();
        return 0;
    }
    if (validate->parsed()) {
        try {
            gold::ExperimentConfig cfg = gold::load_config(config_path);
            std::cout << gold::Json{{"status", "ok"}, {"experiment", gold::to_string(cfg.kind)}}.dump() << "\n";
            return 0;
        } catch (const std::exception& e) {
            return report_error(e, "");
        }
    }
    return 0;
}
