#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "idpm/cli/cli.hpp"
#include "idpm/errors.hpp"

namespace idpm::cli {

namespace {

void add_common(CLI::App* app, CommonOptions& c) {
    app->add_option("--config", c.config, "JSON run configuration")->check(CLI::ExistingFile);
    app->add_option("--out-dir", c.out_dir, "Output directory (overrides config and IDPM_OUTPUT_DIR)");
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Black-box inversion with conditional diffusion", "idpm"};
    app.require_subcommand(1);
    app.fallthrough(false);

    DatasetOptions ds;
    auto* dataset = app.add_subcommand("dataset", "Generate a labeled corpus and export it");
    add_common(dataset, ds.common);
    dataset->add_option("--kind", ds.kind, "annulus, gaussian-mixture or clustered-identities");
    dataset->add_option("--n", ds.count, "Number of samples");
    dataset->add_option("--dim", ds.dim, "Input dimension");
    dataset->add_option("--seed", ds.seed, "Dataset seed");
    dataset->add_option("--attribute", ds.attribute, "Exported attribute or none");
    dataset->add_option("--embedder", ds.embedder, "radius or frozen_mlp");
    dataset->add_option("--embed-dim", ds.embed_dim, "Output width of the frozen MLP embedder");
    dataset->add_option("--embedder-seed", ds.embedder_seed, "Seed of the frozen MLP embedder");
    dataset->add_option("--out", ds.out, "Dataset record path");
    dataset->add_option("--svg", ds.svg, "Scatter plot of the inputs (d = 2 only)");

    TrainOptions tr;
    auto* train = app.add_subcommand("train", "Train the conditional denoiser");
    add_common(train, tr.common);
    train->add_option("--dataset", tr.dataset, "Dataset record (default: generate from config)")
        ->check(CLI::ExistingFile);
    train->add_option("--checkpoint", tr.checkpoint, "Checkpoint output path");
    train->add_option("--seed", tr.seed, "Training seed");
    train->add_option("--batches", tr.batches, "Number of optimizer steps");
    train->add_option("--batch-size", tr.batch_size, "Minibatch size");
    train->add_option("--lr", tr.learning_rate, "Adam learning rate");
    train->add_option("--ema", tr.ema_rate, "EMA rate");
    train->add_option("--steps", tr.steps, "Diffusion steps T");
    train->add_option("--schedule", tr.schedule, "cosine or linear");
    train->add_option("--dropout", tr.dropout, "Conditioning dropout probability");
    train->add_option("--hidden", tr.hidden, "Hidden widths, comma separated");
    train->add_option("--time-embed", tr.time_embed, "Time embedding width");
    train->add_flag("--attributes", tr.attributes, "Condition on the dataset attribute");
    train->add_option("--progress", tr.progress, "Print the loss every N batches");

    SampleOptions sm;
    auto* sample = app.add_subcommand("sample", "Draw inputs whose embedding matches a target");
    add_common(sample, sm.common);
    sample->add_option("--checkpoint", sm.checkpoint, "Trained checkpoint")->required()->check(CLI::ExistingFile);
    sample->add_option("--target-y", sm.target_y, "Target embedding, comma separated")->required();
    sample->add_option("--target-a", sm.target_a, "Target attribute, comma separated");
    sample->add_option("--n", sm.n, "Number of samples");
    sample->add_option("--guidance", sm.guidance, "Guidance scale s");
    sample->add_option("--seed", sm.seed, "Sampling seed");
    sample->add_option("--respace", sm.respace, "Number of sampling steps");
    sample->add_option("--threshold", sm.threshold, "auto, on or off");
    sample->add_option("--percentile", sm.percentile, "Dynamic thresholding percentile");
    sample->add_option("--variance", sm.variance, "posterior or beta");
    sample->add_option("--out", sm.out, "Samples CSV path");
    sample->add_option("--svg", sm.svg, "Scatter plot of the samples (d = 2 only)");
    sample->add_flag("--live", sm.live, "Use the live parameters instead of the EMA");

    InterpolateOptions ip;
    auto* interpolate = app.add_subcommand("interpolate", "Interpolate between two embeddings");
    add_common(interpolate, ip.common);
    interpolate->add_option("--from", ip.from, "Start embedding")->required();
    interpolate->add_option("--to", ip.to, "End embedding")->required();
    interpolate->add_option("--points", ip.points, "Grid points including both ends");
    interpolate->add_option("--mode", ip.mode, "slerp or lerp")->check(CLI::IsMember({"slerp", "lerp"}));
    interpolate->add_option("--out", ip.out, "Grid CSV path");
    interpolate->add_option("--checkpoint", ip.checkpoint, "Also sample at every grid point")
        ->check(CLI::ExistingFile);
    interpolate->add_option("--n", ip.n, "Samples per grid point");
    interpolate->add_option("--guidance", ip.guidance, "Guidance scale s");
    interpolate->add_option("--seed", ip.seed, "Sampling seed");

    DirectionOptions dr;
    auto* direction = app.add_subcommand("direction", "Find a traversal direction in embedding space");
    add_common(direction, dr.common);
    direction->add_option("--dataset", dr.dataset, "Dataset record")->required()->check(CLI::ExistingFile);
    direction->add_option("--method", dr.method, "custom, percentile or pca")
        ->check(CLI::IsMember({"custom", "percentile", "pca"}));
    direction->add_option("--feature", dr.feature, "Metadata feature for custom and percentile");
    direction->add_option("--axis", dr.axis, "Principal axis for pca");
    direction->add_option("--out", dr.out, "Direction record path");
    direction->add_option("--basis-out", dr.basis_out, "PCA basis record path");

    SweepOptions sw;
    auto* sweep = app.add_subcommand("sweep", "Identity error and diversity across guidance scales");
    add_common(sweep, sw.common);
    sweep->add_option("--checkpoint", sw.checkpoint, "Trained checkpoint")->required()->check(CLI::ExistingFile);
    sweep->add_option("--s", sw.scales, "Guidance scales, comma separated");
    sweep->add_option("--target-y", sw.targets, "Target embedding (repeatable)");
    sweep->add_option("--n-targets", sw.n_targets, "Targets drawn from the training distribution when none given");
    sweep->add_option("--per-target", sw.per_target, "Samples per target and scale");
    sweep->add_option("--seed", sw.seed, "Sweep seed");
    sweep->add_option("--metric", sw.metric, "euclidean or angular");
    sweep->add_option("--respace", sw.respace, "Number of sampling steps");
    sweep->add_option("--out", sw.out, "Sweep CSV path");

    EvalOptions ev;
    auto* evaluate = app.add_subcommand("eval", "Identity error, diversity or verification accuracy");
    add_common(evaluate, ev.common);
    evaluate->add_option("--samples", ev.samples, "Samples CSV")->check(CLI::ExistingFile);
    evaluate->add_option("--checkpoint", ev.checkpoint, "Checkpoint providing the embedder")
        ->check(CLI::ExistingFile);
    evaluate->add_option("--target-y", ev.target_y, "Target embedding for identity error");
    evaluate->add_option("--pairs", ev.pairs, "Pairs CSV with columns distance,same")->check(CLI::ExistingFile);
    evaluate->add_option("--dataset", ev.dataset, "Dataset record to draw verification pairs from")
        ->check(CLI::ExistingFile);
    evaluate->add_option("--n-pairs", ev.n_pairs, "Pairs drawn from the dataset");
    evaluate->add_option("--feature", ev.feature, "Metadata feature defining identity");
    evaluate->add_option("--seed", ev.seed, "Pair sampling seed");
    evaluate->add_option("--metric", ev.metric, "angular or euclidean");
    evaluate->add_option("--kfold", ev.kfold, "Folds for threshold selection");
    evaluate->add_option("--out", ev.out, "Verification CSV path");

    OracleCompareOptions oc;
    auto* compare = app.add_subcommand("oracle-compare",
                                       "Compare diffusion samples with the rejection oracle and white-box descent");
    add_common(compare, oc.common);
    compare->add_option("--checkpoint", oc.checkpoint, "Trained checkpoint")->required()->check(CLI::ExistingFile);
    compare->add_option("--target-y", oc.target_y, "Target embedding")->required();
    compare->add_option("--tolerance", oc.tolerance, "Oracle acceptance tolerance");
    compare->add_option("--n", oc.n, "Samples per method");
    compare->add_option("--guidance", oc.guidance, "Guidance scale s");
    compare->add_option("--seed", oc.seed, "Seed");
    compare->add_option("--restarts", oc.restarts, "Gradient-descent restarts");
    compare->add_option("--gd-step", oc.gd_step, "Gradient-descent step size");
    compare->add_option("--max-draws", oc.max_draws, "Oracle draw budget");
    compare->add_option("--out", oc.out, "Comparison CSV path");

    if (!args.empty() && !args.front().empty() && args.front().front() != '-') {
        bool known = false;
        for (const auto* sub : app.get_subcommands({})) known = known || sub->get_name() == args.front();
        if (!known) {
            err << "error: unknown subcommand '" << args.front() << "'\n\n" << app.help();
            return exit_usage;
        }
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n";
        const CLI::App* scope = &app;
        for (const auto* sub : app.get_subcommands()) scope = sub;
        err << scope->help();
        return exit_usage;
    }

    try {
        if (dataset->parsed()) return run_dataset(ds, out);
        if (train->parsed()) return run_train(tr, out);
        if (sample->parsed()) return run_sample(sm, out);
        if (interpolate->parsed()) return run_interpolate(ip, out);
        if (direction->parsed()) return run_direction(dr, out);
        if (sweep->parsed()) return run_sweep(sw, out);
        if (evaluate->parsed()) return run_eval(ev, out);
        if (compare->parsed()) return run_oracle_compare(oc, out);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_runtime;
    }
    err << app.help();
    return exit_usage;
}

int run_cli(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run_cli(args, std::cout, std::cerr);
}

} // namespace idpm::cli
