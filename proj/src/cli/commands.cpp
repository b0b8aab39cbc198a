#include "commands.hpp"

#include <cmath>
#include <filesystem>
#include <limits>
#include <map>
#include <ostream>
#include <random>

#include <fmt/format.h>
#include <json.hpp>

#include "idpm/diffusion/sampler.hpp"
#include "idpm/diffusion/trainer.hpp"
#include "idpm/errors.hpp"
#include "idpm/eval/baselines.hpp"
#include "idpm/eval/metrics.hpp"
#include "idpm/eval/sweep.hpp"
#include "idpm/eval/verification.hpp"
#include "idpm/io/checkpoint.hpp"
#include "idpm/io/config.hpp"
#include "idpm/io/csv.hpp"
#include "idpm/io/records.hpp"
#include "idpm/io/svg.hpp"
#include "idpm/latent/direction.hpp"
#include "idpm/latent/interpolate.hpp"
#include "idpm/latent/pca.hpp"
#include "idpm/oracle/dataset.hpp"
#include "idpm/oracle/distance.hpp"

namespace idpm::cli {

namespace fs = std::filesystem;

namespace {

Vector parse_list(const std::string& text, const std::string& flag) {
    Vector out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = std::min(text.find(',', start), text.size());
        const std::string item = text.substr(start, end - start);
        try {
            out.push_back(io::parse_double(item));
        } catch (const FormatError&) {
            throw ConfigError(flag + ": '" + item + "' is not a number");
        }
        start = end + 1;
    }
    return out;
}

std::vector<std::size_t> parse_sizes(const std::string& text, const std::string& flag) {
    std::vector<std::size_t> out;
    for (double v : parse_list(text, flag)) {
        if (!(v >= 1.0) || v != std::floor(v)) throw ConfigError(flag + ": expected positive integers");
        out.push_back(static_cast<std::size_t>(v));
    }
    return out;
}

io::RunConfig load_config(const CommonOptions& c) {
    io::RunConfig cfg = c.config.empty() ? io::RunConfig{} : io::load_run_config(c.config);
    io::apply_environment(cfg);
    if (!c.out_dir.empty()) cfg.output.directory = c.out_dir;
    if (!cfg.output.directory.empty()) fs::create_directories(cfg.output.directory);
    return cfg;
}

oracle::EmbedderPtr checkpoint_embedder(const io::Checkpoint& ckpt) {
    if (ckpt.embedder.empty()) return nullptr;
    return oracle::make_embedder(ckpt.embedder);
}

oracle::EmbedderPtr require_embedder(const io::Checkpoint& ckpt) {
    auto emb = checkpoint_embedder(ckpt);
    if (!emb) throw StateError("checkpoint carries no embedder descriptor");
    return emb;
}

std::optional<oracle::DatasetSpec> checkpoint_dataset(const io::Checkpoint& ckpt) {
    if (!ckpt.train.contains("dataset")) return std::nullopt;
    return oracle::DatasetSpec::from_json(ckpt.train.at("dataset"));
}

bool is_radius(const nlohmann::json& desc) {
    return desc.is_object() && desc.value("kind", std::string{}) == "radius";
}

void check_width(const Vector& v, std::size_t expected, const std::string& flag) {
    if (v.size() != expected) {
        throw ConfigError(flag + " has " + std::to_string(v.size()) + " entries, the model expects " +
                          std::to_string(expected));
    }
}

std::uint64_t require_seed(std::optional<std::uint64_t> flag, std::optional<std::uint64_t> config) {
    if (flag) return *flag;
    if (config) return *config;
    throw ConfigError("--seed is required (or set a seed in the config)");
}

diffusion::SampleConfig sample_config(const io::RunConfig& cfg, std::optional<double> guidance,
                                      std::optional<std::size_t> respace, std::uint64_t seed) {
    diffusion::SampleConfig sc = cfg.sample;
    if (guidance) sc.guidance = *guidance;
    if (respace) sc.respaced_steps = *respace;
    sc.seed = seed;
    return sc;
}

Vector identity_distances(const nn::Matrix& samples, std::span<const double> target, const oracle::Embedder* emb) {
    Vector d(samples.rows(), std::numeric_limits<double>::quiet_NaN());
    if (emb == nullptr) return d;
    for (std::size_t r = 0; r < samples.rows(); ++r) {
        d[r] = eval::embedding_distance(emb->embed(samples.row(r)), target, eval::Metric::euclidean);
    }
    return d;
}

} // namespace

int run_dataset(const DatasetOptions& o, std::ostream& out) {
    io::RunConfig cfg = load_config(o.common);
    if (o.kind) cfg.dataset.kind = oracle::parse_distribution_kind(*o.kind);
    if (o.count) cfg.dataset.count = *o.count;
    if (o.dim) cfg.dataset.dim = *o.dim;
    if (o.seed) cfg.dataset.seed = *o.seed;
    if (o.attribute) cfg.dataset.attribute = *o.attribute;
    if (o.embedder) {
        if (*o.embedder == "radius") {
            cfg.embedder = {{"kind", "radius"}, {"d", cfg.dataset.dim}};
        } else if (*o.embedder == "frozen_mlp") {
            cfg.embedder = {{"kind", "frozen_mlp"}, {"d", cfg.dataset.dim}, {"k", o.embed_dim},
                            {"seed", o.embedder_seed}};
        } else {
            throw ConfigError("--embedder: expected radius or frozen_mlp");
        }
    }
    cfg.validate();
    const auto emb = cfg.make_embedder();
    io::DatasetRecord rec{cfg.dataset, emb->descriptor(), oracle::generate_dataset(cfg.dataset, *emb)};
    const fs::path path = cfg.output.resolve(o.out ? fs::path(*o.out) : cfg.output.dataset);
    io::save_dataset(rec, path);
    out << "wrote " << rec.samples.size() << " samples to " << path.string() << "\n";
    if (o.svg) {
        nn::Matrix xs = io::to_training_set(rec.samples, false).x;
        io::ScatterOptions so;
        so.unit_circle = is_radius(rec.embedder);
        so.extent = 2.0;
        io::write_scatter_svg(xs, cfg.output.resolve(*o.svg), so);
    }
    return 0;
}

int run_train(const TrainOptions& o, std::ostream& out) {
    io::RunConfig cfg = load_config(o.common);
    std::vector<oracle::LabeledSample> samples;
    if (o.dataset) {
        io::DatasetRecord rec = io::load_dataset(*o.dataset);
        cfg.dataset = rec.spec;
        cfg.embedder = rec.embedder;
        samples = std::move(rec.samples);
    }
    if (o.seed) cfg.train_seed = *o.seed;
    if (cfg.train_seed) cfg.train.seed = *cfg.train_seed;
    if (o.batches) cfg.train.total_batches = *o.batches;
    if (o.batch_size) cfg.train.batch_size = *o.batch_size;
    if (o.learning_rate) cfg.train.learning_rate = *o.learning_rate;
    if (o.ema_rate) cfg.train.ema_rate = *o.ema_rate;
    if (o.steps) cfg.train.diffusion_steps = *o.steps;
    if (o.schedule) cfg.train.schedule = diffusion::parse_schedule_kind(*o.schedule);
    if (o.dropout) cfg.train.cond_dropout = *o.dropout;
    if (o.hidden) cfg.model.hidden_dims = parse_sizes(*o.hidden, "--hidden");
    if (o.time_embed) cfg.model.time_embed_dim = *o.time_embed;
    if (o.attributes) cfg.model.use_attributes = true;
    if (!cfg.train_seed) throw ConfigError("--seed is required (or set train.seed in the config)");
    cfg.validate_for("train");

    const auto emb = cfg.make_embedder();
    if (samples.empty()) samples = oracle::generate_dataset(cfg.dataset, *emb);
    const diffusion::TrainingSet data = io::to_training_set(samples, cfg.model.use_attributes);
    const nn::DenoiserTopology topo = cfg.topology();
    if (data.x.cols() != topo.data_dim || data.y.cols() != topo.id_dim) {
        throw ConfigError("dataset widths do not match the embedder and dataset.dim");
    }

    nn::ConditionalDenoiser model(topo, cfg.train.seed);
    const auto schedule = diffusion::make_schedule(cfg.train.schedule, cfg.train.diffusion_steps);
    diffusion::Trainer trainer(model, schedule, cfg.train);
    const auto losses = trainer.fit(data, [&](std::size_t batch, double loss) {
        if (o.progress > 0 && (batch + 1) % o.progress == 0) {
            out << fmt::format("batch {} loss {:.6f}\n", batch + 1, loss);
        }
    });

    const nlohmann::json full = io::to_json(cfg);
    nlohmann::json meta{{"dataset", cfg.dataset.to_json()},
                        {"model", full.at("model")},
                        {"train", full.at("train")}};
    const auto ckpt = io::make_checkpoint(model, trainer.ema(), cfg.train.schedule, schedule, emb->descriptor(), meta);
    const fs::path path = cfg.output.resolve(o.checkpoint ? fs::path(*o.checkpoint) : cfg.output.checkpoint);
    io::save_checkpoint(ckpt, path);

    double tail = 0.0;
    const std::size_t window = std::min<std::size_t>(losses.size(), 100);
    for (std::size_t i = losses.size() - window; i < losses.size(); ++i) tail += losses[i];
    out << fmt::format("trained {} batches, mean loss over the last {}: {:.6f}\n", losses.size(), window,
                       window ? tail / static_cast<double>(window) : 0.0);
    out << "wrote checkpoint to " << path.string() << "\n";
    return 0;
}

int run_sample(const SampleOptions& o, std::ostream& out) {
    io::RunConfig cfg = load_config(o.common);
    const io::Checkpoint ckpt = io::load_checkpoint(o.checkpoint);
    const nn::ConditionalDenoiser model = ckpt.model(!o.live);
    const auto& topo = model.topology();

    const Vector y = parse_list(o.target_y, "--target-y");
    check_width(y, topo.id_dim, "--target-y");
    std::optional<Vector> a;
    if (o.target_a) {
        if (!topo.has_attributes()) throw ConfigError("--target-a given but the model has no attribute input");
        a = parse_list(*o.target_a, "--target-a");
        check_width(*a, topo.attr_dim, "--target-a");
    }
    if (o.n == 0) throw ConfigError("--n must be positive");

    diffusion::SampleConfig sc = sample_config(cfg, o.guidance, o.respace, require_seed(o.seed, cfg.sample_seed));
    if (o.threshold) sc.threshold = diffusion::parse_threshold_mode(*o.threshold);
    if (o.percentile) sc.threshold_percentile = *o.percentile;
    if (o.variance) sc.variance = diffusion::parse_variance_mode(*o.variance);
    sc = sc.validated(ckpt.schedule.steps());

    std::optional<std::span<const double>> a_span;
    if (a) a_span = std::span<const double>(*a);
    const nn::Matrix xs = diffusion::sample(model, y, a_span, ckpt.schedule, sc, o.n);

    const auto emb = checkpoint_embedder(ckpt);
    const fs::path path = cfg.output.resolve(o.out ? fs::path(*o.out) : cfg.output.samples);
    io::write_csv(io::samples_table(xs, identity_distances(xs, y, emb.get())), path);
    out << "wrote " << xs.rows() << " samples to " << path.string() << "\n";
    if (o.svg) {
        io::ScatterOptions so;
        so.unit_circle = is_radius(ckpt.embedder);
        so.title = fmt::format("target {} s={}", o.target_y, sc.guidance);
        io::write_scatter_svg(xs, cfg.output.resolve(*o.svg), so);
    }
    return 0;
}

int run_interpolate(const InterpolateOptions& o, std::ostream& out) {
    io::RunConfig cfg = load_config(o.common);
    const Vector from = parse_list(o.from, "--from");
    const Vector to = parse_list(o.to, "--to");
    if (from.size() != to.size()) throw ConfigError("--from and --to differ in dimension");
    if (o.points < 2) throw ConfigError("--points must be at least 2");

    std::vector<Vector> grid;
    io::CsvTable table;
    table.header = {"index", "tau"};
    for (std::size_t i = 0; i < from.size(); ++i) table.header.push_back("y_" + std::to_string(i));
    for (std::size_t i = 0; i < o.points; ++i) {
        const double tau = static_cast<double>(i) / static_cast<double>(o.points - 1);
        grid.push_back(o.mode == "lerp" ? latent::lerp(from, to, tau) : latent::slerp(from, to, tau));
        std::vector<io::CsvCell> row{static_cast<std::int64_t>(i), tau};
        for (double v : grid.back()) row.emplace_back(v);
        table.rows.push_back(std::move(row));
    }
    const fs::path path = cfg.output.resolve(o.out);
    io::write_csv(table, path);
    out << "wrote " << grid.size() << " grid points to " << path.string() << "\n";

    if (o.checkpoint) {
        const io::Checkpoint ckpt = io::load_checkpoint(*o.checkpoint);
        const nn::ConditionalDenoiser model = ckpt.model();
        check_width(from, model.topology().id_dim, "--from");
        const auto emb = checkpoint_embedder(ckpt);
        diffusion::SampleConfig sc =
            sample_config(cfg, o.guidance, std::nullopt, require_seed(o.seed, cfg.sample_seed));
        sc = sc.validated(ckpt.schedule.steps());
        for (std::size_t i = 0; i < grid.size(); ++i) {
            sc.seed = eval::cell_seed(require_seed(o.seed, cfg.sample_seed), i);
            const nn::Matrix xs = diffusion::sample(model, grid[i], std::nullopt, ckpt.schedule, sc, o.n);
            fs::path sp = path;
            sp.replace_filename(path.stem().string() + "_" + std::to_string(i) + ".csv");
            io::write_csv(io::samples_table(xs, identity_distances(xs, grid[i], emb.get())), sp);
        }
        out << "wrote " << o.n << " samples per grid point next to " << path.string() << "\n";
    }
    return 0;
}

int run_direction(const DirectionOptions& o, std::ostream& out) {
    io::RunConfig cfg = load_config(o.common);
    const io::DatasetRecord rec = io::load_dataset(o.dataset);
    latent::Direction dir;
    if (o.method == "pca") {
        const latent::PcaBasis basis = latent::fit_pca(io::embeddings_matrix(rec.samples));
        dir = latent::pca_direction(basis, o.axis);
        if (o.basis_out) io::write_json(io::to_json(basis), cfg.output.resolve(*o.basis_out));
    } else {
        if (!o.feature) throw ConfigError("--feature is required for --method " + o.method);
        if (o.method == "custom") {
            for (const auto& s : rec.samples) {
                const auto it = s.metadata.find(*o.feature);
                if (it != s.metadata.end() && it->second != 0.0 && it->second != 1.0) {
                    throw ConfigError("feature '" + *o.feature + "' is not binary; use --method percentile");
                }
            }
            const latent::GroupSplit split = latent::percentile_split(rec.samples, *o.feature);
            dir = latent::custom_direction(latent::gather_embeddings(rec.samples, split.group_a),
                                           latent::gather_embeddings(rec.samples, split.group_b), *o.feature,
                                           latent::Provenance::binary_split);
        } else {
            dir = latent::metadata_direction(rec.samples, *o.feature);
        }
    }
    const fs::path path = cfg.output.resolve(o.out);
    io::write_json(io::to_json(dir), path);
    out << "wrote " << latent::to_string(dir.provenance) << " direction to " << path.string() << "\n";
    return 0;
}

int run_sweep(const SweepOptions& o, std::ostream& out) {
    io::RunConfig cfg = load_config(o.common);
    const io::Checkpoint ckpt = io::load_checkpoint(o.checkpoint);
    const nn::ConditionalDenoiser model = ckpt.model();
    const auto emb = require_embedder(ckpt);

    eval::SweepSpec spec;
    spec.seed = require_seed(o.seed, cfg.sweep.seed);
    spec.scales = o.scales ? parse_list(*o.scales, "--s") : cfg.sweep.scales;
    spec.per_target = o.per_target ? *o.per_target : cfg.sweep.per_target;
    spec.metric = o.metric ? eval::parse_metric(*o.metric) : cfg.sweep.metric;
    spec.base = sample_config(cfg, std::nullopt, o.respace, spec.seed);
    for (const auto& t : o.targets) spec.targets.push_back(parse_list(t, "--target-y"));
    if (spec.targets.empty()) spec.targets = cfg.sweep.targets;
    if (spec.targets.empty()) {
        const auto ds = checkpoint_dataset(ckpt);
        if (!ds) throw ConfigError("--target-y is required (the checkpoint records no dataset to draw targets from)");
        const oracle::DataDistribution dist(*ds);
        std::mt19937_64 rng(eval::cell_seed(spec.seed, std::numeric_limits<std::size_t>::max()));
        for (std::size_t i = 0; i < o.n_targets; ++i) spec.targets.push_back(emb->embed(dist.draw(rng).x));
    }
    for (const auto& t : spec.targets) check_width(t, model.topology().id_dim, "--target-y");
    if (spec.scales.empty()) throw ConfigError("--s: no guidance scales");
    if (spec.per_target < 2) throw ConfigError("--per-target must be at least 2");

    const auto rows = eval::guidance_sweep(model, ckpt.schedule, *emb, spec);
    const fs::path path = cfg.output.resolve(o.out ? fs::path(*o.out) : cfg.output.sweep);
    io::write_csv(io::sweep_table(rows), path);
    for (const auto& r : rows) {
        out << fmt::format("s={} identity_error={:.6f} diversity={:.6f} n={}\n", r.guidance, r.identity_error,
                           r.diversity, r.samples);
    }
    out << "wrote " << rows.size() << " rows to " << path.string() << "\n";
    return 0;
}

namespace {

std::vector<eval::VerificationPair> pairs_from_csv(const io::CsvText& csv) {
    const std::size_t dcol = csv.column("distance");
    const std::size_t scol = csv.column("same");
    std::vector<eval::VerificationPair> pairs;
    for (const auto& row : csv.rows) {
        const double same = io::parse_double(row[scol]);
        if (same != 0.0 && same != 1.0) throw FormatError("same", "expected 0 or 1");
        pairs.push_back({io::parse_double(row[dcol]), same == 1.0});
    }
    return pairs;
}

std::vector<eval::VerificationPair> pairs_from_dataset(const io::DatasetRecord& rec, const std::string& feature,
                                                       std::size_t n, std::uint64_t seed, eval::Metric metric) {
    std::map<double, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < rec.samples.size(); ++i) {
        const auto it = rec.samples[i].metadata.find(feature);
        if (it == rec.samples[i].metadata.end()) throw ConfigError("sample lacks feature '" + feature + "'");
        groups[it->second].push_back(i);
    }
    std::vector<const std::vector<std::size_t>*> multi;
    for (const auto& [_, g] : groups) {
        if (g.size() > 1) multi.push_back(&g);
    }
    if (multi.empty() || groups.size() < 2) {
        throw ConfigError("feature '" + feature + "' needs at least two groups and one repeated value");
    }
    std::vector<Vector> ys;
    for (const auto& s : rec.samples) ys.push_back(s.y);
    const Vector mean = oracle::mean_embedding(ys);

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> any(0, rec.samples.size() - 1);
    std::uniform_int_distribution<std::size_t> pick_group(0, multi.size() - 1);
    std::vector<eval::VerificationPair> pairs;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t i = 0;
        std::size_t j = 0;
        if (k % 2 == 0) {
            const auto& g = *multi[pick_group(rng)];
            std::uniform_int_distribution<std::size_t> in(0, g.size() - 1);
            i = g[in(rng)];
            do j = g[in(rng)];
            while (j == i);
        } else {
            do {
                i = any(rng);
                j = any(rng);
            } while (rec.samples[i].metadata.at(feature) == rec.samples[j].metadata.at(feature));
        }
        const double d = eval::embedding_distance(ys[i], ys[j], metric, std::span<const double>(mean));
        pairs.push_back({d, k % 2 == 0});
    }
    return pairs;
}

} // namespace

int run_eval(const EvalOptions& o, std::ostream& out) {
    io::RunConfig cfg = load_config(o.common);
    if (o.samples) {
        if (!o.checkpoint) throw ConfigError("--checkpoint is required with --samples (it names the embedder)");
        if (!o.target_y) throw ConfigError("--target-y is required with --samples");
        const io::Checkpoint ckpt = io::load_checkpoint(*o.checkpoint);
        const auto emb = require_embedder(ckpt);
        const nn::Matrix xs = io::samples_from_csv(io::read_csv(*o.samples));
        const Vector y = parse_list(*o.target_y, "--target-y");
        check_width(y, emb->output_dim(), "--target-y");
        const eval::Metric metric = o.metric ? eval::parse_metric(*o.metric) : eval::Metric::euclidean;
        const nlohmann::json report{{"identity_error", eval::identity_error(xs, y, *emb, metric)},
                                    {"diversity", xs.rows() > 1 ? eval::diversity(xs) : 0.0},
                                    {"n", xs.rows()},
                                    {"metric", eval::to_string(metric)}};
        out << report.dump() << "\n";
        return 0;
    }

    std::vector<eval::VerificationPair> pairs;
    if (o.pairs) {
        pairs = pairs_from_csv(io::read_csv(*o.pairs));
    } else if (o.dataset) {
        const eval::Metric metric = o.metric ? eval::parse_metric(*o.metric) : eval::Metric::angular;
        pairs = pairs_from_dataset(io::load_dataset(*o.dataset), o.feature, o.n_pairs, o.seed, metric);
    } else {
        throw ConfigError("one of --samples, --pairs or --dataset is required");
    }
    if (pairs.empty()) throw ConfigError("no verification pairs");

    std::vector<eval::VerificationResult> rows;
    double accuracy = 0.0;
    if (o.kfold > 1) {
        const auto res = eval::verification_kfold(pairs, o.kfold);
        rows = res.folds;
        accuracy = res.mean_accuracy;
    } else {
        rows.push_back(eval::verification_accuracy(pairs));
        accuracy = rows.front().accuracy;
    }
    const fs::path path = cfg.output.resolve(o.out ? fs::path(*o.out) : cfg.output.verification);
    io::write_csv(io::verification_table(rows), path);
    out << fmt::format("verification accuracy {:.6f} over {} pairs\n", accuracy, pairs.size());
    out << "wrote " << rows.size() << " rows to " << path.string() << "\n";
    return 0;
}

int run_oracle_compare(const OracleCompareOptions& o, std::ostream& out) {
    io::RunConfig cfg = load_config(o.common);
    const io::Checkpoint ckpt = io::load_checkpoint(o.checkpoint);
    const nn::ConditionalDenoiser model = ckpt.model();
    const auto emb = require_embedder(ckpt);
    const auto spec = checkpoint_dataset(ckpt);
    if (!spec) throw StateError("checkpoint records no dataset; the oracle needs the data distribution");
    const Vector y = parse_list(o.target_y, "--target-y");
    check_width(y, model.topology().id_dim, "--target-y");
    if (o.n < 2) throw ConfigError("--n must be at least 2");
    const std::uint64_t seed = require_seed(o.seed, cfg.sample_seed);

    const oracle::DataDistribution dist(*spec);
    const eval::DataSampler data = [&dist](std::mt19937_64& rng) { return dist.draw(rng).x; };
    std::mt19937_64 rng_ref(eval::cell_seed(seed, 0));
    std::mt19937_64 rng_base(eval::cell_seed(seed, 1));
    const auto reference = eval::rejection_oracle(*emb, y, o.tolerance, data, o.n, rng_ref, o.max_draws);
    const auto baseline = eval::rejection_oracle(*emb, y, o.tolerance, data, o.n, rng_base, o.max_draws);

    diffusion::SampleConfig sc = sample_config(cfg, o.guidance, std::nullopt, eval::cell_seed(seed, 2));
    sc = sc.validated(ckpt.schedule.steps());
    const nn::Matrix diff = diffusion::sample(model, y, std::nullopt, ckpt.schedule, sc, o.n);

    io::CsvTable table{{"method", "energy_distance", "identity_error", "diversity", "n"}, {}};
    const auto add = [&](const std::string& name, const nn::Matrix& xs) {
        const double ed = eval::energy_distance(xs, reference.samples);
        const double ie = eval::identity_error(xs, y, *emb, eval::Metric::euclidean);
        const double dv = xs.rows() > 1 ? eval::diversity(xs) : 0.0;
        table.rows.push_back({name, ed, ie, dv, static_cast<std::int64_t>(xs.rows())});
        out << fmt::format("{}: energy_distance={:.6f} identity_error={:.6f} diversity={:.6f} n={}\n", name, ed, ie,
                           dv, xs.rows());
    };
    out << fmt::format("oracle acceptance rate {:.6f}\n", reference.acceptance_rate);
    add("oracle", baseline.samples);
    add("diffusion", diff);

    if (emb->has_gradient() && o.restarts > 0) {
        std::mt19937_64 rng_init(eval::cell_seed(seed, 3));
        nn::Matrix ends(o.restarts, model.topology().data_dim);
        eval::GdOptions gd;
        gd.step_size = o.gd_step;
        for (std::size_t r = 0; r < o.restarts; ++r) {
            const Vector init = dist.draw(rng_init).x;
            ends.set_row(r, eval::whitebox_gd_invert(*emb, y, init, gd).x);
        }
        add("whitebox-gd", ends);
    }
    const fs::path path = cfg.output.resolve(o.out);
    io::write_csv(table, path);
    out << "wrote " << table.rows.size() << " rows to " << path.string() << "\n";
    return 0;
}

} // namespace idpm::cli
