#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace idpm::cli {

struct CommonOptions {
    std::string config;
    std::string out_dir;
};

struct DatasetOptions {
    CommonOptions common;
    std::optional<std::string> kind;
    std::optional<std::size_t> count;
    std::optional<std::size_t> dim;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> attribute;
    std::optional<std::string> embedder;
    std::size_t embed_dim = 8;
    std::uint64_t embedder_seed = 0;
    std::optional<std::string> out;
    std::optional<std::string> svg;
};

struct TrainOptions {
    CommonOptions common;
    std::optional<std::string> dataset;
    std::optional<std::string> checkpoint;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> batches;
    std::optional<std::size_t> batch_size;
    std::optional<double> learning_rate;
    std::optional<double> ema_rate;
    std::optional<std::size_t> steps;
    std::optional<std::string> schedule;
    std::optional<double> dropout;
    std::optional<std::string> hidden;
    std::optional<std::size_t> time_embed;
    bool attributes = false;
    std::size_t progress = 0;
};

struct SampleOptions {
    CommonOptions common;
    std::string checkpoint;
    std::string target_y;
    std::optional<std::string> target_a;
    std::size_t n = 500;
    std::optional<double> guidance;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> respace;
    std::optional<std::string> threshold;
    std::optional<double> percentile;
    std::optional<std::string> variance;
    std::optional<std::string> out;
    std::optional<std::string> svg;
    bool live = false;
};

struct InterpolateOptions {
    CommonOptions common;
    std::string from;
    std::string to;
    std::size_t points = 5;
    std::string mode = "slerp";
    std::string out = "interpolation.csv";
    std::optional<std::string> checkpoint;
    std::size_t n = 100;
    std::optional<double> guidance;
    std::optional<std::uint64_t> seed;
};

struct DirectionOptions {
    CommonOptions common;
    std::string dataset;
    std::string method = "percentile";
    std::optional<std::string> feature;
    std::size_t axis = 0;
    std::string out = "direction.json";
    std::optional<std::string> basis_out;
};

struct SweepOptions {
    CommonOptions common;
    std::string checkpoint;
    std::optional<std::string> scales;
    std::vector<std::string> targets;
    std::size_t n_targets = 4;
    std::optional<std::size_t> per_target;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> metric;
    std::optional<std::size_t> respace;
    std::optional<std::string> out;
};

struct EvalOptions {
    CommonOptions common;
    std::optional<std::string> samples;
    std::optional<std::string> checkpoint;
    std::optional<std::string> target_y;
    std::optional<std::string> pairs;
    std::optional<std::string> dataset;
    std::size_t n_pairs = 1000;
    std::string feature = "identity";
    std::uint64_t seed = 0;
    std::optional<std::string> metric;
    std::size_t kfold = 1;
    std::optional<std::string> out;
};

struct OracleCompareOptions {
    CommonOptions common;
    std::string checkpoint;
    std::string target_y;
    double tolerance = 0.05;
    std::size_t n = 500;
    std::optional<double> guidance;
    std::optional<std::uint64_t> seed;
    std::size_t restarts = 20;
    double gd_step = 0.1;
    std::size_t max_draws = 10'000'000;
    std::string out = "oracle_compare.csv";
};

int run_dataset(const DatasetOptions& o, std::ostream& out);
int run_train(const TrainOptions& o, std::ostream& out);
int run_sample(const SampleOptions& o, std::ostream& out);
int run_interpolate(const InterpolateOptions& o, std::ostream& out);
int run_direction(const DirectionOptions& o, std::ostream& out);
int run_sweep(const SweepOptions& o, std::ostream& out);
int run_eval(const EvalOptions& o, std::ostream& out);
int run_oracle_compare(const OracleCompareOptions& o, std::ostream& out);

} // namespace idpm::cli
