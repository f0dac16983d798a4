#pragma once

#include "cryscreen/features.hpp"
#include "cryscreen/kernel.hpp"
#include "cryscreen/synth.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

namespace cryscreen::cli {

enum ExitCode : int {
    kExitSuccess = 0,
    kExitUsage = 1,
    kExitData = 2,
    kExitNonConvergence = 3,
};

struct ExtractOptions {
    std::filesystem::path input_dir;
    /// Defaults to input_dir / "manifest.csv".
    std::optional<std::filesystem::path> manifest;
    std::filesystem::path out;
    FeatureConfig config;
    bool pad_short = false;
};

struct TrainOptions {
    std::filesystem::path features;
    KernelFamily family = KernelFamily::Polynomial;
    std::uint64_t seed = 42;
    std::filesystem::path model_out;
    /// Default paths derive from model_out: <stem>.grid.csv, <stem>.test.csv, <stem>.split.csv.
    std::optional<std::filesystem::path> grid_report;
    std::optional<std::filesystem::path> test_out;
    std::optional<std::filesystem::path> split_out;

    std::vector<int> degree_grid;     // empty: 1..8
    std::vector<double> gamma_grid;   // empty: 1/D * 3^k, k = 0..7
    std::vector<double> cost_grid;    // empty: 0.01 .. 30
    double poly_cost = 1.0;

    // Explicit parameters skip the search.
    std::optional<int> degree;
    std::optional<double> gamma;
    std::optional<double> cost;

    double tol = 1e-3;
    std::size_t max_iter = 10'000'000;
};

struct EvaluateOptions {
    std::filesystem::path model;
    std::filesystem::path features;
    std::optional<std::filesystem::path> report_csv;
};

struct PredictOptions {
    std::filesystem::path model;
    /// A .wav file or a features CSV.
    std::filesystem::path input;
    bool pad_short = false;
};

struct SynthOptions {
    SynthSpec spec;
    std::filesystem::path out_dir;
};

int cmd_extract(const ExtractOptions& opt, std::ostream& out, std::ostream& err);
int cmd_train(const TrainOptions& opt, std::ostream& out, std::ostream& err);
int cmd_evaluate(const EvaluateOptions& opt, std::ostream& out, std::ostream& err);
int cmd_predict(const PredictOptions& opt, std::ostream& out, std::ostream& err);
int cmd_synth(const SynthOptions& opt, std::ostream& out, std::ostream& err);

}  // namespace cryscreen::cli
