#include "cryscreen/commands.hpp"
#include "cryscreen/simd.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <utility>

namespace {

using namespace cryscreen;

void add_feature_flags(CLI::App* cmd, FeatureConfig& config) {
    cmd->add_option("--frame-len", config.frame_len, "Samples per analysis frame (power of two)");
    cmd->add_option("--hop", config.hop, "Samples between frame starts");
    cmd->add_option("--n-filters", config.n_filters, "Mel filters");
    cmd->add_option("--n-coeffs", config.n_coeffs, "Cepstral coefficients kept per frame");
    cmd->add_option("--window", config.window_length, "Samples taken from each clip");
    cmd->add_option("--alpha", config.alpha, "Pre-emphasis coefficient");
}

std::pair<double, double> parse_range(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw CLI::ValidationError("range", "expected LO,HI");
    return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Infant-cry screening: MFCC features and kernel SVM classification"};
    app.require_subcommand(1);
    std::uint64_t seed = 42;
    app.add_option("--seed", seed, "Seed for every random choice")->capture_default_str();
    // lets --seed follow the subcommand name as well
    app.fallthrough();

    // extract
    cli::ExtractOptions extract;
    std::string manifest;
    auto* extract_cmd = app.add_subcommand("extract", "WAV clips + manifest -> features CSV");
    extract_cmd->add_option("input", extract.input_dir, "Directory holding the WAV files")->required();
    extract_cmd->add_option("--manifest", manifest, "Manifest CSV (filename,label); default <input>/manifest.csv");
    extract_cmd->add_option("--out", extract.out, "Output features CSV")->required();
    extract_cmd->add_flag("--pad-short", extract.pad_short, "Zero-pad clips shorter than the window");
    add_feature_flags(extract_cmd, extract.config);

    // train
    cli::TrainOptions train;
    std::string kernel = "poly";
    std::string report, test_out, split_out;
    int degree = 0;
    double gamma = 0.0, cost = 0.0;
    auto* train_cmd = app.add_subcommand("train", "Split, grid search, refit and save a model");
    train_cmd->add_option("features", train.features, "Features CSV")->required();
    train_cmd->add_option("--kernel", kernel, "poly or rbf")->check(CLI::IsMember({"poly", "rbf"}));
    train_cmd->add_option("--out", train.model_out, "Model file to write")->required();
    train_cmd->add_option("--report", report, "Grid report CSV (default <out>.grid.csv)");
    train_cmd->add_option("--test-out", test_out, "Held-out test features (default <out>.test.csv)");
    train_cmd->add_option("--split-out", split_out, "Split manifest (default <out>.split.csv)");
    train_cmd->add_option("--degree-grid", train.degree_grid, "Polynomial degrees")->delimiter(',');
    train_cmd->add_option("--gamma-grid", train.gamma_grid, "Gamma values")->delimiter(',');
    train_cmd->add_option("--cost-grid", train.cost_grid, "C values (rbf)")->delimiter(',');
    train_cmd->add_option("--poly-cost", train.poly_cost, "C for the polynomial search")->capture_default_str();
    auto* degree_opt = train_cmd->add_option("--degree", degree, "Explicit degree (skips the search)");
    auto* gamma_opt = train_cmd->add_option("--gamma", gamma, "Explicit gamma (skips the search)");
    auto* cost_opt = train_cmd->add_option("--cost", cost, "Explicit C (skips the search)");
    train_cmd->add_option("--tol", train.tol, "KKT tolerance")->capture_default_str();
    train_cmd->add_option("--max-iter", train.max_iter, "SMO update budget")->capture_default_str();

    // evaluate
    cli::EvaluateOptions evaluate;
    std::string eval_csv;
    auto* eval_cmd = app.add_subcommand("evaluate", "Confusion matrix and metrics on a features CSV");
    eval_cmd->add_option("model", evaluate.model, "Model file")->required();
    eval_cmd->add_option("features", evaluate.features, "Features CSV")->required();
    eval_cmd->add_option("--out", eval_csv, "Metrics CSV to write");

    // predict
    cli::PredictOptions predict;
    auto* predict_cmd = app.add_subcommand("predict", "Classify a WAV file or features CSV rows");
    predict_cmd->add_option("model", predict.model, "Model file")->required();
    predict_cmd->add_option("input", predict.input, "WAV file or features CSV")->required();
    predict_cmd->add_flag("--pad-short", predict.pad_short, "Zero-pad clips shorter than the window");

    // synth
    cli::SynthOptions synth;
    std::string pos_f0, neg_f0;
    double noise = -1.0, jitter = -1.0;
    std::size_t harmonics = 0;
    auto* synth_cmd = app.add_subcommand("synth", "Write a synthetic two-class corpus");
    synth_cmd->add_option("--out", synth.out_dir, "Output directory")->required();
    synth_cmd->add_option("--n-pos", synth.spec.n_positive, "Asphyxia clips")->capture_default_str();
    synth_cmd->add_option("--n-neg", synth.spec.n_negative, "Normal clips")->capture_default_str();
    synth_cmd->add_option("--pos-f0", pos_f0, "Asphyxia F0 range LO,HI in Hz");
    synth_cmd->add_option("--neg-f0", neg_f0, "Normal F0 range LO,HI in Hz");
    synth_cmd->add_option("--noise", noise, "Noise amplitude for both classes");
    synth_cmd->add_option("--jitter", jitter, "Frequency jitter fraction for both classes");
    synth_cmd->add_option("--harmonics", harmonics, "Harmonic count for both classes");

    try {
        app.parse(argc, argv);
        if (pos_f0.size()) std::tie(synth.spec.positive.f0_min_hz, synth.spec.positive.f0_max_hz) = parse_range(pos_f0);
        if (neg_f0.size()) std::tie(synth.spec.negative.f0_min_hz, synth.spec.negative.f0_max_hz) = parse_range(neg_f0);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? cli::kExitSuccess : cli::kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return cli::kExitUsage;
    }

    if (*extract_cmd) {
        if (!manifest.empty()) extract.manifest = manifest;
        return cli::cmd_extract(extract, std::cout, std::cerr);
    }
    if (*train_cmd) {
        train.family = kernel == "rbf" ? KernelFamily::Rbf : KernelFamily::Polynomial;
        train.seed = seed;
        if (!report.empty()) train.grid_report = report;
        if (!test_out.empty()) train.test_out = test_out;
        if (!split_out.empty()) train.split_out = split_out;
        if (*degree_opt) train.degree = degree;
        if (*gamma_opt) train.gamma = gamma;
        if (*cost_opt) train.cost = cost;
        return cli::cmd_train(train, std::cout, std::cerr);
    }
    if (*eval_cmd) {
        if (!eval_csv.empty()) evaluate.report_csv = eval_csv;
        return cli::cmd_evaluate(evaluate, std::cout, std::cerr);
    }
    if (*predict_cmd) return cli::cmd_predict(predict, std::cout, std::cerr);
    if (*synth_cmd) {
        synth.spec.seed = seed;
        for (ClassProfile* p : {&synth.spec.positive, &synth.spec.negative}) {
            if (noise >= 0.0) p->noise = noise;
            if (jitter >= 0.0) p->jitter = jitter;
            if (harmonics > 0) p->harmonics = harmonics;
        }
        return cli::cmd_synth(synth, std::cout, std::cerr);
    }
    return cli::kExitUsage;
}
