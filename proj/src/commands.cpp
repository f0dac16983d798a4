#include "cryscreen/commands.hpp"

#include "cryscreen/error.hpp"
#include "cryscreen/io.hpp"
#include "cryscreen/metrics.hpp"
#include "cryscreen/selection.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>

namespace cryscreen::cli {

namespace {

namespace fs = std::filesystem;

fs::path sibling(const fs::path& model_out, const char* suffix) {
    fs::path p = model_out;
    p.replace_extension();
    p += suffix;
    return p;
}

std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

struct ManifestEntry {
    std::string filename;
    int label;
};

std::vector<ManifestEntry> read_manifest(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Format, "cannot read manifest " + path.string());
    std::vector<ManifestEntry> out;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw Error(ErrorKind::Parse, "manifest line without label: " + line);
        const std::string name = line.substr(0, comma);
        const std::string label = line.substr(comma + 1);
        if (first && name == "filename") {
            first = false;
            continue;
        }
        first = false;
        out.push_back({name, parse_label(label)});
    }
    return out;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorKind::Format, "cannot write " + path.string());
    f << text;
}

int fail(std::ostream& err, const Error& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return kExitData;
}

void check_feature_config(const ModelFile& model, const FeatureConfig& data_config) {
    if (!(model.features == data_config)) {
        throw Error(ErrorKind::Configuration,
                    "features were extracted with a different configuration than the model expects (model " +
                        feature_fingerprint(model.features) + ", data " + feature_fingerprint(data_config) + ")");
    }
}

}  // namespace

int cmd_extract(const ExtractOptions& opt, std::ostream& out, std::ostream& err) {
    try {
        const FeatureExtractor extractor(opt.config);
        const fs::path manifest_path = opt.manifest.value_or(opt.input_dir / "manifest.csv");
        const auto entries = read_manifest(manifest_path);

        LabeledDataset ds;
        ds.features = Matrix(0, opt.config.dimension());
        std::size_t failed = 0;
        for (const auto& entry : entries) {
            try {
                const AudioClip clip = read_wav(opt.input_dir / entry.filename);
                const SampleVector window = fixed_length_window(clip, opt.config.window_length, opt.pad_short);
                ds.features.append_row(extractor.extract(window).values);
                ds.labels.push_back(entry.label);
                ds.ids.push_back(entry.filename);
            } catch (const Error& e) {
                ++failed;
                err << "skipping " << entry.filename << ": " << to_string(e.kind()) << ": " << e.what() << '\n';
            }
        }
        write_features_csv(opt.out, opt.config, ds);
        out << "extracted " << ds.size() << " of " << entries.size() << " clips to " << opt.out.string() << '\n';
        return failed == 0 ? kExitSuccess : kExitData;
    } catch (const Error& e) {
        return fail(err, e);
    }
}

int cmd_train(const TrainOptions& opt, std::ostream& out, std::ostream& err) {
    try {
        const FeatureTable table = read_features_csv(opt.features);
        const LabeledDataset& ds = table.data;
        if (ds.count(1) == 0 || ds.count(-1) == 0) {
            throw Error(ErrorKind::InvalidLabels, "features file must contain both classes");
        }

        SplitSpec split_spec;
        split_spec.seed = opt.seed;
        const DatasetSplit split = stratified_split(ds, split_spec);

        std::ostringstream test_csv;
        write_features_csv(test_csv, table.config, split.test);
        write_text(opt.test_out.value_or(sibling(opt.model_out, ".test.csv")), test_csv.str());
        std::ostringstream split_csv;
        write_split_manifest(split_csv, split);
        write_text(opt.split_out.value_or(sibling(opt.model_out, ".split.csv")), split_csv.str());

        TrainConfig base;
        base.tol = opt.tol;
        base.max_iter = opt.max_iter;
        base.seed = opt.seed;

        ModelFile file;
        file.features = table.config;
        file.provenance.seed = opt.seed;
        file.provenance.dataset_fingerprint = dataset_fingerprint(ds);
        file.provenance.train_rows = split.train.size() + split.cv.size();

        KernelSpec kernel;
        TrainConfig config = base;
        const bool explicit_params =
            opt.gamma.has_value() && (opt.family == KernelFamily::Rbf ? opt.cost.has_value() : opt.degree.has_value());
        if (explicit_params) {
            kernel = opt.family == KernelFamily::Polynomial ? KernelSpec::polynomial(*opt.degree, *opt.gamma, 0.0)
                                                            : KernelSpec::rbf(*opt.gamma);
            config.C = opt.family == KernelFamily::Polynomial ? opt.cost.value_or(opt.poly_cost) : *opt.cost;
            out << "explicit parameters: " << kernel.describe() << " C=" << fmt_g(config.C) << '\n';
        } else {
            const std::vector<double> gammas =
                opt.gamma_grid.empty() ? gamma_grid(ds.features.cols()) : opt.gamma_grid;
            GridSearchResult result;
            if (opt.family == KernelFamily::Polynomial) {
                const std::vector<int> degrees = opt.degree_grid.empty() ? default_degree_grid() : opt.degree_grid;
                result = grid_search_poly(split.train, split.cv, degrees, gammas, opt.poly_cost, base);
            } else {
                const std::vector<double> costs = opt.cost_grid.empty() ? default_cost_grid() : opt.cost_grid;
                result = grid_search_rbf(split.train, split.cv, costs, gammas, base);
            }
            GridReportContext ctx{opt.seed, split.train.size(), split.cv.size(), split.test.size(),
                                  ids_fingerprint(split.test)};
            std::ostringstream report;
            write_grid_report(report, result, ctx);
            write_text(opt.grid_report.value_or(sibling(opt.model_out, ".grid.csv")), report.str());

            kernel = kernel_for(result, result.best);
            config = train_config_for(result, result.best, base);
            file.provenance.grid = GridSummary{result.family, result.cells.size(), result.best};
            out << "grid search: " << result.cells.size() << " cells, selected " << kernel.describe()
                << " C=" << fmt_g(config.C) << " cv_error=" << fmt_g(result.best.cv_error) << '\n';
        }

        file.model = refit_final(split.train, split.cv, kernel, config);
        file.model.feature_fingerprint = feature_fingerprint(table.config);
        save_model(file, opt.model_out);
        out << "final model: " << file.model.dual_coeffs.size() << " support vectors, trained on "
            << file.provenance.train_rows << " rows, written to " << opt.model_out.string() << '\n';
        if (!file.model.converged) {
            err << "warning: final training did not converge within " << config.max_iter << " updates\n";
            return kExitNonConvergence;
        }
        return kExitSuccess;
    } catch (const Error& e) {
        return fail(err, e);
    }
}

int cmd_evaluate(const EvaluateOptions& opt, std::ostream& out, std::ostream& err) {
    try {
        const ModelFile model = load_model(opt.model);
        const FeatureTable table = read_features_csv(opt.features);
        check_feature_config(model, table.config);
        const std::vector<int> predicted = predict_all(model.model, table.data.features);
        const ConfusionMatrix cm = confusion(predicted, table.data.labels);
        const MetricsReport metrics = compute_metrics(cm);
        out << format_report(cm, metrics);
        if (opt.report_csv) {
            write_text(*opt.report_csv, report_csv_header() + "\n" + report_csv_row(cm, metrics) + "\n");
        }
        return kExitSuccess;
    } catch (const Error& e) {
        return fail(err, e);
    }
}

int cmd_predict(const PredictOptions& opt, std::ostream& out, std::ostream& err) {
    try {
        const ModelFile model = load_model(opt.model);
        auto emit = [&](std::span<const double> features) {
            const double f = decision_value(model.model, features);
            char buf[64];
            std::snprintf(buf, sizeof buf, " %.12g\n", f);
            out << label_name(label_from_decision(f)) << buf;
        };
        std::string ext = opt.input.extension().string();
        for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        if (ext == ".wav") {
            const FeatureExtractor extractor(model.features);
            const AudioClip clip = read_wav(opt.input);
            emit(extractor.extract(fixed_length_window(clip, model.features.window_length, opt.pad_short)).values);
        } else {
            const FeatureTable table = read_features_csv(opt.input);
            check_feature_config(model, table.config);
            for (std::size_t r = 0; r < table.data.size(); ++r) emit(table.data.features.row(r));
        }
        return kExitSuccess;
    } catch (const Error& e) {
        return fail(err, e);
    }
}

int cmd_synth(const SynthOptions& opt, std::ostream& out, std::ostream& err) {
    try {
        const auto corpus = generate_corpus(opt.spec);
        write_corpus(corpus, opt.out_dir);
        out << "wrote " << corpus.size() << " clips (" << opt.spec.n_positive << " asphyxia, "
            << opt.spec.n_negative << " normal) to " << opt.out_dir.string() << '\n';
        return kExitSuccess;
    } catch (const Error& e) {
        return fail(err, e);
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitData;
    }
}

}  // namespace cryscreen::cli
