#include "cryscreen/selection.hpp"

#include "cryscreen/error.hpp"
#include "cryscreen/random.hpp"
#include "cryscreen/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <tuple>

namespace cryscreen {

namespace {

constexpr std::uint64_t kStreamClassShuffle = 1;
constexpr std::uint64_t kStreamPartShuffle = 2;

struct ScaledPair {
    Matrix train;
    Matrix cv;
};

ScaledPair scale_pair(const LabeledDataset& train, const LabeledDataset& cv) {
    const ScalingParams params = fit_scaler(train.features);
    return {apply_scaler(train.features, params), apply_scaler(cv.features, params)};
}

double misclassification(const SvmModel& model, const Matrix& x, std::span<const int> y) {
    if (y.empty()) return 0.0;
    std::size_t wrong = 0;
    for (std::size_t r = 0; r < x.rows(); ++r) {
        if (predict(model, x.row(r)) != y[r]) ++wrong;
    }
    return static_cast<double>(wrong) / static_cast<double>(y.size());
}

GridCell evaluate_cell(const ScaledPair& data, const LabeledDataset& train, const LabeledDataset& cv,
                       const KernelSpec& kernel, const TrainConfig& config, double primary) {
    GridCell cell;
    cell.primary = primary;
    cell.gamma = kernel.gamma;
    try {
        const SvmModel model = smo_train(data.train, train.labels, kernel, config);
        cell.converged = model.converged;
        cell.cv_error = misclassification(model, data.cv, cv.labels);
    } catch (const Error&) {
        cell.failed = true;
        cell.converged = false;
        cell.cv_error = std::numeric_limits<double>::infinity();
    }
    return cell;
}

GridCell pick_best(const std::vector<GridCell>& cells) {
    // lexicographic (error, primary, gamma): simpler models win ties
    return *std::min_element(cells.begin(), cells.end(), [](const GridCell& a, const GridCell& b) {
        return std::tie(a.cv_error, a.primary, a.gamma) < std::tie(b.cv_error, b.primary, b.gamma);
    });
}

void require_trainable(const LabeledDataset& ds, const char* what) {
    ds.validate();
    if (ds.count(1) == 0 || ds.count(-1) == 0) {
        throw Error(ErrorKind::InvalidLabels, std::string(what) + " set must contain both classes");
    }
}

}  // namespace

std::size_t LabeledDataset::count(int label) const {
    return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), label));
}

void LabeledDataset::validate() const {
    if (features.rows() != labels.size() || ids.size() != labels.size()) {
        throw Error(ErrorKind::Configuration, "dataset features, labels and ids differ in count");
    }
    for (const int l : labels) {
        if (l != 1 && l != -1) throw Error(ErrorKind::InvalidLabels, "labels must be +1 or -1");
    }
}

LabeledDataset LabeledDataset::subset(std::span<const std::size_t> rows) const {
    LabeledDataset out;
    out.features = Matrix(0, features.cols());
    for (const std::size_t r : rows) {
        out.features.append_row(features.row(r));
        out.labels.push_back(labels[r]);
        out.ids.push_back(ids[r]);
    }
    return out;
}

LabeledDataset LabeledDataset::concat(const LabeledDataset& a, const LabeledDataset& b) {
    LabeledDataset out = a;
    for (std::size_t r = 0; r < b.size(); ++r) {
        out.features.append_row(b.features.row(r));
        out.labels.push_back(b.labels[r]);
        out.ids.push_back(b.ids[r]);
    }
    return out;
}

void SplitSpec::validate() const {
    if (!(train > 0.0 && cv > 0.0 && test > 0.0)) {
        throw Error(ErrorKind::Configuration, "split ratios must be positive");
    }
    if (std::abs(train + cv + test - 1.0) > 1e-12) {
        throw Error(ErrorKind::Configuration, "split ratios must sum to 1");
    }
}

SplitSizes split_sizes(std::size_t class_count, const SplitSpec& spec) {
    spec.validate();
    const double n = static_cast<double>(class_count);
    // the epsilons keep exact products such as 0.6 * 10 from drifting a unit
    SplitSizes s;
    s.cv = static_cast<std::size_t>(std::floor(spec.cv * n + 1e-9));
    s.train = static_cast<std::size_t>(std::ceil(spec.train * n - 1e-9));
    if (s.train + s.cv >= class_count || s.cv == 0 || s.train == 0) {
        throw Error(ErrorKind::Split, "class with " + std::to_string(class_count) +
                                          " samples is too small to split three ways");
    }
    s.test = class_count - s.train - s.cv;
    return s;
}

DatasetSplit stratified_split(const LabeledDataset& ds, const SplitSpec& spec) {
    ds.validate();
    std::vector<std::size_t> train_rows;
    std::vector<std::size_t> cv_rows;
    std::vector<std::size_t> test_rows;

    for (const int label : {1, -1}) {
        std::vector<std::size_t> rows;
        for (std::size_t r = 0; r < ds.size(); ++r) {
            if (ds.labels[r] == label) rows.push_back(r);
        }
        if (rows.size() < 3) {
            throw Error(ErrorKind::Split, "class " + std::to_string(label) + " has only " +
                                              std::to_string(rows.size()) + " samples (need >= 3)");
        }
        const SplitSizes sizes = split_sizes(rows.size(), spec);
        Rng rng(spec.seed, kStreamClassShuffle, label > 0 ? 1 : 0);
        rng.shuffle(rows);
        const auto cut1 = rows.begin() + static_cast<std::ptrdiff_t>(sizes.train);
        const auto cut2 = cut1 + static_cast<std::ptrdiff_t>(sizes.cv);
        train_rows.insert(train_rows.end(), rows.begin(), cut1);
        cv_rows.insert(cv_rows.end(), cut1, cut2);
        test_rows.insert(test_rows.end(), cut2, rows.end());
    }

    std::uint64_t part = 0;
    for (auto* rows : {&train_rows, &cv_rows, &test_rows}) {
        Rng rng(spec.seed, kStreamPartShuffle, part++);
        rng.shuffle(*rows);
    }
    return {ds.subset(train_rows), ds.subset(cv_rows), ds.subset(test_rows)};
}

std::vector<double> gamma_grid(std::size_t n_features, double factor, std::size_t count) {
    if (n_features == 0 || count == 0) {
        throw Error(ErrorKind::Configuration, "gamma grid needs n_features >= 1 and count >= 1");
    }
    std::vector<double> out(count);
    double g = 1.0 / static_cast<double>(n_features);
    for (std::size_t k = 0; k < count; ++k) {
        out[k] = g;
        g *= factor;
    }
    return out;
}

std::vector<int> default_degree_grid() { return {1, 2, 3, 4, 5, 6, 7, 8}; }

std::vector<double> default_cost_grid() { return {0.01, 0.03, 0.1, 0.3, 1, 3, 10, 30}; }

double error_rate(const SvmModel& model, const LabeledDataset& ds) {
    return misclassification(model, ds.features, ds.labels);
}

GridSearchResult grid_search_poly(const LabeledDataset& train, const LabeledDataset& cv,
                                  std::span<const int> degrees, std::span<const double> gammas,
                                  double cost_fixed, const TrainConfig& base) {
    if (degrees.empty() || gammas.empty()) throw Error(ErrorKind::Configuration, "empty grid");
    require_trainable(train, "training");
    cv.validate();
    const ScaledPair data = scale_pair(train, cv);

    GridSearchResult result;
    result.family = KernelFamily::Polynomial;
    result.poly_cost = cost_fixed;
    TrainConfig config = base;
    config.C = cost_fixed;
    for (const int d : degrees) {
        for (const double g : gammas) {
            result.cells.push_back(
                evaluate_cell(data, train, cv, KernelSpec::polynomial(d, g, 0.0), config, d));
        }
    }
    result.best = pick_best(result.cells);
    return result;
}

GridSearchResult grid_search_rbf(const LabeledDataset& train, const LabeledDataset& cv,
                                 std::span<const double> costs, std::span<const double> gammas,
                                 const TrainConfig& base) {
    if (costs.empty() || gammas.empty()) throw Error(ErrorKind::Configuration, "empty grid");
    require_trainable(train, "training");
    cv.validate();
    const ScaledPair data = scale_pair(train, cv);

    GridSearchResult result;
    result.family = KernelFamily::Rbf;
    for (const double c : costs) {
        TrainConfig config = base;
        config.C = c;
        for (const double g : gammas) {
            result.cells.push_back(evaluate_cell(data, train, cv, KernelSpec::rbf(g), config, c));
        }
    }
    result.best = pick_best(result.cells);
    return result;
}

KernelSpec kernel_for(const GridSearchResult& result, const GridCell& cell) {
    if (result.family == KernelFamily::Polynomial) {
        return KernelSpec::polynomial(static_cast<int>(cell.primary), cell.gamma, 0.0);
    }
    return KernelSpec::rbf(cell.gamma);
}

TrainConfig train_config_for(const GridSearchResult& result, const GridCell& cell,
                             const TrainConfig& base) {
    TrainConfig config = base;
    config.C = result.family == KernelFamily::Polynomial ? result.poly_cost : cell.primary;
    return config;
}

SvmModel train_scaled(const LabeledDataset& train, const KernelSpec& kernel, const TrainConfig& config) {
    require_trainable(train, "training");
    const ScalingParams params = fit_scaler(train.features);
    SvmModel model = smo_train(apply_scaler(train.features, params), train.labels, kernel, config);
    model.scaling = params;
    return model;
}

SvmModel refit_final(const LabeledDataset& train, const LabeledDataset& cv, const KernelSpec& kernel,
                     const TrainConfig& config) {
    return train_scaled(LabeledDataset::concat(train, cv), kernel, config);
}

}  // namespace cryscreen
