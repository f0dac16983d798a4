#pragma once

#include "cryscreen/kernel.hpp"
#include "cryscreen/matrix.hpp"
#include "cryscreen/svm.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace cryscreen {

struct LabeledDataset {
    Matrix features;
    std::vector<int> labels;
    std::vector<std::string> ids;

    [[nodiscard]] std::size_t size() const noexcept { return labels.size(); }
    [[nodiscard]] std::size_t count(int label) const;

    /// Throws Error(Configuration) if the three sequences disagree in length
    /// and Error(InvalidLabels) for labels other than +1/-1.
    void validate() const;

    [[nodiscard]] LabeledDataset subset(std::span<const std::size_t> rows) const;

    /// Rows of `a` followed by rows of `b`.
    static LabeledDataset concat(const LabeledDataset& a, const LabeledDataset& b);
};

struct SplitSpec {
    double train = 0.6;
    double cv = 0.2;
    double test = 0.2;
    std::uint64_t seed = 42;

    void validate() const;
};

struct SplitSizes {
    std::size_t train = 0;
    std::size_t cv = 0;
    std::size_t test = 0;

    friend bool operator==(const SplitSizes&, const SplitSizes&) = default;
};

/// Per-class sizes: cv = floor(cv * n), train = ceil(train * n), test takes
/// the rest. Reproduces 1049 -> (630, 209, 210) and 340 -> (204, 68, 68).
/// Throws Error(Split) if any part would be empty.
SplitSizes split_sizes(std::size_t class_count, const SplitSpec& spec);

struct DatasetSplit {
    LabeledDataset train;
    LabeledDataset cv;
    LabeledDataset test;
};

/// Stratified split: each class is shuffled and cut by split_sizes, then
/// each of the three parts is shuffled. Deterministic in spec.seed.
DatasetSplit stratified_split(const LabeledDataset& ds, const SplitSpec& spec);

/// [base * factor^k for k in 0..count-1] with base = 1 / n_features.
std::vector<double> gamma_grid(std::size_t n_features, double factor = 3.0, std::size_t count = 8);

std::vector<int> default_degree_grid();
std::vector<double> default_cost_grid();

struct GridCell {
    /// Degree for the polynomial search, C for the rbf search.
    double primary = 0.0;
    double gamma = 0.0;
    double cv_error = 0.0;
    bool converged = true;
    bool failed = false;
};

struct GridSearchResult {
    KernelFamily family = KernelFamily::Rbf;
    std::vector<GridCell> cells;  // grid order: primary outer, gamma inner
    GridCell best;
    /// C used for every polynomial cell.
    double poly_cost = 1.0;
};

/// Misclassification rate of `model` on `ds`.
double error_rate(const SvmModel& model, const LabeledDataset& ds);

/// The scaler is fit on `train` only and reused on `cv`. A cell whose
/// training throws is recorded with infinite error. Ties go to the smaller
/// degree, then the smaller gamma. Polynomial cells are homogeneous.
GridSearchResult grid_search_poly(const LabeledDataset& train, const LabeledDataset& cv,
                                  std::span<const int> degrees, std::span<const double> gammas,
                                  double cost_fixed = 1.0, const TrainConfig& base = {});

/// As grid_search_poly over (C, gamma); ties go to the smaller C, then gamma.
GridSearchResult grid_search_rbf(const LabeledDataset& train, const LabeledDataset& cv,
                                 std::span<const double> costs, std::span<const double> gammas,
                                 const TrainConfig& base = {});

/// Kernel and training config a grid cell stands for.
KernelSpec kernel_for(const GridSearchResult& result, const GridCell& cell);
TrainConfig train_config_for(const GridSearchResult& result, const GridCell& cell,
                             const TrainConfig& base);

/// Retrains on train rows followed by cv rows, with the scaler refit on
/// the combined set and stored in the model.
SvmModel refit_final(const LabeledDataset& train, const LabeledDataset& cv, const KernelSpec& kernel,
                     const TrainConfig& config);

/// Fits a scaler on `train`, trains, and stores the scaler in the model.
SvmModel train_scaled(const LabeledDataset& train, const KernelSpec& kernel, const TrainConfig& config);

}  // namespace cryscreen
