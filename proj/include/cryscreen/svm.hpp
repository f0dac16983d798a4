#pragma once

#include "cryscreen/kernel.hpp"
#include "cryscreen/matrix.hpp"
#include "cryscreen/scaling.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cryscreen {

struct TrainConfig {
    double C = 1.0;
    /// Stop once the maximal KKT violation m(alpha) - M(alpha) <= tol.
    double tol = 1e-3;
    std::size_t max_iter = 10'000'000;
    /// Recorded for provenance; the solver itself has no random choices.
    std::uint64_t seed = 42;

    void validate() const;

    friend bool operator==(const TrainConfig&, const TrainConfig&) = default;
};

inline constexpr double kSupportVectorThreshold = 1e-8;

struct SvmModel {
    KernelSpec kernel;
    TrainConfig train;
    Matrix support_vectors;
    std::vector<double> dual_coeffs;  // alpha_i * y_i
    double bias = 0.0;
    /// Applied to raw inputs before the kernel when present.
    std::optional<ScalingParams> scaling;
    std::string feature_fingerprint;

    // Training diagnostics, not needed for prediction.
    std::vector<std::size_t> support_indices;
    bool converged = true;
    std::size_t iterations = 0;
    double dual_objective = 0.0;

    [[nodiscard]] std::size_t dimension() const noexcept { return support_vectors.cols(); }
};

/// Solves the soft-margin dual
///   max sum(a) - 1/2 sum_ij a_i a_j y_i y_j K(x_i, x_j)
///   s.t. 0 <= a_i <= C, sum a_i y_i = 0
/// by SMO with maximal-violating-pair selection. On budget exhaustion or
/// numerical stagnation the best-so-far model comes back with
/// converged == false. Throws Error(InvalidLabels) unless both classes
/// are present and every label is +1 or -1.
SvmModel smo_train(const Matrix& x, std::span<const int> y, const KernelSpec& kernel,
                   const TrainConfig& config);

/// sum_i coeff_i K(sv_i, x) + b, with the model's scaling applied to x first.
double decision_value(const SvmModel& model, std::span<const double> x);

/// Sign of the decision value; exactly 0 maps to +1.
int predict(const SvmModel& model, std::span<const double> x);
int label_from_decision(double decision) noexcept;

std::vector<int> predict_all(const SvmModel& model, const Matrix& x);

}  // namespace cryscreen
