#pragma once

#include "cryscreen/matrix.hpp"

#include <span>
#include <vector>

namespace cryscreen {

/// Mean normalization parameters: a per-feature mean and ONE global
/// standard deviation taken over every entry of the raw training matrix.
struct ScalingParams {
    std::vector<double> mean;
    double std = 1.0;

    friend bool operator==(const ScalingParams&, const ScalingParams&) = default;
};

/// Population standard deviation of all M*D entries, before centering.
/// Throws Error(DegenerateData) if fewer than two rows or all entries equal.
ScalingParams fit_scaler(const Matrix& x);

Matrix apply_scaler(const Matrix& x, const ScalingParams& params);
std::vector<double> apply_scaler(std::span<const double> row, const ScalingParams& params);

/// Population std over all entries; used for reporting the before/after signature.
double global_std(const Matrix& x);

}  // namespace cryscreen
