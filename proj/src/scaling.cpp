#include "cryscreen/scaling.hpp"

#include "cryscreen/error.hpp"

#include <cmath>
#include <string>

namespace cryscreen {

double global_std(const Matrix& x) {
    const auto& v = x.data();
    if (v.empty()) return 0.0;
    double mean = 0.0;
    for (const double e : v) mean += e;
    mean /= static_cast<double>(v.size());
    double ss = 0.0;
    for (const double e : v) ss += (e - mean) * (e - mean);
    return std::sqrt(ss / static_cast<double>(v.size()));
}

ScalingParams fit_scaler(const Matrix& x) {
    if (x.rows() < 2) throw Error(ErrorKind::DegenerateData, "scaler needs at least two rows");
    ScalingParams p;
    p.mean.assign(x.cols(), 0.0);
    for (std::size_t r = 0; r < x.rows(); ++r) {
        const auto row = x.row(r);
        for (std::size_t c = 0; c < x.cols(); ++c) p.mean[c] += row[c];
    }
    for (double& m : p.mean) m /= static_cast<double>(x.rows());

    p.std = global_std(x);
    if (!(p.std > 0.0) || !std::isfinite(p.std)) {
        throw Error(ErrorKind::DegenerateData, "all feature values are identical; standard deviation is 0");
    }
    return p;
}

std::vector<double> apply_scaler(std::span<const double> row, const ScalingParams& params) {
    if (row.size() != params.mean.size()) {
        throw Error(ErrorKind::Configuration, "feature dimension " + std::to_string(row.size()) +
                                                  " does not match scaler dimension " +
                                                  std::to_string(params.mean.size()));
    }
    std::vector<double> out(row.size());
    for (std::size_t c = 0; c < row.size(); ++c) out[c] = (row[c] - params.mean[c]) / params.std;
    return out;
}

Matrix apply_scaler(const Matrix& x, const ScalingParams& params) {
    if (x.cols() != params.mean.size()) {
        throw Error(ErrorKind::Configuration, "feature dimension " + std::to_string(x.cols()) +
                                                  " does not match scaler dimension " +
                                                  std::to_string(params.mean.size()));
    }
    Matrix out(x.rows(), x.cols());
    for (std::size_t r = 0; r < x.rows(); ++r) {
        const auto in = x.row(r);
        auto dst = out.row(r);
        for (std::size_t c = 0; c < x.cols(); ++c) dst[c] = (in[c] - params.mean[c]) / params.std;
    }
    return out;
}

}  // namespace cryscreen
