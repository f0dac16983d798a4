#include "cryscreen/svm.hpp"

#include "cryscreen/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace cryscreen {

namespace {

constexpr double kTau = 1e-12;  // curvature floor for non-PD pairs

struct ViolatingPair {
    std::ptrdiff_t i = -1;  // argmax over I_up of -y G
    std::ptrdiff_t j = -1;  // argmin over I_low of -y G
    std::ptrdiff_t partner = -1;  // second-order choice paired with i
    double up = -std::numeric_limits<double>::infinity();
    double low = std::numeric_limits<double>::infinity();
};

class SmoSolver {
public:
    SmoSolver(const Matrix& gram, std::span<const int> y, double c)
        : q_(gram), y_(y.begin(), y.end()), c_(c), alpha_(y.size(), 0.0), grad_(y.size(), -1.0) {
        const std::size_t m = y_.size();
        for (std::size_t r = 0; r < m; ++r) {
            for (std::size_t s = 0; s < m; ++s) q_(r, s) *= static_cast<double>(y_[r] * y_[s]);
        }
    }

    /// Returns true on convergence.
    bool run(double tol, std::size_t max_iter) {
        for (iterations_ = 0; iterations_ < max_iter; ++iterations_) {
            pair_ = select();
            if (pair_.i < 0 || pair_.j < 0 || pair_.up - pair_.low <= tol) return true;
            if (pair_.partner < 0) return true;
            if (!step(static_cast<std::size_t>(pair_.i), static_cast<std::size_t>(pair_.partner))) {
                return false;  // no representable progress on the worst pair
            }
        }
        pair_ = select();
        return pair_.i < 0 || pair_.j < 0 || pair_.up - pair_.low <= tol;
    }

    [[nodiscard]] double bias() const {
        double sum = 0.0;
        std::size_t free = 0;
        for (std::size_t t = 0; t < alpha_.size(); ++t) {
            if (alpha_[t] > 0.0 && alpha_[t] < c_) {
                sum += -y_[t] * grad_[t];
                ++free;
            }
        }
        if (free > 0) return sum / static_cast<double>(free);
        const ViolatingPair p = select();
        if (p.i < 0) return p.low;
        if (p.j < 0) return p.up;
        return 0.5 * (p.up + p.low);
    }

    [[nodiscard]] double objective() const {
        // sum(a) - 1/2 a'Qa, with Qa = G + 1
        double obj = 0.0;
        for (std::size_t t = 0; t < alpha_.size(); ++t) obj += alpha_[t] - 0.5 * alpha_[t] * (grad_[t] + 1.0);
        return obj;
    }

    [[nodiscard]] const std::vector<double>& alpha() const noexcept { return alpha_; }
    [[nodiscard]] std::size_t iterations() const noexcept { return iterations_; }

private:
    [[nodiscard]] bool in_up(std::size_t t) const {
        return y_[t] > 0 ? alpha_[t] < c_ : alpha_[t] > 0.0;
    }
    [[nodiscard]] bool in_low(std::size_t t) const {
        return y_[t] > 0 ? alpha_[t] > 0.0 : alpha_[t] < c_;
    }

    // i is the maximal violator. The partner maximizes the guaranteed
    // decrease b^2 / a over I_low instead of just |b|, which matters a lot
    // when Gram entries span many orders of magnitude.
    [[nodiscard]] ViolatingPair select() const {
        ViolatingPair p;
        for (std::size_t t = 0; t < alpha_.size(); ++t) {
            const double v = -y_[t] * grad_[t];
            if (in_up(t) && v > p.up) {
                p.up = v;
                p.i = static_cast<std::ptrdiff_t>(t);
            }
            if (in_low(t) && v < p.low) {
                p.low = v;
                p.j = static_cast<std::ptrdiff_t>(t);
            }
        }
        if (p.i < 0) return p;
        const auto i = static_cast<std::size_t>(p.i);
        const auto row_i = q_.row(i);
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t t = 0; t < alpha_.size(); ++t) {
            if (!in_low(t)) continue;
            const double b = p.up + y_[t] * grad_[t];
            if (b <= 0.0) continue;
            double a = q_(i, i) + q_(t, t) - 2.0 * y_[i] * y_[t] * row_i[t];
            if (a <= 0.0) a = kTau;
            const double gain = b * b / a;
            if (gain > best) {
                best = gain;
                p.partner = static_cast<std::ptrdiff_t>(t);
            }
        }
        return p;
    }

    // Analytic two-variable update with box clipping.
    bool step(std::size_t i, std::size_t j) {
        const double old_i = alpha_[i];
        const double old_j = alpha_[j];
        double& ai = alpha_[i];
        double& aj = alpha_[j];

        if (y_[i] != y_[j]) {
            double curv = q_(i, i) + q_(j, j) + 2.0 * q_(i, j);
            if (curv <= 0.0) curv = kTau;
            const double delta = (-grad_[i] - grad_[j]) / curv;
            const double diff = ai - aj;
            ai += delta;
            aj += delta;
            if (diff > 0.0) {
                if (aj < 0.0) { aj = 0.0; ai = diff; }
            } else {
                if (ai < 0.0) { ai = 0.0; aj = -diff; }
            }
            if (diff > 0.0) {
                if (ai > c_) { ai = c_; aj = c_ - diff; }
            } else {
                if (aj > c_) { aj = c_; ai = c_ + diff; }
            }
        } else {
            double curv = q_(i, i) + q_(j, j) - 2.0 * q_(i, j);
            if (curv <= 0.0) curv = kTau;
            const double delta = (grad_[i] - grad_[j]) / curv;
            const double sum = ai + aj;
            ai -= delta;
            aj += delta;
            if (sum > c_) {
                if (ai > c_) { ai = c_; aj = sum - c_; }
            } else {
                if (aj < 0.0) { aj = 0.0; ai = sum; }
            }
            if (sum > c_) {
                if (aj > c_) { aj = c_; ai = sum - c_; }
            } else {
                if (ai < 0.0) { ai = 0.0; aj = sum; }
            }
        }

        const double di = ai - old_i;
        const double dj = aj - old_j;
        if (di == 0.0 && dj == 0.0) return false;
        const auto row_i = q_.row(i);
        const auto row_j = q_.row(j);
        for (std::size_t t = 0; t < grad_.size(); ++t) grad_[t] += row_i[t] * di + row_j[t] * dj;
        return true;
    }

    Matrix q_;
    std::vector<int> y_;
    double c_;
    std::vector<double> alpha_;
    std::vector<double> grad_;  // gradient of the minimization form: Q a - 1
    ViolatingPair pair_;
    std::size_t iterations_ = 0;
};

}  // namespace

void TrainConfig::validate() const {
    if (!(C > 0.0) || !std::isfinite(C)) throw Error(ErrorKind::Configuration, "C must be positive");
    if (!(tol > 0.0)) throw Error(ErrorKind::Configuration, "tolerance must be positive");
    if (max_iter == 0) throw Error(ErrorKind::Configuration, "iteration budget must be positive");
}

SvmModel smo_train(const Matrix& x, std::span<const int> y, const KernelSpec& kernel,
                   const TrainConfig& config) {
    kernel.validate();
    config.validate();
    if (x.rows() != y.size()) {
        throw Error(ErrorKind::Configuration, "feature rows and labels differ in count");
    }
    if (x.rows() < 2) throw Error(ErrorKind::InvalidLabels, "training needs at least two samples");
    bool has_pos = false;
    bool has_neg = false;
    for (const int label : y) {
        if (label == 1) {
            has_pos = true;
        } else if (label == -1) {
            has_neg = true;
        } else {
            throw Error(ErrorKind::InvalidLabels, "labels must be +1 or -1, got " + std::to_string(label));
        }
    }
    if (!has_pos || !has_neg) {
        throw Error(ErrorKind::InvalidLabels, "training data must contain both classes");
    }

    const Matrix gram = gram_matrix(kernel, x);
    for (const double v : gram.data()) {
        if (!std::isfinite(v)) {
            throw Error(ErrorKind::Training, "kernel " + kernel.describe() + " overflows on this data");
        }
    }

    SmoSolver solver(gram, y, config.C);
    const bool converged = solver.run(config.tol, config.max_iter);

    SvmModel model;
    model.kernel = kernel;
    model.train = config;
    model.bias = solver.bias();
    model.converged = converged;
    model.iterations = solver.iterations();
    model.dual_objective = solver.objective();
    model.support_vectors = Matrix(0, x.cols());
    const auto& alpha = solver.alpha();
    for (std::size_t t = 0; t < alpha.size(); ++t) {
        if (alpha[t] > kSupportVectorThreshold) {
            model.support_vectors.append_row(x.row(t));
            model.dual_coeffs.push_back(alpha[t] * y[t]);
            model.support_indices.push_back(t);
        }
    }
    return model;
}

double decision_value(const SvmModel& model, std::span<const double> x) {
    if (x.size() != model.dimension()) {
        throw Error(ErrorKind::Configuration, "input has dimension " + std::to_string(x.size()) +
                                                  ", model expects " + std::to_string(model.dimension()));
    }
    std::vector<double> scaled;
    if (model.scaling) {
        scaled = apply_scaler(x, *model.scaling);
        x = scaled;
    }
    double f = model.bias;
    for (std::size_t s = 0; s < model.dual_coeffs.size(); ++s) {
        f += model.dual_coeffs[s] * kernel_eval(model.kernel, model.support_vectors.row(s), x);
    }
    return f;
}

int label_from_decision(double decision) noexcept { return decision >= 0.0 ? 1 : -1; }

int predict(const SvmModel& model, std::span<const double> x) {
    return label_from_decision(decision_value(model, x));
}

std::vector<int> predict_all(const SvmModel& model, const Matrix& x) {
    std::vector<int> out(x.rows());
    for (std::size_t r = 0; r < x.rows(); ++r) out[r] = predict(model, x.row(r));
    return out;
}

}  // namespace cryscreen
