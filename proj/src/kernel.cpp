#include "cryscreen/kernel.hpp"

#include "cryscreen/error.hpp"
#include "cryscreen/simd.hpp"

#include <cmath>
#include <cstdio>

namespace cryscreen {

std::string_view to_string(KernelFamily f) noexcept {
    return f == KernelFamily::Polynomial ? "poly" : "rbf";
}

std::optional<KernelFamily> parse_kernel_family(std::string_view s) noexcept {
    if (s == "poly" || s == "polynomial") return KernelFamily::Polynomial;
    if (s == "rbf") return KernelFamily::Rbf;
    return std::nullopt;
}

void KernelSpec::validate() const {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
        throw Error(ErrorKind::Configuration, "kernel gamma must be positive");
    }
    if (family == KernelFamily::Polynomial) {
        if (degree < 1) throw Error(ErrorKind::Configuration, "polynomial degree must be >= 1");
        if (!(coef0 >= 0.0)) throw Error(ErrorKind::Configuration, "polynomial coef0 must be >= 0");
    }
}

std::string KernelSpec::describe() const {
    char buf[128];
    if (family == KernelFamily::Polynomial) {
        std::snprintf(buf, sizeof buf, "poly(d=%d, gamma=%.6g, coef0=%.6g)", degree, gamma, coef0);
    } else {
        std::snprintf(buf, sizeof buf, "rbf(gamma=%.6g)", gamma);
    }
    return buf;
}

double kernel_eval(const KernelSpec& spec, std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw Error(ErrorKind::Configuration, "kernel arguments differ in dimension");
    }
    if (spec.family == KernelFamily::Rbf) {
        return std::exp(-spec.gamma * simd::squared_distance(x, y));
    }
    const double base = spec.gamma * simd::dot(x, y) + spec.coef0;
    double out = base;
    for (int k = 1; k < spec.degree; ++k) out *= base;
    return out;
}

Matrix gram_matrix(const KernelSpec& spec, const Matrix& x) {
    const std::size_t m = x.rows();
    Matrix g(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i; j < m; ++j) {
            const double v = kernel_eval(spec, x.row(i), x.row(j));
            g(i, j) = v;
            g(j, i) = v;
        }
    }
    return g;
}

}  // namespace cryscreen
