#pragma once

#include "cryscreen/matrix.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace cryscreen {

enum class KernelFamily { Polynomial, Rbf };

std::string_view to_string(KernelFamily f) noexcept;
std::optional<KernelFamily> parse_kernel_family(std::string_view s) noexcept;

/// rbf:        exp(-gamma * |x - y|^2)
/// polynomial: (gamma * <x, y> + coef0)^degree, homogeneous when coef0 == 0
struct KernelSpec {
    KernelFamily family = KernelFamily::Rbf;
    double gamma = 1.0;
    int degree = 3;
    double coef0 = 0.0;

    static KernelSpec rbf(double gamma) { return {KernelFamily::Rbf, gamma, 1, 0.0}; }
    static KernelSpec polynomial(int degree, double gamma, double coef0 = 0.0) {
        return {KernelFamily::Polynomial, gamma, degree, coef0};
    }

    /// Throws Error(Configuration) unless gamma > 0, degree >= 1, coef0 >= 0.
    void validate() const;

    [[nodiscard]] std::string describe() const;

    friend bool operator==(const KernelSpec&, const KernelSpec&) = default;
};

double kernel_eval(const KernelSpec& spec, std::span<const double> x, std::span<const double> y);

/// Upper triangle evaluated, lower mirrored, so the result is exactly symmetric.
Matrix gram_matrix(const KernelSpec& spec, const Matrix& x);

}  // namespace cryscreen
