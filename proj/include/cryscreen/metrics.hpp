#pragma once

#include <cstddef>
#include <span>
#include <string>

namespace cryscreen {

/// Binary confusion counts; the positive class (+1) is asphyxia.
struct ConfusionMatrix {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;
    std::size_t tn = 0;

    [[nodiscard]] std::size_t total() const noexcept { return tp + fp + fn + tn; }

    friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

struct MetricsReport {
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f_score = 0.0;
};

ConfusionMatrix confusion(std::span<const int> predicted, std::span<const int> actual);

/// Zero denominators give 0 for precision, recall and F rather than an
/// error. Throws Error(UndefinedMetrics) for an empty matrix.
MetricsReport compute_metrics(const ConfusionMatrix& cm);

/// Percentage rounded half-up to two decimals, e.g. 0.788489 -> "78.85".
std::string format_percent(double fraction);

/// Table layout: predicted rows by actual columns, then the metric lines.
std::string format_report(const ConfusionMatrix& cm, const MetricsReport& m);

std::string report_csv_header();
std::string report_csv_row(const ConfusionMatrix& cm, const MetricsReport& m);

}  // namespace cryscreen
