#include "cryscreen/metrics.hpp"

#include "cryscreen/error.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace cryscreen {

namespace {

double ratio(std::size_t num, std::size_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

ConfusionMatrix confusion(std::span<const int> predicted, std::span<const int> actual) {
    if (predicted.size() != actual.size()) {
        throw Error(ErrorKind::Configuration, "predicted and actual label counts differ");
    }
    ConfusionMatrix cm;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        const int p = predicted[i];
        const int a = actual[i];
        if ((p != 1 && p != -1) || (a != 1 && a != -1)) {
            throw Error(ErrorKind::InvalidLabels, "labels must be +1 or -1");
        }
        if (p == 1) {
            ++(a == 1 ? cm.tp : cm.fp);
        } else {
            ++(a == 1 ? cm.fn : cm.tn);
        }
    }
    return cm;
}

MetricsReport compute_metrics(const ConfusionMatrix& cm) {
    if (cm.total() == 0) {
        throw Error(ErrorKind::UndefinedMetrics, "metrics are undefined for an empty confusion matrix");
    }
    MetricsReport m;
    m.accuracy = ratio(cm.tp + cm.tn, cm.total());
    m.precision = ratio(cm.tp, cm.tp + cm.fp);
    m.recall = ratio(cm.tp, cm.tp + cm.fn);
    const double pr = m.precision + m.recall;
    m.f_score = pr > 0.0 ? 2.0 * m.precision * m.recall / pr : 0.0;
    return m;
}

std::string format_percent(double fraction) {
    // half-up at the second decimal; the small nudge absorbs binary
    // representation error such as 0.12345 -> 12.344999...
    const double hundredths = std::floor(fraction * 10000.0 + 0.5 + 1e-9);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", hundredths / 100.0);
    return buf;
}

std::string format_report(const ConfusionMatrix& cm, const MetricsReport& m) {
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "                       Actual\n"
                  "                       Asphyxia    Normal\n"
                  "Predicted  Asphyxia  %10zu%10zu\n"
                  "           Normal    %10zu%10zu\n"
                  "\n",
                  cm.tp, cm.fp, cm.fn, cm.tn);
    std::ostringstream out;
    out << buf;
    out << "Accuracy:  " << format_percent(m.accuracy) << "% (" << (cm.tp + cm.tn) << '/' << cm.total()
        << ")\n";
    out << "Precision: " << format_percent(m.precision) << "%\n";
    out << "Recall:    " << format_percent(m.recall) << "%\n";
    out << "F-score:   " << format_percent(m.f_score) << "%\n";
    return out.str();
}

std::string report_csv_header() { return "tp,fp,fn,tn,accuracy,precision,recall,f_score"; }

std::string report_csv_row(const ConfusionMatrix& cm, const MetricsReport& m) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%zu,%zu,%zu,%zu,%.10f,%.10f,%.10f,%.10f", cm.tp, cm.fp, cm.fn,
                  cm.tn, m.accuracy, m.precision, m.recall, m.f_score);
    return buf;
}

}  // namespace cryscreen
