#include "maskkit/metrics.hpp"

#include <string>

#include "maskkit/error.hpp"
#include "maskkit/format.hpp"

namespace maskkit {

namespace {

std::optional<double> ratio(std::uint64_t num, std::uint64_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

ConfusionCounts confusion_from_pairs(std::span<const int> truth, std::span<const int> pred) {
  if (truth.size() != pred.size()) {
    throw Error(Errc::length_mismatch, "truth has " + std::to_string(truth.size()) +
                                           " labels but pred has " + std::to_string(pred.size()));
  }
  ConfusionCounts c;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const int t = truth[i], p = pred[i];
    if ((t != 0 && t != 1) || (p != 0 && p != 1)) {
      throw Error(Errc::unknown_label, "label at row " + std::to_string(i) + " is not 0 or 1");
    }
    if (t == 1) {
      p == 1 ? ++c.tp : ++c.fn;
    } else {
      p == 1 ? ++c.fp : ++c.tn;
    }
  }
  return c;
}

MetricsReport metrics(const ConfusionCounts& c) {
  MetricsReport r;
  r.accuracy = ratio(c.tp + c.tn, c.total());
  r.precision = ratio(c.tp, c.tp + c.fp);
  r.recall = ratio(c.tp, c.tp + c.fn);
  if (r.precision && r.recall && (*r.precision + *r.recall) > 0.0) {
    r.f1 = 2.0 * (*r.precision * *r.recall) / (*r.precision + *r.recall);
  }
  return r;
}

std::string format_percent(const std::optional<double>& fraction) {
  if (!fraction) return "undefined";
  return format_fixed(*fraction * 100.0, 1);
}

std::string format_report_row(const MetricsReport& report) {
  return format_percent(report.accuracy) + ',' + format_percent(report.precision) + ',' +
         format_percent(report.recall) + ',' + format_percent(report.f1);
}

ClassWeights class_weights(std::uint64_t n0, std::uint64_t n1) {
  if (n0 == 0 || n1 == 0) {
    throw Error(Errc::zero_count, "class weights need at least one sample of each class");
  }
  const double total = static_cast<double>(n0 + n1);
  return ClassWeights{n0, n1, total / static_cast<double>(n0), total / static_cast<double>(n1)};
}

}  // namespace maskkit
