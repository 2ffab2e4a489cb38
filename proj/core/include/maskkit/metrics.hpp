#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>

namespace maskkit {

// Binary labels: 0 = negative, 1 = positive.
struct ConfusionCounts {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t tn = 0;
  std::uint64_t fn = 0;

  std::uint64_t total() const noexcept { return tp + fp + tn + fn; }
  std::uint64_t positives() const noexcept { return tp + fn; }
  std::uint64_t negatives() const noexcept { return tn + fp; }
  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

/// Throws Errc::length_mismatch or Errc::unknown_label (anything but 0/1).
ConfusionCounts confusion_from_pairs(std::span<const int> truth, std::span<const int> pred);

// Empty denominators give nullopt rather than a misleading 0.
struct MetricsReport {
  std::optional<double> accuracy;
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> f1;
};

MetricsReport metrics(const ConfusionCounts& c);

/// Percentage with one decimal ("87.7"), or "undefined".
std::string format_percent(const std::optional<double>& fraction);

/// "accuracy,precision,recall,f1" in format_percent form.
std::string format_report_row(const MetricsReport& report);

struct Fraction {
  std::uint64_t num = 0;
  std::uint64_t den = 1;
  double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
};

// Inverse-frequency weights w0 = (n0 + n1) / n0, w1 = (n0 + n1) / n1.
struct ClassWeights {
  std::uint64_t n0 = 0;
  std::uint64_t n1 = 0;
  double w0 = 0.0;
  double w1 = 0.0;

  Fraction w0_exact() const noexcept { return {n0 + n1, n0}; }
  Fraction w1_exact() const noexcept { return {n0 + n1, n1}; }
};

/// Throws Errc::zero_count when either class is empty.
ClassWeights class_weights(std::uint64_t n0, std::uint64_t n1);

}  // namespace maskkit
