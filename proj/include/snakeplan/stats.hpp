#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace snakeplan {

// Mean after dropping floor(trim * n) values from each end of the sorted
// sample.
inline double trimmed_mean(std::vector<double> values, double trim = 0.2) {
  if (values.empty()) throw std::invalid_argument("trimmed_mean: empty input");
  std::sort(values.begin(), values.end());
  const std::size_t drop = static_cast<std::size_t>(trim * values.size());
  double sum = 0.0;
  for (std::size_t i = drop; i < values.size() - drop; ++i) sum += values[i];
  return sum / static_cast<double>(values.size() - 2 * drop);
}

inline double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median: empty input");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace snakeplan
