// Copyright 2026 The steinbound Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace steinbound {

// Neumaier-compensated running sum. Results depend only on the order of
// additions, so reductions performed in sample-index order are reproducible.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::fabs(sum_) >= std::fabs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  [[nodiscard]] double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline double compensated_sum(std::span<const double> values) {
  CompensatedSum s;
  for (double v : values) s.add(v);
  return s.value();
}

// Evenly spaced grid with both endpoints; count == 1 yields {lo}.
inline std::vector<double> linspace(double lo, double hi, std::size_t count) {
  if (count == 0) throw std::invalid_argument("linspace: count must be >= 1");
  if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi)
    throw std::invalid_argument("linspace: need finite lo <= hi");
  std::vector<double> v(count);
  if (count == 1) {
    v[0] = lo;
    return v;
  }
  const double span = hi - lo;
  const auto last = static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i)
    v[i] = lo + span * (static_cast<double>(i) / last);
  v[count - 1] = hi;
  return v;
}

inline void require_finite(double v, const char* what) {
  if (!std::isfinite(v))
    throw std::domain_error(std::string(what) + ": argument must be finite");
}

}  // namespace steinbound
