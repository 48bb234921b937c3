// Copyright 2026 The todapin Project Developers
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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "todapin/errors.hpp"

namespace todapin {

/// Streaming mean and variance (Welford update, numerically stable).
class RunningMoments {
 public:
  void add(double x) {
    ++n_;
    const double d = x - mean_;
    mean_ += d / static_cast<double>(n_);
    m2_ += d * (x - mean_);
  }

  long long count() const { return n_; }
  double mean() const { return mean_; }

  /// Unbiased sample variance; 0 until two values have been seen.
  double variance() const {
    return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0;
  }

  /// Standard error of the mean, sqrt(variance / n).
  double standard_error() const {
    return n_ > 1 ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0;
  }

 private:
  long long n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

/// Batch-means error estimate for a single correlated time series: the
/// stream is cut into contiguous batches of fixed length and the spread of
/// the batch averages provides the error bar.  Only completed batches
/// contribute.
class BatchMeans {
 public:
  explicit BatchMeans(long long batch_length) : batch_length_(batch_length) {
    if (batch_length < 1) throw ValidationError("batch length must be positive");
  }

  void add(double x) {
    sum_ += x;
    if (++in_batch_ == batch_length_) {
      batches_.add(sum_ / static_cast<double>(batch_length_));
      sum_ = 0.0;
      in_batch_ = 0;
    }
  }

  long long completed() const { return batches_.count(); }
  double mean() const { return batches_.mean(); }
  double standard_error() const { return batches_.standard_error(); }

 private:
  long long batch_length_;
  long long in_batch_ = 0;
  double sum_ = 0.0;
  RunningMoments batches_;
};

/// Slope of the least-squares line through (x_i, y_i).  Requires at least
/// two distinct abscissae.
inline double least_squares_slope(const std::vector<double>& x,
                                  const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw ValidationError("slope fit needs two or more paired points");
  }
  double mx = 0.0;
  double my = 0.0;
  const auto n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw ValidationError("slope fit needs distinct abscissae");
  return sxy / sxx;
}

/// Median of a copy of the input.
inline double median(std::vector<double> v) {
  if (v.empty()) throw ValidationError("median of empty sequence");
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  double hi = v[mid];
  if (v.size() % 2 == 1) return hi;
  std::nth_element(v.begin(), v.begin() + mid - 1, v.begin() + mid);
  return 0.5 * (v[mid - 1] + hi);
}

}  // namespace todapin
