// SPDX-License-Identifier: Apache-2.0
//
// Scalar reference kernels. Every SIMD backend is checked against these.

#include <cmath>
#include <cstddef>

#include "misr/errors.hpp"
#include "misr/kernels.hpp"

namespace misr::kernels {

NegHalfPow neg_half_pow(double alpha) {
  if (!(alpha > 2.0)) throw invalid_parameter("path loss exponent must be > 2");
  NegHalfPow p{};
  p.exponent = alpha * 0.5;
  double ipart = 0.0;
  p.halfint = std::modf(alpha, &ipart) == 0.0 && alpha < 64.0;
  if (p.halfint) {
    long a = static_cast<long>(ipart);
    p.whole = static_cast<int>(a / 2);
    p.half = (a % 2) != 0;
  }
  return p;
}

namespace {

// r2^whole * sqrt(r2)^half, multiplied out one factor at a time. The AVX2
// backend performs the identical operation sequence per lane, so elementwise
// results are bit-equal across backends.
inline double pow_denom(double r2, const NegHalfPow& p) {
  double acc = 1.0;
  for (int i = 0; i < p.whole; ++i) acc *= r2;
  if (p.half) acc *= std::sqrt(r2);
  return acc;
}

void squared_norms_scalar(const double* x, const double* y, std::size_t n,
                          double* r2) {
  for (std::size_t i = 0; i < n; ++i) r2[i] = x[i] * x[i] + y[i] * y[i];
}

void squared_dists_scalar(const double* x, const double* y, std::size_t n,
                          double cx, double cy, double* r2) {
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - cx;
    const double dy = y[i] - cy;
    r2[i] = dx * dx + dy * dy;
  }
}

double pow_sum_scalar(const double* r2, std::size_t n, const NegHalfPow& p,
                      double scale, double* terms) {
  double sum = 0.0;
  if (p.halfint) {
    for (std::size_t i = 0; i < n; ++i) {
      const double t = scale / pow_denom(r2[i], p);
      if (terms) terms[i] = t;
      sum += t;
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      const double t = scale * std::pow(r2[i], -p.exponent);
      if (terms) terms[i] = t;
      sum += t;
    }
  }
  return sum;
}

std::size_t argmax_scalar(const double* v, std::size_t n) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (v[i] > v[best]) best = i;
  return best;
}

}  // namespace

const Kernels& scalar() {
  static const Kernels k{"scalar", squared_norms_scalar, squared_dists_scalar,
                         pow_sum_scalar, argmax_scalar};
  return k;
}

}  // namespace misr::kernels
