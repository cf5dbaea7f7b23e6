// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string_view>

namespace misr::kernels {

// Exponent plan for evaluating r^-alpha on squared distances, i.e.
// r2^(-alpha/2). Integer alpha maps to multiplies plus at most one sqrt;
// anything else goes through pow.
struct NegHalfPow {
  double exponent;  // alpha / 2
  int whole;        // integer part when half-integer form applies
  bool half;        // extra sqrt(r2) factor (odd alpha)
  bool halfint;     // true when the mul/sqrt form applies
};

NegHalfPow neg_half_pow(double alpha);

// One backend = one table of the data-parallel inner loops. The scalar table
// is the reference; SIMD tables must match it elementwise (bit-exact for the
// elementwise ops, small relative tolerance for the reductions).
struct Kernels {
  const char* name;

  // r2[i] = x[i]^2 + y[i]^2
  void (*squared_norms)(const double* x, const double* y, std::size_t n,
                        double* r2);

  // r2[i] = (x[i]-cx)^2 + (y[i]-cy)^2
  void (*squared_dists)(const double* x, const double* y, std::size_t n,
                        double cx, double cy, double* r2);

  // terms[i] = scale * r2[i]^(-p); returns the sum of all terms.
  // terms may be nullptr when only the sum is needed.
  double (*pow_sum)(const double* r2, std::size_t n, const NegHalfPow& p,
                    double scale, double* terms);

  // Index of the maximum element; ties broken toward the lowest index. n > 0.
  std::size_t (*argmax)(const double* v, std::size_t n);
};

const Kernels& scalar();
const Kernels* avx2();    // nullptr when the CPU lacks AVX2
const Kernels& active();  // currently selected backend

// "auto" (default), "scalar", or "avx2". Throws invalid_parameter for an
// unknown name or an unsupported backend.
void select(std::string_view name);

}  // namespace misr::kernels
