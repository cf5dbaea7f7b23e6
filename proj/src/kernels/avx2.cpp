// SPDX-License-Identifier: Apache-2.0
//
// AVX2 variants of the inner-loop kernels. Elementwise operation order is
// identical to the scalar reference (mul/sqrt/div are all correctly rounded),
// so per-element outputs are bit-equal; only the reduction order differs.

#include "misr/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>
#include <cstddef>
#include <cstdint>

namespace misr::kernels::detail {

namespace {

void squared_norms_avx2(const double* x, const double* y, std::size_t n,
                        double* r2) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vx = _mm256_loadu_pd(x + i);
    const __m256d vy = _mm256_loadu_pd(y + i);
    _mm256_storeu_pd(r2 + i,
                     _mm256_add_pd(_mm256_mul_pd(vx, vx), _mm256_mul_pd(vy, vy)));
  }
  for (; i < n; ++i) r2[i] = x[i] * x[i] + y[i] * y[i];
}

void squared_dists_avx2(const double* x, const double* y, std::size_t n,
                        double cx, double cy, double* r2) {
  const __m256d vcx = _mm256_set1_pd(cx);
  const __m256d vcy = _mm256_set1_pd(cy);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(x + i), vcx);
    const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(y + i), vcy);
    _mm256_storeu_pd(r2 + i,
                     _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)));
  }
  for (; i < n; ++i) {
    const double dx = x[i] - cx;
    const double dy = y[i] - cy;
    r2[i] = dx * dx + dy * dy;
  }
}

inline double pow_denom_tail(double r2, const NegHalfPow& p) {
  double acc = 1.0;
  for (int w = 0; w < p.whole; ++w) acc *= r2;
  if (p.half) acc *= std::sqrt(r2);
  return acc;
}

double pow_sum_avx2(const double* r2, std::size_t n, const NegHalfPow& p,
                    double scale, double* terms) {
  const __m256d vscale = _mm256_set1_pd(scale);
  const __m256d vone = _mm256_set1_pd(1.0);
  __m256d vsum = _mm256_setzero_pd();
  std::size_t i = 0;
  if (p.halfint) {
    for (; i + 4 <= n; i += 4) {
      const __m256d r = _mm256_loadu_pd(r2 + i);
      __m256d den = vone;
      for (int w = 0; w < p.whole; ++w) den = _mm256_mul_pd(den, r);
      if (p.half) den = _mm256_mul_pd(den, _mm256_sqrt_pd(r));
      const __m256d t = _mm256_div_pd(vscale, den);
      if (terms) _mm256_storeu_pd(terms + i, t);
      vsum = _mm256_add_pd(vsum, t);
    }
  } else {
    // pow has no vector form here; keep lanes scalar but preserve the
    // four-accumulator reduction so results match the halfint path's shape.
    alignas(32) double lane[4];
    for (; i + 4 <= n; i += 4) {
      for (int l = 0; l < 4; ++l)
        lane[l] = scale * std::pow(r2[i + l], -p.exponent);
      if (terms) {
        terms[i] = lane[0];
        terms[i + 1] = lane[1];
        terms[i + 2] = lane[2];
        terms[i + 3] = lane[3];
      }
      vsum = _mm256_add_pd(vsum, _mm256_load_pd(lane));
    }
  }
  alignas(32) double part[4];
  _mm256_store_pd(part, vsum);
  double sum = ((part[0] + part[1]) + part[2]) + part[3];
  for (; i < n; ++i) {
    const double t = p.halfint ? scale / pow_denom_tail(r2[i], p)
                               : scale * std::pow(r2[i], -p.exponent);
    if (terms) terms[i] = t;
    sum += t;
  }
  return sum;
}

std::size_t argmax_avx2(const double* v, std::size_t n) {
  if (n < 8) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (v[i] > v[best]) best = i;
    return best;
  }
  __m256d maxv = _mm256_loadu_pd(v);
  __m256i maxi = _mm256_setr_epi64x(0, 1, 2, 3);
  __m256i idx = maxi;
  const __m256i step = _mm256_set1_epi64x(4);
  std::size_t i = 4;
  for (; i + 4 <= n; i += 4) {
    idx = _mm256_add_epi64(idx, step);
    const __m256d val = _mm256_loadu_pd(v + i);
    const __m256d gt = _mm256_cmp_pd(val, maxv, _CMP_GT_OQ);
    maxv = _mm256_blendv_pd(maxv, val, gt);
    maxi = _mm256_blendv_epi8(maxi, idx, _mm256_castpd_si256(gt));
  }
  alignas(32) double val[4];
  alignas(32) std::int64_t ind[4];
  _mm256_store_pd(val, maxv);
  _mm256_store_si256(reinterpret_cast<__m256i*>(ind), maxi);
  double bestv = val[0];
  std::size_t best = static_cast<std::size_t>(ind[0]);
  for (int l = 1; l < 4; ++l) {
    const auto bi = static_cast<std::size_t>(ind[l]);
    if (val[l] > bestv || (val[l] == bestv && bi < best)) {
      bestv = val[l];
      best = bi;
    }
  }
  for (; i < n; ++i)
    if (v[i] > bestv) {
      bestv = v[i];
      best = i;
    }
  return best;
}

}  // namespace

const Kernels* avx2_table() {
  static const Kernels k{"avx2", squared_norms_avx2, squared_dists_avx2,
                         pow_sum_avx2, argmax_avx2};
  return &k;
}

}  // namespace misr::kernels::detail

#else

namespace misr::kernels::detail {
const Kernels* avx2_table() { return nullptr; }
}  // namespace misr::kernels::detail

#endif
