// Copyright 2026 The acoroute Authors
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
#include <cstdint>
#include <vector>

#include "acoroute/errors.hpp"

#if defined(__AVX2__)
#include <immintrin.h>
#endif

namespace acoroute {
namespace kernels {

// Data-parallel selection primitives. Contracts:
//  - build_choice_vector is elementwise (no cross-lane dependence), so the
//    vector and scalar forms are bit-identical: two multiplies per element,
//    associated as (tau^a * eta^b) * mask.
//  - reduce_max_index may reduce in any shape internally but must return the
//    smallest index attaining the maximum, same as a left-to-right scan.
//  - scan_roulette accumulates the prefix in double in index order; its
//    output is a pure function of (values, u). The blocked variant trades
//    that per-u exactness for speed and is only distribution-equivalent.

template <typename Real>
inline Real pow_alpha(Real tau, double alpha) {
  if (alpha == 1.0) return tau;
  return static_cast<Real>(
      std::pow(static_cast<double>(tau), alpha));
}

// out[r] = tau[r]^alpha * eta[r]^beta * mask[r]
template <typename Real>
inline void build_choice_vector(const Real* tau, const Real* eta,
                                const Real* mask, Real* out, std::size_t n,
                                double alpha, double beta) {
  for (std::size_t i = 0; i < n; ++i) {
    Real e = beta == 1.0 ? eta[i]
                         : static_cast<Real>(std::pow(
                               static_cast<double>(eta[i]), beta));
    out[i] = pow_alpha(tau[i], alpha) * e * mask[i];
  }
}

// Same contract with eta^beta already cached by the caller; this is the form
// both runtimes use in the hot loop.
template <typename Real>
inline void build_choice_vector_pow_scalar(const Real* tau,
                                           const Real* eta_pow,
                                           const Real* mask, Real* out,
                                           std::size_t n, double alpha) {
  for (std::size_t i = 0; i < n; ++i)
    out[i] = pow_alpha(tau[i], alpha) * eta_pow[i] * mask[i];
}

template <typename Real>
inline void build_choice_vector_pow(const Real* tau, const Real* eta_pow,
                                    const Real* mask, Real* out, std::size_t n,
                                    double alpha) {
  build_choice_vector_pow_scalar(tau, eta_pow, mask, out, n, alpha);
}

#if defined(__AVX2__)
template <>
inline void build_choice_vector_pow<float>(const float* tau,
                                           const float* eta_pow,
                                           const float* mask, float* out,
                                           std::size_t n, double alpha) {
  if (alpha != 1.0) {
    build_choice_vector_pow_scalar(tau, eta_pow, mask, out, n, alpha);
    return;
  }
  const std::size_t main_n = n & ~std::size_t(7);
  std::size_t i = 0;
  for (; i < main_n; i += 8) {
    __m256 t = _mm256_loadu_ps(tau + i);
    __m256 e = _mm256_loadu_ps(eta_pow + i);
    __m256 m = _mm256_loadu_ps(mask + i);
    _mm256_storeu_ps(out + i, _mm256_mul_ps(_mm256_mul_ps(t, e), m));
  }
  for (; i < n; ++i) out[i] = tau[i] * eta_pow[i] * mask[i];
}

template <>
inline void build_choice_vector_pow<double>(const double* tau,
                                            const double* eta_pow,
                                            const double* mask, double* out,
                                            std::size_t n, double alpha) {
  if (alpha != 1.0) {
    build_choice_vector_pow_scalar(tau, eta_pow, mask, out, n, alpha);
    return;
  }
  const std::size_t main_n = n & ~std::size_t(3);
  std::size_t i = 0;
  for (; i < main_n; i += 4) {
    __m256d t = _mm256_loadu_pd(tau + i);
    __m256d e = _mm256_loadu_pd(eta_pow + i);
    __m256d m = _mm256_loadu_pd(mask + i);
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_mul_pd(t, e), m));
  }
  for (; i < n; ++i) out[i] = tau[i] * eta_pow[i] * mask[i];
}
#endif  // __AVX2__

template <typename Real>
inline std::size_t reduce_max_index_scalar(const Real* v, std::size_t n) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (v[i] > v[best]) best = i;  // strict: ties keep the smaller index
  return best;
}

template <typename Real>
inline std::size_t reduce_max_index(const Real* v, std::size_t n) {
  return reduce_max_index_scalar(v, n);
}

#if defined(__AVX2__)
template <>
inline std::size_t reduce_max_index<float>(const float* v, std::size_t n) {
  if (n < 16) return reduce_max_index_scalar(v, n);
  __m256 best = _mm256_loadu_ps(v);
  __m256i bidx = _mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7);
  const __m256i step = _mm256_set1_epi32(8);
  __m256i idx = bidx;
  const std::size_t main_n = n & ~std::size_t(7);
  std::size_t i = 8;
  for (; i < main_n; i += 8) {
    idx = _mm256_add_epi32(idx, step);
    __m256 x = _mm256_loadu_ps(v + i);
    // strict > keeps the earliest index within each lane
    __m256 gt = _mm256_cmp_ps(x, best, _CMP_GT_OQ);
    best = _mm256_blendv_ps(best, x, gt);
    bidx = _mm256_blendv_epi8(bidx, idx, _mm256_castps_si256(gt));
  }
  alignas(32) float bv[8];
  alignas(32) std::int32_t bi[8];
  _mm256_store_ps(bv, best);
  _mm256_store_si256(reinterpret_cast<__m256i*>(bi), bidx);
  float top = bv[0];
  std::size_t top_i = static_cast<std::size_t>(bi[0]);
  for (int lane = 1; lane < 8; ++lane) {
    std::size_t cand = static_cast<std::size_t>(bi[lane]);
    if (bv[lane] > top || (bv[lane] == top && cand < top_i)) {
      top = bv[lane];
      top_i = cand;
    }
  }
  for (; i < n; ++i)
    if (v[i] > top) {  // tail indices are all larger, so strict > suffices
      top = v[i];
      top_i = i;
    }
  return top_i;
}

template <>
inline std::size_t reduce_max_index<double>(const double* v, std::size_t n) {
  if (n < 8) return reduce_max_index_scalar(v, n);
  __m256d best = _mm256_loadu_pd(v);
  __m256i bidx = _mm256_setr_epi64x(0, 1, 2, 3);
  const __m256i step = _mm256_set1_epi64x(4);
  __m256i idx = bidx;
  const std::size_t main_n = n & ~std::size_t(3);
  std::size_t i = 4;
  for (; i < main_n; i += 4) {
    idx = _mm256_add_epi64(idx, step);
    __m256d x = _mm256_loadu_pd(v + i);
    __m256d gt = _mm256_cmp_pd(x, best, _CMP_GT_OQ);
    best = _mm256_blendv_pd(best, x, gt);
    bidx = _mm256_blendv_epi8(bidx, idx, _mm256_castpd_si256(gt));
  }
  alignas(32) double bv[4];
  alignas(32) std::int64_t bi[4];
  _mm256_store_pd(bv, best);
  _mm256_store_si256(reinterpret_cast<__m256i*>(bi), bidx);
  double top = bv[0];
  std::size_t top_i = static_cast<std::size_t>(bi[0]);
  for (int lane = 1; lane < 4; ++lane) {
    std::size_t cand = static_cast<std::size_t>(bi[lane]);
    if (bv[lane] > top || (bv[lane] == top && cand < top_i)) {
      top = bv[lane];
      top_i = cand;
    }
  }
  for (; i < n; ++i)
    if (v[i] > top) {
      top = v[i];
      top_i = i;
    }
  return top_i;
}
#endif  // __AVX2__

// Smallest j with prefix_sum(j) > u * sum. Prefix accumulates in double in
// index order; u < 1 and sum > 0 guarantee a hit, with a positive-entry
// fallback against the one rounding edge (u*sum rounding up to sum).
template <typename Real>
inline std::size_t scan_roulette(const Real* v, std::size_t n, double u) {
  double sum = 0;
  for (std::size_t i = 0; i < n; ++i) sum += static_cast<double>(v[i]);
  if (!(sum > 0)) throw AllMasked("scan_roulette: all choice values are zero");
  double target = u * sum;
  double acc = 0;
  std::size_t last_positive = n;
  for (std::size_t i = 0; i < n; ++i) {
    double x = static_cast<double>(v[i]);
    acc += x;
    if (x > 0) last_positive = i;
    if (acc > target) return i;
  }
  return last_positive;
}

// Blocked variant: per-block sums first (block-local float math), then a
// scalar scan inside the selected block. Distribution-equivalent to
// scan_roulette; per-u outputs can differ by float reassociation, so this is
// the benchmarking path only. block = 1 degenerates to the sequential scan.
template <typename Real>
inline std::size_t scan_roulette_blocked(const Real* v, std::size_t n,
                                         double u, std::size_t block = 8) {
  if (block < 1) block = 1;
  std::size_t nblocks = (n + block - 1) / block;
  double sum = 0;
  // single pass over blocks to get the grand total
  std::vector<double> bsum(nblocks, 0.0);
  for (std::size_t b = 0; b < nblocks; ++b) {
    std::size_t lo = b * block, hi = lo + block < n ? lo + block : n;
    Real s = 0;
    for (std::size_t i = lo; i < hi; ++i) s += v[i];
    bsum[b] = static_cast<double>(s);
    sum += bsum[b];
  }
  if (!(sum > 0)) throw AllMasked("scan_roulette: all choice values are zero");
  double target = u * sum;
  double acc = 0;
  std::size_t last_positive = n;
  for (std::size_t b = 0; b < nblocks; ++b) {
    std::size_t lo = b * block, hi = lo + block < n ? lo + block : n;
    if (acc + bsum[b] > target) {
      for (std::size_t i = lo; i < hi; ++i) {
        double x = static_cast<double>(v[i]);
        acc += x;
        if (x > 0) last_positive = i;
        if (acc > target) return i;
      }
    } else {
      acc += bsum[b];
      for (std::size_t i = lo; i < hi; ++i)
        if (v[i] > 0) last_positive = i;
    }
  }
  if (last_positive < n) return last_positive;
  throw AllMasked("scan_roulette: all choice values are zero");
}

}  // namespace kernels
}  // namespace acoroute
