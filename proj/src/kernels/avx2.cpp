// SPDX-License-Identifier: Apache-2.0
//
// riscade - cascaded channel modeling and sounding simulation for
// RIS-assisted wireless links
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// AVX2+FMA kernels, 4 doubles per lane group. This translation unit is
// compiled with -mavx2 -mfma on x86-64 only; whether it is ever executed
// is decided at runtime in dispatch.cpp.

#include "riscade/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace riscade::kernels
{

namespace
{

inline double hsum(__m256d v)
{
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(lo) + _mm_cvtsd_f64(_mm_unpackhi_pd(lo, lo));
}

void dot_real_avx2(const double *a_re, const double *a_im, const double *b, std::size_t n,
                   double *out_re, double *out_im)
{
    __m256d sr = _mm256_setzero_pd();
    __m256d si = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
    {
        __m256d bv = _mm256_loadu_pd(b + i);
        sr = _mm256_fmadd_pd(_mm256_loadu_pd(a_re + i), bv, sr);
        si = _mm256_fmadd_pd(_mm256_loadu_pd(a_im + i), bv, si);
    }
    double r = hsum(sr), m = hsum(si);
    for (; i < n; ++i)
    {
        r += a_re[i] * b[i];
        m += a_im[i] * b[i];
    }
    *out_re = r;
    *out_im = m;
}

void dot_complex_avx2(const double *a_re, const double *a_im, const double *b_re, const double *b_im,
                      std::size_t n, double *out_re, double *out_im)
{
    __m256d sr = _mm256_setzero_pd();
    __m256d si = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
    {
        __m256d ar = _mm256_loadu_pd(a_re + i);
        __m256d ai = _mm256_loadu_pd(a_im + i);
        __m256d br = _mm256_loadu_pd(b_re + i);
        __m256d bi = _mm256_loadu_pd(b_im + i);
        sr = _mm256_fmadd_pd(ar, br, sr);
        sr = _mm256_fnmadd_pd(ai, bi, sr);
        si = _mm256_fmadd_pd(ar, bi, si);
        si = _mm256_fmadd_pd(ai, br, si);
    }
    double r = hsum(sr), m = hsum(si);
    for (; i < n; ++i)
    {
        r += a_re[i] * b_re[i] - a_im[i] * b_im[i];
        m += a_re[i] * b_im[i] + a_im[i] * b_re[i];
    }
    *out_re = r;
    *out_im = m;
}

void conv_accum_avx2(const double *a_re, const double *a_im, std::size_t na,
                     const double *b_re, const double *b_im, std::size_t nb,
                     double w, double *out_re, double *out_im)
{
    for (std::size_t i = 0; i < na; ++i)
    {
        const double ar_s = w * a_re[i];
        const double ai_s = w * a_im[i];
        if (ar_s == 0.0 && ai_s == 0.0)
            continue;
        const __m256d ar = _mm256_set1_pd(ar_s);
        const __m256d ai = _mm256_set1_pd(ai_s);
        double *orow = out_re + i;
        double *irow = out_im + i;
        std::size_t j = 0;
        for (; j + 4 <= nb; j += 4)
        {
            __m256d br = _mm256_loadu_pd(b_re + j);
            __m256d bi = _mm256_loadu_pd(b_im + j);
            __m256d re = _mm256_loadu_pd(orow + j);
            __m256d im = _mm256_loadu_pd(irow + j);
            re = _mm256_fmadd_pd(ar, br, re);
            re = _mm256_fnmadd_pd(ai, bi, re);
            im = _mm256_fmadd_pd(ar, bi, im);
            im = _mm256_fmadd_pd(ai, br, im);
            _mm256_storeu_pd(orow + j, re);
            _mm256_storeu_pd(irow + j, im);
        }
        for (; j < nb; ++j)
        {
            orow[j] += ar_s * b_re[j] - ai_s * b_im[j];
            irow[j] += ar_s * b_im[j] + ai_s * b_re[j];
        }
    }
}

constexpr Ops avx2_ops_table = {"avx2", &dot_real_avx2, &dot_complex_avx2, &conv_accum_avx2};

} // namespace

const Ops *avx2_ops() noexcept
{
    return &avx2_ops_table;
}

} // namespace riscade::kernels

#else

namespace riscade::kernels
{
const Ops *avx2_ops() noexcept
{
    return nullptr;
}
} // namespace riscade::kernels

#endif
