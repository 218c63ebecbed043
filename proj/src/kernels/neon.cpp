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

// NEON kernels (AArch64, 2 doubles per vector). Mirrors the AVX2 variant.

#include "riscade/kernels.hpp"

#if defined(__aarch64__) || defined(_M_ARM64)

#include <arm_neon.h>

namespace riscade::kernels
{

namespace
{

inline double hsum(float64x2_t v)
{
    return vgetq_lane_f64(v, 0) + vgetq_lane_f64(v, 1);
}

void dot_real_neon(const double *a_re, const double *a_im, const double *b, std::size_t n,
                   double *out_re, double *out_im)
{
    float64x2_t sr = vdupq_n_f64(0.0);
    float64x2_t si = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
    {
        float64x2_t bv = vld1q_f64(b + i);
        sr = vfmaq_f64(sr, vld1q_f64(a_re + i), bv);
        si = vfmaq_f64(si, vld1q_f64(a_im + i), bv);
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

void dot_complex_neon(const double *a_re, const double *a_im, const double *b_re, const double *b_im,
                      std::size_t n, double *out_re, double *out_im)
{
    float64x2_t sr = vdupq_n_f64(0.0);
    float64x2_t si = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
    {
        float64x2_t ar = vld1q_f64(a_re + i);
        float64x2_t ai = vld1q_f64(a_im + i);
        float64x2_t br = vld1q_f64(b_re + i);
        float64x2_t bi = vld1q_f64(b_im + i);
        sr = vfmaq_f64(sr, ar, br);
        sr = vfmsq_f64(sr, ai, bi);
        si = vfmaq_f64(si, ar, bi);
        si = vfmaq_f64(si, ai, br);
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

void conv_accum_neon(const double *a_re, const double *a_im, std::size_t na,
                     const double *b_re, const double *b_im, std::size_t nb,
                     double w, double *out_re, double *out_im)
{
    for (std::size_t i = 0; i < na; ++i)
    {
        const double ar_s = w * a_re[i];
        const double ai_s = w * a_im[i];
        if (ar_s == 0.0 && ai_s == 0.0)
            continue;
        const float64x2_t ar = vdupq_n_f64(ar_s);
        const float64x2_t ai = vdupq_n_f64(ai_s);
        double *orow = out_re + i;
        double *irow = out_im + i;
        std::size_t j = 0;
        for (; j + 2 <= nb; j += 2)
        {
            float64x2_t br = vld1q_f64(b_re + j);
            float64x2_t bi = vld1q_f64(b_im + j);
            float64x2_t re = vld1q_f64(orow + j);
            float64x2_t im = vld1q_f64(irow + j);
            re = vfmaq_f64(re, ar, br);
            re = vfmsq_f64(re, ai, bi);
            im = vfmaq_f64(im, ar, bi);
            im = vfmaq_f64(im, ai, br);
            vst1q_f64(orow + j, re);
            vst1q_f64(irow + j, im);
        }
        for (; j < nb; ++j)
        {
            orow[j] += ar_s * b_re[j] - ai_s * b_im[j];
            irow[j] += ar_s * b_im[j] + ai_s * b_re[j];
        }
    }
}

constexpr Ops neon_ops_table = {"neon", &dot_real_neon, &dot_complex_neon, &conv_accum_neon};

} // namespace

const Ops *neon_ops() noexcept
{
    return &neon_ops_table;
}

} // namespace riscade::kernels

#else

namespace riscade::kernels
{
const Ops *neon_ops() noexcept
{
    return nullptr;
}
} // namespace riscade::kernels

#endif
