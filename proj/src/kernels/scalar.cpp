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

// Scalar reference kernels. These define the semantics every SIMD variant
// is tested against; keep them simple and obviously correct.

#include "riscade/kernels.hpp"

namespace riscade::kernels
{

namespace
{

void dot_real_scalar(const double *a_re, const double *a_im, const double *b, std::size_t n,
                     double *out_re, double *out_im)
{
    double sr = 0.0, si = 0.0;
    for (std::size_t i = 0; i < n; ++i)
    {
        sr += a_re[i] * b[i];
        si += a_im[i] * b[i];
    }
    *out_re = sr;
    *out_im = si;
}

void dot_complex_scalar(const double *a_re, const double *a_im, const double *b_re, const double *b_im,
                        std::size_t n, double *out_re, double *out_im)
{
    double sr = 0.0, si = 0.0;
    for (std::size_t i = 0; i < n; ++i)
    {
        sr += a_re[i] * b_re[i] - a_im[i] * b_im[i];
        si += a_re[i] * b_im[i] + a_im[i] * b_re[i];
    }
    *out_re = sr;
    *out_im = si;
}

void conv_accum_scalar(const double *a_re, const double *a_im, std::size_t na,
                       const double *b_re, const double *b_im, std::size_t nb,
                       double w, double *out_re, double *out_im)
{
    for (std::size_t i = 0; i < na; ++i)
    {
        const double ar = w * a_re[i];
        const double ai = w * a_im[i];
        if (ar == 0.0 && ai == 0.0)
            continue;
        double *orow = out_re + i;
        double *irow = out_im + i;
        for (std::size_t j = 0; j < nb; ++j)
        {
            orow[j] += ar * b_re[j] - ai * b_im[j];
            irow[j] += ar * b_im[j] + ai * b_re[j];
        }
    }
}

constexpr Ops scalar_ops_table = {"scalar", &dot_real_scalar, &dot_complex_scalar, &conv_accum_scalar};

} // namespace

const Ops *scalar_ops() noexcept
{
    return &scalar_ops_table;
}

} // namespace riscade::kernels
