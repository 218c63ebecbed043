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

#ifndef riscade_kernels_H
#define riscade_kernels_H

#include <cstddef>
#include <string>
#include <vector>

// Arithmetic inner loops shared by the correlator, the convolution
// cascade and the array-factor evaluation. Complex data is planar
// (separate re/im arrays). Every kernel exists as a scalar reference and,
// where the build target supports it, as an AVX2+FMA or NEON variant; the
// active set is chosen once at runtime (see active() below) and all
// variants are equivalence-tested against the scalar reference.
//
// Accumulation order within one backend is fixed and deterministic, so a
// given backend always produces bit-identical results for identical
// inputs. Different backends may differ by reassociation rounding only.

namespace riscade::kernels
{

struct Ops
{
    const char *name;

    // Sum of a[i] * b[i] for complex a and real b.
    //   a_re, a_im - complex input, length n
    //   b          - real input, length n
    //   out_re/im  - accumulated sum (written, not accumulated into)
    void (*dot_real)(const double *a_re, const double *a_im, const double *b, std::size_t n,
                     double *out_re, double *out_im);

    // Sum of a[i] * b[i] for complex a and complex b (no conjugation).
    void (*dot_complex)(const double *a_re, const double *a_im, const double *b_re, const double *b_im,
                        std::size_t n, double *out_re, double *out_im);

    // out += w * (a conv b), full linear convolution of two complex
    // sequences with a real weight.
    //   a_re/a_im  - length na
    //   b_re/b_im  - length nb
    //   w          - real weight applied to every product
    //   out_re/im  - length at least na + nb - 1, accumulated into
    void (*conv_accum)(const double *a_re, const double *a_im, std::size_t na,
                       const double *b_re, const double *b_im, std::size_t nb,
                       double w, double *out_re, double *out_im);
};

// Backend selected for this process. Resolution order: the
// RISCADE_KERNELS environment variable ("scalar", "avx2", "neon") if set
// and available, otherwise the widest instruction set the CPU supports.
const Ops &active() noexcept;

// Force a specific backend; throws std::invalid_argument for names that
// are unknown or unavailable on this machine. Intended for tests.
void set_active(const std::string &name);

// Every backend compiled into this binary and usable on this CPU,
// scalar first.
std::vector<const Ops *> available() noexcept;

// Individual backends (null when not compiled in / not supported).
const Ops *scalar_ops() noexcept;
const Ops *avx2_ops() noexcept;
const Ops *neon_ops() noexcept;

} // namespace riscade::kernels

#endif
