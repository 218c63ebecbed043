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

#include "riscade/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>

namespace riscade::kernels
{

namespace
{

bool cpu_has_avx2_fma() noexcept
{
#if (defined(__x86_64__) || defined(_M_X64)) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const Ops *find(const std::string &name) noexcept
{
    if (name == "scalar")
        return scalar_ops();
    if (name == "avx2" && cpu_has_avx2_fma())
        return avx2_ops();
    if (name == "neon")
        return neon_ops();
    return nullptr;
}

const Ops *resolve_default() noexcept
{
    if (const char *env = std::getenv("RISCADE_KERNELS"))
    {
        if (const Ops *o = find(env))
            return o;
        // Unknown or unavailable override: fall through to autodetect.
    }
    if (cpu_has_avx2_fma())
        if (const Ops *o = avx2_ops())
            return o;
    if (const Ops *o = neon_ops())
        return o;
    return scalar_ops();
}

std::atomic<const Ops *> g_active{nullptr};

} // namespace

const Ops &active() noexcept
{
    const Ops *o = g_active.load(std::memory_order_acquire);
    if (!o)
    {
        o = resolve_default();
        g_active.store(o, std::memory_order_release);
    }
    return *o;
}

void set_active(const std::string &name)
{
    const Ops *o = find(name);
    if (!o)
        throw std::invalid_argument("kernels: backend '" + name + "' is unknown or unavailable on this CPU");
    g_active.store(o, std::memory_order_release);
}

std::vector<const Ops *> available() noexcept
{
    std::vector<const Ops *> out;
    out.push_back(scalar_ops());
    if (cpu_has_avx2_fma())
        if (const Ops *o = avx2_ops())
            out.push_back(o);
    if (const Ops *o = neon_ops())
        out.push_back(o);
    return out;
}

} // namespace riscade::kernels
