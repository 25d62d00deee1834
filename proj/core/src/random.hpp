/*
 * Copyright (C) 2026 The seaird authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#ifndef SEAIRD_SRC_RANDOM_HPP
#define SEAIRD_SRC_RANDOM_HPP

#include <cstdint>
#include <random>

namespace seaird::detail
{

inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// mt19937_64 with hand-rolled draws so sequences do not depend on the standard library.
class Rng
{
public:
    Rng(std::uint64_t seed, std::uint64_t stream)
        : m_engine(splitmix64(seed ^ splitmix64(stream)))
    {
    }

    /// Uniform on [0, 1).
    double uniform()
    {
        return static_cast<double>(m_engine() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer on [0, n).
    std::uint64_t below(std::uint64_t n)
    {
        return m_engine() % n;
    }

private:
    std::mt19937_64 m_engine;
};

} // namespace seaird::detail

#endif // SEAIRD_SRC_RANDOM_HPP
