/*
 * Copyright 2026 The lbaug Authors. All rights reserved.
 * This file is licensed to you under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License. You may obtain a copy
 * of the License at http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software distributed under
 * the License is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR REPRESENTATIONS
 * OF ANY KIND, either express or implied. See the License for the specific language
 * governing permissions and limitations under the License.
 */
#pragma once

#include <lbaug/common.h>

#include <bit>
#include <cstring>
#include <istream>
#include <ostream>
#include <string_view>

namespace lbaug::detail {

template <typename T>
T to_little_endian(T value)
{
    if constexpr (std::endian::native == std::endian::big) {
        unsigned char bytes[sizeof(T)];
        std::memcpy(bytes, &value, sizeof(T));
        for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(bytes[i], bytes[sizeof(T) - 1 - i]);
        std::memcpy(&value, bytes, sizeof(T));
    }
    return value;
}

inline void write_u64(std::ostream& out, std::uint64_t v)
{
    v = to_little_endian(v);
    out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

inline void write_f64(std::ostream& out, double v)
{
    v = to_little_endian(v);
    out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

inline std::uint64_t read_u64(std::istream& in)
{
    std::uint64_t v = 0;
    if (!in.read(reinterpret_cast<char*>(&v), sizeof(v))) throw ParseError("truncated binary file");
    return to_little_endian(v);
}

inline double read_f64(std::istream& in)
{
    double v = 0;
    if (!in.read(reinterpret_cast<char*>(&v), sizeof(v))) throw ParseError("truncated binary file");
    return to_little_endian(v);
}

inline void expect_magic(std::istream& in, std::string_view magic)
{
    char buf[8] = {};
    if (!in.read(buf, 8) || std::string_view(buf, 8) != magic) {
        throw ParseError("bad magic; expected '" + std::string(magic) + "'");
    }
}

} // namespace lbaug::detail
