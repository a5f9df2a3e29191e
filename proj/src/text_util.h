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

#include <array>
#include <charconv>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lbaug::detail {

/// Whitespace tokenizer over lines; skips blank lines and strips text after `comment`.
class LineReader
{
public:
    LineReader(std::istream& in, char comment)
        : m_in(in)
        , m_comment(comment)
    {}

    /// Tokens of the next non-empty line. Views stay valid until the next call.
    std::optional<std::vector<std::string_view>> next()
    {
        while (std::getline(m_in, m_buffer)) {
            ++m_line;
            std::string_view text(m_buffer);
            if (m_comment != '\0') {
                const auto pos = text.find(m_comment);
                if (pos != std::string_view::npos) text = text.substr(0, pos);
            }
            auto tokens = split(text);
            if (!tokens.empty()) return tokens;
        }
        return std::nullopt;
    }

    std::size_t line() const { return m_line; }

    static std::vector<std::string_view> split(std::string_view text, char sep = '\0')
    {
        std::vector<std::string_view> tokens;
        std::size_t i = 0;
        auto is_sep = [sep](char c) {
            return sep == '\0' ? (c == ' ' || c == '\t' || c == '\r' || c == '\n') : c == sep;
        };
        if (sep != '\0') {
            while (true) {
                const auto pos = text.find(sep, i);
                auto token = text.substr(i, pos == std::string_view::npos ? pos : pos - i);
                while (!token.empty() && (token.back() == '\r' || token.back() == ' ')) {
                    token.remove_suffix(1);
                }
                while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
                tokens.push_back(token);
                if (pos == std::string_view::npos) break;
                i = pos + 1;
            }
            return tokens;
        }
        while (i < text.size()) {
            while (i < text.size() && is_sep(text[i])) ++i;
            const std::size_t start = i;
            while (i < text.size() && !is_sep(text[i])) ++i;
            if (i > start) tokens.push_back(text.substr(start, i - start));
        }
        return tokens;
    }

private:
    std::istream& m_in;
    char m_comment;
    std::string m_buffer;
    std::size_t m_line = 0;
};

template <typename T>
T parse_number(std::string_view token, std::size_t line)
{
    T value{};
    const char* first = token.data();
    const char* last = token.data() + token.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
        throw ParseError("invalid number '" + std::string(token) + "'", line);
    }
    return value;
}

/// Shortest decimal text that round-trips to the same value.
template <typename T>
std::string format_number(T value)
{
    std::array<char, 64> buf;
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), ptr);
}

} // namespace lbaug::detail
