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

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lbaug {

using Index = Eigen::Index;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using RowVectorX = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;

template <typename Scalar>
using SparseMatrix = Eigen::SparseMatrix<Scalar, Eigen::RowMajor>;

/// Base class of every error thrown by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text (mesh, bank, signal files). Carries the 1-based line number when known.
class ParseError : public Error
{
public:
    ParseError(const std::string& what, std::size_t line = 0)
        : Error(line ? what + " (line " + std::to_string(line) + ")" : what)
        , m_line(line)
    {}
    std::size_t line() const { return m_line; }

private:
    std::size_t m_line;
};

/// Input that parses but violates a domain invariant.
class ValidationError : public Error
{
public:
    using Error::Error;
};

/// Shapes of operands do not agree.
class DimensionError : public Error
{
public:
    using Error::Error;
};

/// An iterative solver hit its iteration cap.
class ConvergenceError : public Error
{
public:
    ConvergenceError(const std::string& what, double last_estimate, double residual)
        : Error(
              what + " (last estimate " + std::to_string(last_estimate) + ", residual " +
              std::to_string(residual) + ")")
        , m_last_estimate(last_estimate)
        , m_residual(residual)
    {}
    double last_estimate() const { return m_last_estimate; }
    double residual() const { return m_residual; }

private:
    double m_last_estimate;
    double m_residual;
};

/// A Chebyshev sweep produced non-finite values.
class DivergenceError : public Error
{
public:
    DivergenceError(Index iteration)
        : Error(
              "non-finite value in Chebyshev recurrence at order k = " +
              std::to_string(iteration) + "; operator spectrum is outside [-1, 1]")
        , m_iteration(iteration)
    {}
    Index iteration() const { return m_iteration; }

private:
    Index m_iteration;
};

/// Number of worker threads used by the parallel kernels (0 = runtime default).
void set_thread_count(int threads);
int thread_count();

/// SplitMix64 finalizer; used to derive independent sub-seeds from a top-level seed.
constexpr std::uint64_t mix_seed(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a)
{
    return mix_seed(seed ^ mix_seed(a + 0x51ed270b27ba5c1bULL));
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b)
{
    return derive_seed(derive_seed(seed, a), b);
}

} // namespace lbaug
