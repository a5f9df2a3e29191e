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
#include <lbaug/common.h>

#include <atomic>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lbaug {

namespace {
std::atomic<int> g_thread_count{0};
}

void set_thread_count(int threads)
{
    if (threads < 0) throw ValidationError("thread count must be >= 0");
    g_thread_count = threads;
}

int thread_count()
{
    const int configured = g_thread_count;
    if (configured > 0) return configured;
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

} // namespace lbaug
