// Copyright 2026 The Voiceind Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef VOICEIND_PARALLEL_HPP_
#define VOICEIND_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace voiceind {

// 0 -> hardware concurrency (at least 1).
unsigned resolve_threads(unsigned requested) noexcept;

// Runs body(i) for i in [0, count) over contiguous index blocks.  Callers
// must make iterations independent (write only to slot i); under that
// contract the result does not depend on the thread count.  The first
// exception thrown by any iteration is rethrown.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace voiceind

#endif  // VOICEIND_PARALLEL_HPP_
