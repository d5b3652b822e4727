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

#ifndef VOICEIND_TEXTIO_HPP_
#define VOICEIND_TEXTIO_HPP_

#include <string>
#include <string_view>

namespace voiceind {

// Shortest decimal form that parses back to the identical double.  Used
// for persisted artifacts (embedding files, release models) so that a
// save/load round trip is bit-faithful.
std::string format_roundtrip(double value);

// 12-significant-digit form used in reports and CSV dumps.
std::string format_sig12(double value);

std::string base64_encode(std::string_view bytes);
// Strict RFC 4648 decode; throws Error on invalid input.
std::string base64_decode(std::string_view text);

}  // namespace voiceind

#endif  // VOICEIND_TEXTIO_HPP_
