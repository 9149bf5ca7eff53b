// Copyright 2026 The QuadArg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QUADARG_HASHING_H_
#define QUADARG_HASHING_H_

#include <string>
#include <string_view>

namespace quadarg {

// Lower-case hex SHA-256 digest.
std::string sha256_hex(std::string_view data);

}  // namespace quadarg

#endif  // QUADARG_HASHING_H_
