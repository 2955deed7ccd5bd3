// Copyright 2026 The bellkit Authors
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

#pragma once

#include <stdexcept>

namespace bellkit {

/// An input broke a documented precondition (bad dimensions, values out of
/// range, malformed data).
class ValidationError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// A request exceeded one of the fixed capacity limits below.
class CapacityError : public std::length_error {
  public:
    using std::length_error::length_error;
};

/// Dense operators are capped at 12 qubits (dimension 4096).
inline constexpr int kMaxQubits = 12;
inline constexpr long kMaxDim = 4096;

/// Exhaustive hidden-variable enumeration is single-shard up to this many
/// parties (4^8 = 65536 strategies); larger systems use the sharded mode.
inline constexpr int kLhvExhaustiveMaxParties = 8;

} // namespace bellkit
