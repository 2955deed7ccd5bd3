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

// Umbrella header: the whole library in one include.

#pragma once

#include "bellkit/analysis.hpp"
#include "bellkit/bell_operators.hpp"
#include "bellkit/errors.hpp"
#include "bellkit/lhv.hpp"
#include "bellkit/linalg.hpp"
#include "bellkit/observables.hpp"
#include "bellkit/parallel.hpp"
#include "bellkit/serialize.hpp"
#include "bellkit/states.hpp"
