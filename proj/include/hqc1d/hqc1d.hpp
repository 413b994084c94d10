// Copyright 2026 The hqc1d Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "hqc1d/circuit.hpp"
#include "hqc1d/compile.hpp"
#include "hqc1d/errors.hpp"
#include "hqc1d/gates.hpp"
#include "hqc1d/ham5.hpp"
#include "hqc1d/ham8.hpp"
#include "hqc1d/history.hpp"
#include "hqc1d/identities.hpp"
#include "hqc1d/oracle.hpp"
#include "hqc1d/runner.hpp"
#include "hqc1d/scheme.hpp"
#include "hqc1d/state.hpp"
#include "hqc1d/walk.hpp"
