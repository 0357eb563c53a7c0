// Copyright 2026 The cobo Authors. All Rights Reserved.
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
// =============================================================================

// Umbrella header.

#ifndef COBO_COBO_HPP
#define COBO_COBO_HPP

#include "cobo/common.hpp"
#include "cobo/lowdiscrepancy.hpp"
#include "cobo/optim.hpp"
#include "cobo/gp.hpp"
#include "cobo/penalizer.hpp"
#include "cobo/acquisition.hpp"
#include "cobo/batch.hpp"
#include "cobo/bayesopt.hpp"
#include "cobo/plantsim.hpp"
#include "cobo/codesign.hpp"
#include "cobo/econ.hpp"
#include "cobo/config.hpp"
#include "cobo/run.hpp"

#endif  // COBO_COBO_HPP
