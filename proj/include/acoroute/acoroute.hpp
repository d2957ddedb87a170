// Copyright 2026 The acoroute Authors
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

#include "acoroute/acs.hpp"
#include "acoroute/bench.hpp"
#include "acoroute/cost.hpp"
#include "acoroute/csv.hpp"
#include "acoroute/errors.hpp"
#include "acoroute/gen.hpp"
#include "acoroute/instance.hpp"
#include "acoroute/kernels.hpp"
#include "acoroute/pool.hpp"
#include "acoroute/rng.hpp"
#include "acoroute/runtime.hpp"
