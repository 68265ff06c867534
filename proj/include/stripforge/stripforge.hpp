// Copyright 2026 The Stripforge Authors
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

#ifndef STRIPFORGE_STRIPFORGE_HPP_
#define STRIPFORGE_STRIPFORGE_HPP_

#include "asp.hpp"
#include "bench.hpp"
#include "brute_force.hpp"
#include "circuit.hpp"
#include "constraints.hpp"
#include "errors.hpp"
#include "ir_json.hpp"
#include "layout.hpp"
#include "netlist.hpp"
#include "postprocess.hpp"
#include "propagator.hpp"
#include "render.hpp"
#include "sexpr.hpp"
#include "solver.hpp"

#endif  // STRIPFORGE_STRIPFORGE_HPP_
