// Copyright 2026 The diagcalc Authors
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

#include "diagcalc/box_registry.hpp"
#include "diagcalc/cmatrix.hpp"
#include "diagcalc/diagram.hpp"
#include "diagcalc/dot.hpp"
#include "diagcalc/dsl.hpp"
#include "diagcalc/iso.hpp"
#include "diagcalc/json_io.hpp"
#include "diagcalc/protocols.hpp"
#include "diagcalc/rewrite.hpp"
#include "diagcalc/scalar.hpp"
#include "diagcalc/semantics.hpp"
#include "diagcalc/strategy.hpp"
