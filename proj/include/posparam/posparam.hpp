// Copyright 2026 The posparam Authors
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

// Umbrella header for the library modules. The command-line layer
// (posparam/cli.hpp, posparam/json_io.hpp) is included separately.

#pragma once

#include "posparam/errors.hpp"
#include "posparam/jacobi.hpp"
#include "posparam/matcore.hpp"
#include "posparam/qstate.hpp"
#include "posparam/sc.hpp"
#include "posparam/separable.hpp"
