// Copyright 2026 The ohlab Authors
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

#ifndef OHLAB_OHLAB_HPP_
#define OHLAB_OHLAB_HPP_

#include "ohlab/common.hpp"
#include "ohlab/freeprob.hpp"
#include "ohlab/geomean.hpp"
#include "ohlab/kfunc.hpp"
#include "ohlab/numlin.hpp"
#include "ohlab/ohspace.hpp"
#include "ohlab/quad.hpp"
#include "ohlab/tensorlog.hpp"

#endif  // OHLAB_OHLAB_HPP_
