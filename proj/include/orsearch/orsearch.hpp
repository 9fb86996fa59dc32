// Copyright 2026 The orsearch Authors
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

// Umbrella header.

#ifndef ORSEARCH_ORSEARCH_HPP_
#define ORSEARCH_ORSEARCH_HPP_

#include "orsearch/augment.hpp"
#include "orsearch/bench.hpp"
#include "orsearch/error.hpp"
#include "orsearch/formula.hpp"
#include "orsearch/http_suite.hpp"
#include "orsearch/instantiate.hpp"
#include "orsearch/lp_format.hpp"
#include "orsearch/markdown.hpp"
#include "orsearch/model.hpp"
#include "orsearch/model_io.hpp"
#include "orsearch/oracle_suite.hpp"
#include "orsearch/rng.hpp"
#include "orsearch/search.hpp"
#include "orsearch/solver.hpp"
#include "orsearch/validate.hpp"

#endif  // ORSEARCH_ORSEARCH_HPP_
