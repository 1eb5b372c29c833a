// Copyright 2026 The lsself Authors
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

#ifndef LSSELF_SERIALIZE_H
#define LSSELF_SERIALIZE_H

#include <string>

#include "json.hpp"
#include "lsself/evaluation.h"
#include "lsself/isometry.h"
#include "lsself/lsg.h"
#include "lsself/strategy.h"

namespace lsself {

using json = nlohmann::json;

/// {"r", "vars", "rows":[{"vars":[...], "rhs":0|1}]}
json system_to_json(const LinearSystem &sys);
LinearSystem system_from_json(const json &j);

json game_to_json(const GameLS &game);

/// Questions are written by label so files stay readable; parsing maps the
/// labels back onto the test's support and rejects anything that differs.
json correlation_to_json(const Correlation &c, const FullTest &test);
Correlation correlation_from_json(const json &j, const FullTest &test);

json report_to_json(const SelfTestReport &report);
json eval_to_json(const EvalReport &report);

/// Arrays of [re, im] pairs, row-major.
json matrix_to_json(const CMatrix &m);
CMatrix matrix_from_json(const json &j);

/// Stable text form: sorted keys, two-space indent, trailing newline.
std::string dump(const json &j);

}  // namespace lsself

#endif
