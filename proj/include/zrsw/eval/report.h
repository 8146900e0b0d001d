// eval/report.h

// Copyright 2026  zrsw authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef ZRSW_EVAL_REPORT_H_
#define ZRSW_EVAL_REPORT_H_

#include <nlohmann/json.hpp>

#include "zrsw/eval/abx.h"
#include "zrsw/eval/same-different.h"

namespace zrsw {

nlohmann::json ToJson(const PrecisionRecallCurve &curve, bool include_points = true);
nlohmann::json ToJson(const AbxResult &result, bool include_cells = true);

}  // namespace zrsw

#endif  // ZRSW_EVAL_REPORT_H_
