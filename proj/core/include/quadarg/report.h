// Copyright 2026 The QuadArg Authors
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


#ifndef QUADARG_REPORT_H_
#define QUADARG_REPORT_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "quadarg/harness.h"

namespace quadarg {

// JSON with sorted keys and two-space indentation. Without the timestamp the
// text depends only on the run's inputs.
std::string report_to_json(const RunReport& report, bool with_timestamp = true);
// Throws kInvalidArgument on malformed input.
RunReport report_from_json(std::string_view text);

// One row per record:
//   corpus,strategy,model,graph,repetition,order_index,ordering,status,
//   prompts_sent,rho,tau,precision,recall,f1,adjacency_rejected
std::string records_csv(const RunReport& report);
// One row per metric:
//   corpus,strategy,model,metric,macro,flat,order_sd,defined,excluded
std::string aggregate_csv(const RunReport& report);
// Fixed-width table for terminals.
std::string summary_table(const RunReport& report);

// "n/a" for std::nullopt, otherwise fixed notation with `digits` decimals.
std::string format_value(std::optional<double> v, int digits = 4);

// Quoted when the field holds a comma, quote or newline.
std::string csv_field(std::string_view field);

}  // namespace quadarg

#endif  // QUADARG_REPORT_H_
