// Copyright 2026 The whframe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Number rendering shared by every CSV and JSON writer: 17 significant
// digits, so that repeated runs produce byte-identical files.

#ifndef WHFRAME_REPORT_IO_HPP_
#define WHFRAME_REPORT_IO_HPP_

#include <string>

#include "json.hpp"

namespace whframe {

using Json = nlohmann::ordered_json;

std::string fmt17(double v);

/// Serializes with doubles rendered by fmt17; non-finite numbers become null.
std::string dump_json(const Json& j, int indent = 2);

}  // namespace whframe

#endif  // WHFRAME_REPORT_IO_HPP_
