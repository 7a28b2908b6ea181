// Copyright 2026 The Quotegraph Authors.
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

// JSON codecs shared between stage file formats. Internal to the library.

#ifndef QUOTEGRAPH_SRC_JSON_CODEC_HPP_
#define QUOTEGRAPH_SRC_JSON_CODEC_HPP_

#include <nlohmann/json.hpp>

#include "quotegraph/preprocess.hpp"

namespace quotegraph::internal {

nlohmann::ordered_json ContextToJson(const QuoteContext &context);
// Throws SchemaError.
QuoteContext ContextFromJson(const nlohmann::json &doc);

}  // namespace quotegraph::internal

#endif  // QUOTEGRAPH_SRC_JSON_CODEC_HPP_
