// Copyright 2026 The rxnie Authors.
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

// Contents of the files under data/, embedded at configure time.

#ifndef RXNIE_RESOURCES_HPP_
#define RXNIE_RESOURCES_HPP_

#include <string_view>

namespace rxnie::resources {

extern const std::string_view kSeedPatterns;
extern const std::string_view kGazetteer;
extern const std::string_view kReactionTypes;
extern const std::string_view kReactionTypeForms;

}  // namespace rxnie::resources

#endif  // RXNIE_RESOURCES_HPP_
