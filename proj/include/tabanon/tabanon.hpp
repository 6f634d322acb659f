// Copyright 2026 The tabanon Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TABANON_TABANON_HPP_
#define TABANON_TABANON_HPP_

#include "tabanon/anonymizer.hpp"
#include "tabanon/csv.hpp"
#include "tabanon/dataset.hpp"
#include "tabanon/distribution.hpp"
#include "tabanon/error.hpp"
#include "tabanon/hierarchy.hpp"
#include "tabanon/metrics.hpp"
#include "tabanon/partition.hpp"

#endif  // TABANON_TABANON_HPP_
