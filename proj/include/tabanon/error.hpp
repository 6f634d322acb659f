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

#ifndef TABANON_ERROR_HPP_
#define TABANON_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <vector>

namespace tabanon {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid input: bad files, unknown columns, malformed values, bad
/// parameters. Maps to exit status 1 in the CLI.
class InputError : public Error {
 public:
  using Error::Error;
};

/// The requested privacy level cannot be reached with the given
/// hierarchies inside the suppression budget. Carries the best candidate
/// seen during the search for diagnostics. Maps to exit status 2.
class UnachievableError : public Error {
 public:
  UnachievableError(const std::string& message,
                    std::vector<int> best_transformation, long best_k,
                    double best_suppressed_percent)
      : Error(message),
        best_transformation(std::move(best_transformation)),
        best_k(best_k),
        best_suppressed_percent(best_suppressed_percent) {}

  std::vector<int> best_transformation;
  long best_k = 0;
  double best_suppressed_percent = 0.0;
};

}  // namespace tabanon

#endif  // TABANON_ERROR_HPP_
