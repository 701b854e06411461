// Copyright 2026 The ugsopt Authors
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

#ifndef UGSOPT_ERROR_HPP_
#define UGSOPT_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <utility>

namespace ugsopt {

// Error categories map one-to-one onto CLI exit codes and HTTP statuses.
enum class ErrorCode {
  kInvalidInput = 1,  // schema or invariant violation
  kInfeasible = 2,
  kSolverFailure = 3,
  kNotFound = 4,
  kIo = 5,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message, std::string path = {})
      : std::runtime_error(std::move(message)), code_(code), path_(std::move(path)) {}

  ErrorCode code() const { return code_; }
  // JSON-pointer-like location of the offending field, empty when not applicable.
  const std::string& path() const { return path_; }

 private:
  ErrorCode code_;
  std::string path_;
};

}  // namespace ugsopt

#endif  // UGSOPT_ERROR_HPP_
