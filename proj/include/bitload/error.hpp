// SPDX-License-Identifier: Apache-2.0
//
// bitload: multicarrier bit and power allocation
// Copyright (C) 2026 bitload contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace bitload {

/// Raised when an argument violates an operation's precondition.
class InvalidParameter : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a normalisation range collapses (max == min).
class DegenerateRange : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Scenario validation failure. Carries every offending field, not just the first.
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(std::vector<std::string> problems)
        : std::runtime_error(join(problems)), problems_(std::move(problems)) {}

    const std::vector<std::string>& problems() const noexcept { return problems_; }

  private:
    static std::string join(const std::vector<std::string>& items)
    {
        std::string out = "invalid scenario:";
        for (const auto& item : items) {
            out += "\n  ";
            out += item;
        }
        return out;
    }

    std::vector<std::string> problems_;
};

class IoError : public std::runtime_error {
  public:
    IoError(const std::string& path, const std::string& what)
        : std::runtime_error(path + ": " + what), path_(path) {}

    const std::string& path() const noexcept { return path_; }

  private:
    std::string path_;
};

} // namespace bitload
