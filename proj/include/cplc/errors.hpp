// SPDX-License-Identifier: Apache-2.0
//
// cplc-sim: contactless power-line communication channel simulator
// Copyright (C) 2026 The cplc-sim authors
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

namespace cplc
{
    // Bad scenario input: syntax, unknown key or out-of-range value. Maps to CLI exit code 1.
    class config_error : public std::runtime_error
    {
    public:
        config_error(const std::string &msg, std::string key = {}, int line = 0)
            : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
              key_(std::move(key)), line_(line) {}

        const std::string &key() const noexcept { return key_; }
        int line() const noexcept { return line_; }

    private:
        std::string key_;
        int line_;
    };

    // A model evaluation failed (singular system, quadrature check, degenerate parameters).
    class numerical_error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };
}
