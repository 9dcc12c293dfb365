// Copyright 2026 The dqcmap Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace dqcmap {

// Base of every error thrown by the library. The CLI maps subclasses onto
// exit codes: input problems -> 2, infeasible instances -> 3.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    ParseError(int line, const std::string &what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {
    }
    int line() const {
        return line_;
    }

private:
    int line_;
};

// Input is well formed but uses a feature outside the supported subset.
class UnsupportedError : public Error {
public:
    using Error::Error;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

class ParameterError : public Error {
public:
    using Error::Error;
};

class RangeError : public Error {
public:
    using Error::Error;
};

// The circuit cannot be placed on the cluster (not enough capacity).
class InfeasibleError : public Error {
public:
    using Error::Error;
};

}  // namespace dqcmap
