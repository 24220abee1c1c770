// Copyright 2026 The AGF Workbench Authors
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

namespace agf {

/// Root of every error raised by the library. Each subclass maps to one
/// stable CLI exit code (see tools/cli.hpp).
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
   public:
    using Error::Error;
};

class NumericalError : public Error {
   public:
    using Error::Error;
};

class ParameterError : public Error {
   public:
    using Error::Error;
};

/// An algorithm's stated assumption does not hold for the requested
/// (epsilon, delta, d). The message names the violated inequality.
class PreconditionError : public Error {
   public:
    using Error::Error;
};

class PlanningError : public Error {
   public:
    using Error::Error;
};

class CapacityError : public Error {
   public:
    using Error::Error;
};

class ConvergenceError : public Error {
   public:
    ConvergenceError(const std::string &what, double residual) : Error(what), residual_(residual) {}
    double residual() const noexcept { return residual_; }

   private:
    double residual_;
};

class ConfigError : public Error {
   public:
    using Error::Error;
};

class FormatError : public Error {
   public:
    using Error::Error;
};

class ValidationError : public Error {
   public:
    ValidationError(const std::string &what, long index = -1) : Error(what), index_(index) {}
    /// Offending element index, or -1 when the failure is not per-element.
    long index() const noexcept { return index_; }

   private:
    long index_;
};

}  // namespace agf
