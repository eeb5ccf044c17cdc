// Copyright 2026 The vtense Authors.
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

#ifndef VTENSE_ERROR_H_
#define VTENSE_ERROR_H_

#include <stdexcept>
#include <string>

namespace vtense {

// Every failure raised by the library derives from Error, so callers that only
// care about "did it work" can catch one type. The subclasses mirror the
// failure families the tools report on: bad numeric domains, malformed input
// files, degenerate fits and statistics, and simulation blow-ups.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Text input that does not follow its grammar. Carries a 1-based line number
// when one is meaningful (0 otherwise).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Binary container that is truncated or uses an unsupported layout.
class FormatError : public Error {
 public:
  using Error::Error;
};

// Invalid tunables (extraction settings, run configuration, policies).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A required measurement is missing at a landmark.
class IndicatorError : public Error {
 public:
  using Error::Error;
};

// Least-squares fit could not be formed or solved.
class FitError : public Error {
 public:
  using Error::Error;
};

// Statistic undefined for the given data (e.g. zero variance everywhere).
class DegenerateDataError : public Error {
 public:
  using Error::Error;
};

class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

// Integration produced a non-finite or out-of-range state.
class SimulationError : public Error {
 public:
  SimulationError(const std::string& what, double t_ds)
      : Error(what + " at t=" + std::to_string(t_ds) + " ds"), t_ds_(t_ds) {}
  double t_ds() const { return t_ds_; }

 private:
  double t_ds_;
};

// Per-frame failure inside formant extraction.
class ExtractionError : public Error {
 public:
  using Error::Error;
};

}  // namespace vtense

#endif  // VTENSE_ERROR_H_
