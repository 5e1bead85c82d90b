// Copyright 2026 The ldpf Authors
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

#ifndef LDPF_ERRORS_HPP_
#define LDPF_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace ldpf {

// Every library failure derives from Error. The category decides the CLI
// exit code: configuration problems exit with 2, numerical failures with 3.
class Error : public std::runtime_error {
 public:
  enum class Category { kConfiguration, kNumerical };

  Error(Category category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  Category category() const noexcept { return category_; }

  int exit_code() const noexcept { return category_ == Category::kConfiguration ? 2 : 3; }

 private:
  Category category_;
};

// Interval endpoints given in the wrong order (a > b).
class OrderingError : public Error {
 public:
  explicit OrderingError(const std::string& what) : Error(Category::kConfiguration, what) {}
};

// Argument outside the domain of a function, e.g. a quantile level not in (0,1).
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(Category::kConfiguration, what) {}
};

// Inconsistent or forbidden parameters (c > 1/2 for the asymmetric staircase,
// empty search families, malformed scenario files...).
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(Category::kConfiguration, what) {}
};

// Zero-mass measures, non-positive Fisher information and similar.
class DegenerateError : public Error {
 public:
  explicit DegenerateError(const std::string& what) : Error(Category::kNumerical, what) {}
};

// Quadrature that did not reach its tolerance within the panel budget.
class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, double achieved_error)
      : Error(Category::kNumerical, what), achieved_error_(achieved_error) {}

  double achieved_error() const noexcept { return achieved_error_; }

 private:
  double achieved_error_;
};

}  // namespace ldpf

#endif  // LDPF_ERRORS_HPP_
