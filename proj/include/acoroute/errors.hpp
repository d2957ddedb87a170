// Copyright 2026 The acoroute Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace acoroute {

// Exit-code taxonomy used by the CLI: 2 = bad configuration, 3 = bad input
// data, 4 = failure while running. Library code throws; main() maps.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& m) : std::runtime_error(m) {}
};

struct DataError : std::runtime_error {
  explicit DataError(const std::string& m) : std::runtime_error(m) {}
};

struct RunError : std::runtime_error {
  explicit RunError(const std::string& m) : std::runtime_error(m) {}
};

// --- data errors (exit 3) ---

struct MissingTable : DataError {
  explicit MissingTable(const std::string& table)
      : DataError("missing table: " + table) {}
};

struct SchemaError : DataError {
  explicit SchemaError(const std::string& m) : DataError(m) {}
};

struct DanglingReference : DataError {
  explicit DanglingReference(const std::string& m) : DataError(m) {}
};

struct InfeasibleOrder : DataError {
  explicit InfeasibleOrder(const std::string& order_id)
      : DataError("order has no feasible route option: " + order_id),
        order_id(order_id) {}
  std::string order_id;
};

// --- run errors (exit 4) ---

// Line total exceeded the lane's top band; only a broken constructor or an
// unchecked external assignment can get here.
struct WeightAboveLaneMax : RunError {
  explicit WeightAboveLaneMax(const std::string& m) : RunError(m) {}
};

struct IncompleteAssignment : RunError {
  explicit IncompleteAssignment(const std::string& m) : RunError(m) {}
};

struct NonPositiveCost : RunError {
  explicit NonPositiveCost(const std::string& m) : RunError(m) {}
};

// Every choice value is zero: the caller masked out all options.
struct AllMasked : RunError {
  explicit AllMasked(const std::string& m) : RunError(m) {}
};

struct DeadEnd : RunError {
  DeadEnd(const std::string& order_id, std::size_t order_index)
      : RunError("construction dead end at order " + order_id),
        order_id(order_id),
        order_index(order_index) {}
  std::string order_id;
  std::size_t order_index;
};

struct ConstructionStuck : RunError {
  explicit ConstructionStuck(const std::string& m) : RunError(m) {}
};

struct GenRetryExhausted : RunError {
  explicit GenRetryExhausted(const std::string& m) : RunError(m) {}
};

struct SearchSpaceTooLarge : RunError {
  explicit SearchSpaceTooLarge(const std::string& m) : RunError(m) {}
};

struct IoError : RunError {
  explicit IoError(const std::string& m) : RunError(m) {}
};

}  // namespace acoroute
