/*
 * Copyright 2026 the optionmc authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace omc {

/// Error categories; the C API and the CLI exit codes map 1:1 onto these.
enum class errc {
  invalid_argument, // violated precondition (empty sample, bad trace, ...)
  config,           // bad strategy combo, unknown task, bad cost table, ...
  parse,            // malformed data/task/workload file
  infeasible,       // no platform satisfies the workload constraints
};

class Error : public std::runtime_error {
public:
  Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  errc code() const noexcept { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

} // namespace omc
