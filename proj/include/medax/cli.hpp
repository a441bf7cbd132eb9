/*
 * Copyright (C) 2026 The medax authors
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
 *
*/

#ifndef MEDAX__CLI_HPP
#define MEDAX__CLI_HPP

#include <iosfwd>

namespace medax {

inline constexpr int exit_ok = 0;
inline constexpr int exit_run_failure = 1;
inline constexpr int exit_config_error = 2;

/// Subcommands:
///   run --scenario F [--seed S] [--method M] [--dump-traj F2] [--plot F3.svg]
///       [--dump-pois F4]
///   bench --suite all|I|II|III|IV --trials T --agents N --out report.json
///   skeleton (--scenario F | --map NAME) --plot out.svg
int cli_run(int argc, const char* const* argv, std::ostream& out,
  std::ostream& err);

} // namespace medax

#endif // MEDAX__CLI_HPP
