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

#ifndef MEDAX__ERRORS_HPP
#define MEDAX__ERRORS_HPP

#include <stdexcept>

namespace medax {

/// Malformed map or scenario input.
class LoadError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Failure while building derived structures (grid, skeleton).
class ConstructionError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Query outside the domain of a structure, e.g. projecting a point that is
/// not in freespace.
class DomainError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Requested path between vertices of different skeleton components.
class NoPathError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Invalid initial configuration for a simulation.
class SetupError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

} // namespace medax

#endif // MEDAX__ERRORS_HPP
