// Copyright 2026 The ghz-synth Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace ghz {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter is outside its documented domain (zero grid dimension,
/// subgraph size out of range, negative probability, ...).
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// Input graph does not satisfy a protocol precondition (e.g. disconnected).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

class MalformedCircuit : public Error {
 public:
  using Error::Error;
};

/// Simulator capacity exceeded (qubit count above the configured maximum).
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// A forced measurement outcome has probability zero.
class InvalidForcing : public Error {
 public:
  using Error::Error;
};

class InvalidConfig : public Error {
 public:
  using Error::Error;
};

/// An internal invariant was violated. Always a bug.
class InternalInvariant : public Error {
 public:
  using Error::Error;
};

}  // namespace ghz
