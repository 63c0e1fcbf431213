// Copyright 2026 The netqos Authors
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

namespace netqos {

// Root of every error the library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed workflow trees or graphs (empty patterns, duplicate tasks, cycles).
class StructuralError : public Error {
public:
    using Error::Error;
};

class CycleError : public StructuralError {
public:
    using StructuralError::StructuralError;
};

// Unknown location, offer, task or node name.
class LookupError : public Error {
public:
    using Error::Error;
};

// Invalid numeric parameter (zero counts, k larger than the network, ...).
class ParameterError : public Error {
public:
    using Error::Error;
};

// Incomplete or inconsistent inputs: missing assignments, bad files.
class ConfigurationError : public Error {
public:
    using Error::Error;
};

// An optimizer was handed a problem outside its precondition.
class UnsupportedStructure : public Error {
public:
    using Error::Error;
};

class SearchSpaceTooLarge : public Error {
public:
    using Error::Error;
};

// The execution protocol starved (a node can never receive its inputs).
class ProtocolError : public Error {
public:
    using Error::Error;
};

} // namespace netqos
