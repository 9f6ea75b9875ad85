// SPDX-License-Identifier: Apache-2.0
//
// grassbc: product-superposition MIMO broadcast simulator
// Copyright (C) 2026 The grassbc authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <stdexcept>
#include <string>

namespace grassbc {

// Every error the library throws derives from Error so callers (the CLI)
// can map categories to exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public Error { public: using Error::Error; };
class SingularityError : public Error { public: using Error::Error; };
class DegenerateInputError : public Error { public: using Error::Error; };
class DomainError : public Error { public: using Error::Error; };
class PackingInfeasibleError : public Error { public: using Error::Error; };
class ValidationError : public Error { public: using Error::Error; };
class PreconditionError : public Error { public: using Error::Error; };

/// Invalid channel/scheme/run configuration (violated invariant).
class ConfigError : public Error { public: using Error::Error; };

/// Malformed input file; the message carries line/field context.
class ParseError : public Error { public: using Error::Error; };

} // namespace grassbc
