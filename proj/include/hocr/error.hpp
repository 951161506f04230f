// Copyright 2026 The hocr Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License"); you
// may not use this file except in compliance with the License. You may
// obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace hocr {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// imageio / store file access
class IoError : public Error {
public:
    using Error::Error;
};

/// Unsupported magic, compression or bit depth. The message names the header field.
class FormatError : public Error {
public:
    using Error::Error;
};

/// Header is recognised but dimensions or payload are inconsistent.
class CorruptFileError : public Error {
public:
    using Error::Error;
};

/// Nothing to recognise: blank image, all components filtered as noise, empty region.
class NoContentError : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

/// Empty prototype store, out-of-range tunables, malformed config records.
class ConfigError : public Error {
public:
    using Error::Error;
};

class DegenerateInputError : public Error {
public:
    using Error::Error;
};

class ConvergenceError : public Error {
public:
    using Error::Error;
};

class IncompleteTrainingSetError : public Error {
public:
    using Error::Error;
};

/// Problems loading a prototype store file.
class StoreError : public Error {
public:
    using Error::Error;
};

class StoreVersionError : public StoreError {
public:
    using StoreError::StoreError;
};

class CorruptStoreError : public StoreError {
public:
    using StoreError::StoreError;
};

class StoreRangeError : public StoreError {
public:
    using StoreError::StoreError;
};

/// A postal code still containing rejected ('?') characters was submitted for validation.
class UnresolvedCodeError : public Error {
public:
    using Error::Error;
};

} // namespace hocr
