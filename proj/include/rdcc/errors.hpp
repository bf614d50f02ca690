// SPDX-License-Identifier: Apache-2.0
//
// rdcc: range-Doppler compensation and cancellation for dual-channel
// moving target detection.
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

namespace rdcc
{
    /// Base of every error thrown by the library.
    class Error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    /// Argument outside an operation's domain (bad channel index, mode mismatch, ...).
    class InvalidArgument : public Error
    {
    public:
        using Error::Error;
    };

    /// Scenario or config problem. `key()` names the offending key or target when known.
    class ConfigError : public Error
    {
    public:
        ConfigError(std::string key, const std::string &what)
            : Error(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}

        const std::string &key() const noexcept { return key_; }

    private:
        std::string key_;
    };

    /// Cube domain tag does not match what an operation expects.
    class DomainMismatch : public InvalidArgument
    {
    public:
        using InvalidArgument::InvalidArgument;
    };

    /// Cube or image dimensions are incompatible.
    class DimensionMismatch : public InvalidArgument
    {
    public:
        using InvalidArgument::InvalidArgument;
    };

    /// Metric input has no power where a ratio needs it (zero clutter, zero reference energy).
    class DegenerateInput : public Error
    {
    public:
        using Error::Error;
    };

    // Cube file errors, one type per failure mode.
    class FormatError : public Error
    {
    public:
        using Error::Error;
    };
    class BadMagic : public FormatError
    {
    public:
        using FormatError::FormatError;
    };
    class VersionMismatch : public FormatError
    {
    public:
        using FormatError::FormatError;
    };
    class TruncatedPayload : public FormatError
    {
    public:
        using FormatError::FormatError;
    };
    class DimensionOverflow : public FormatError
    {
    public:
        using FormatError::FormatError;
    };

    class IoError : public Error
    {
    public:
        using Error::Error;
    };
}
