// Copyright 2026 The Coboson Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace coboson {

/// Invalid parameter or malformed distribution (bad z, s, d, weights, ...).
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Requested particle number exceeds the number of available modes.
struct PauliBlockedError : DomainError {
    using DomainError::DomainError;
};

/// A ratio chi_n / chi_{n-1} with vanishing denominator.
struct UndefinedRatioError : DomainError {
    using DomainError::DomainError;
};

/// Request exceeds the configured memory/size guards.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A computed quantity contradicts a proven identity; signals a bug.
struct ConsistencyError : std::logic_error {
    using std::logic_error::logic_error;
};

/// Malformed distribution file or unparsable CLI value.
struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace coboson
