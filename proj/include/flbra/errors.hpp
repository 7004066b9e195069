// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace flbra {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A fuzzy input (RSSI, stddev, PER) was non-finite or a PER fell outside [0,1].
class InvalidMeasurementError : public Error {
public:
    using Error::Error;
};

// Room geometry that cannot hold a grid (non-positive area or spacing).
class GeometryError : public Error {
public:
    using Error::Error;
};

// Scenario parameters that do not fit the derived grid.
class ScenarioError : public Error {
public:
    using Error::Error;
};

// Statistics request that is undefined for the given sample (e.g. CI with n < 2).
class StatisticsError : public Error {
public:
    using Error::Error;
};

// Caller handed mismatched or empty series where values were required.
class InputError : public Error {
public:
    using Error::Error;
};

// An internal invariant failed; indicates a bug, not bad user input.
class InternalError : public Error {
public:
    using Error::Error;
};

// Configuration file missing, malformed, or failing validation.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Filesystem trouble while writing result tables or traces.
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace flbra
