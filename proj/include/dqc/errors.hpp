#pragma once

#include <stdexcept>
#include <string>

namespace dqc {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// IR invariant violations (bad indices, malformed instructions).
struct ValidationError : Error {
    using Error::Error;
};

/// Configuration problems: files, schemas, partition plans, registries.
struct ConfigError : Error {
    using Error::Error;
};

/// A subcircuit does not fit its assigned backend.
struct CapacityError : Error {
    using Error::Error;
};

/// Errors raised while compiling (decomposition, routing, translation, assembly).
struct CompileError : Error {
    using Error::Error;
};

struct DecompositionError : CompileError {
    using CompileError::CompileError;
};

struct RoutingError : CompileError {
    using CompileError::CompileError;
};

struct TranslationError : CompileError {
    using CompileError::CompileError;
};

struct AssemblyError : CompileError {
    using CompileError::CompileError;
};

/// Simulator errors (bad instruction, norm loss, caps).
struct SimulationError : Error {
    using Error::Error;
};

/// The simulator refused to run because the circuit exceeds the qubit cap.
struct SimRefusedError : SimulationError {
    using SimulationError::SimulationError;
};

}  // namespace dqc
