#pragma once

#include <stdexcept>
#include <string>

namespace autosg {

/// Bad user input: config/task files, CLI arguments, template bindings.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed payloads: JSON, Atom XML, model responses, manifests.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Transport failures, exhausted retries, missing credentials.
struct NetworkError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Transient transport failure; eligible for retry.
struct TransientError : NetworkError {
    using NetworkError::NetworkError;
};

/// Scripted backend has no response left for the requested stage.
struct FixtureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Generated code failed the structural contract.
struct StructuralError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Tournament could not complete (judge failures beyond budget).
struct TournamentError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Run-directory state is missing, corrupt, or inconsistent.
struct StateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace autosg
