#pragma once

#include <stdexcept>
#include <string>

namespace orbi {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Construction-time rejection of invalid data (non-monotone PL maps,
// atomic measures where a density is required, bad matrices, ...).
struct InvalidInput : Error {
    using Error::Error;
};

// A map expected to have finite order failed the integer-translation test.
struct NotFiniteOrder : Error {
    using Error::Error;
};

// The translation-number enclosure straddles an integer; refusing to pick
// a normalization rather than guessing.
struct AmbiguousLift : Error {
    using Error::Error;
};

// Assembled relator lift is not an integer translation within tolerance.
struct RelatorNotIdentity : Error {
    using Error::Error;
};

struct UnsupportedSignature : Error {
    using Error::Error;
};

struct MeshFailure : Error {
    using Error::Error;
};

// A floor/ceil needed by a certified bound is ambiguous at the interval
// endpoints.
struct InconclusiveDisplacement : Error {
    using Error::Error;
};

// Holonomy integration error estimate above tolerance at the step cap.
struct StepTooCoarse : Error {
    using Error::Error;
};

struct SchemaError : Error {
    using Error::Error;
};

}  // namespace orbi
