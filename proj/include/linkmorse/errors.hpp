#pragma once

#include <stdexcept>

namespace linkmorse {

// One exception type per violated contract, so callers and tests can tell
// which precondition failed.

struct ClosureViolation : std::runtime_error { using std::runtime_error::runtime_error; };
struct LengthViolation : std::runtime_error { using std::runtime_error::runtime_error; };
struct BadDecoration : std::runtime_error { using std::runtime_error::runtime_error; };
struct NotCoplanar : std::runtime_error { using std::runtime_error::runtime_error; };
struct CenterOnPolygonVertex : std::runtime_error { using std::runtime_error::runtime_error; };
struct DimensionMismatch : std::runtime_error { using std::runtime_error::runtime_error; };
struct BadParity : std::runtime_error { using std::runtime_error::runtime_error; };
struct Inadmissible : std::runtime_error { using std::runtime_error::runtime_error; };
struct NoRoot : std::runtime_error { using std::runtime_error::runtime_error; };
struct RankDeficiency : std::runtime_error { using std::runtime_error::runtime_error; };
struct NotNearCritical : std::runtime_error { using std::runtime_error::runtime_error; };
struct NotSymmetric : std::runtime_error { using std::runtime_error::runtime_error; };
struct PersistentDegeneracy : std::runtime_error { using std::runtime_error::runtime_error; };
struct FormulaMismatch : std::runtime_error { using std::runtime_error::runtime_error; };

// Internal consistency failure (a quantity that must be near-integral or
// near-symmetric is not). Indicates a bug or unusable input, never a
// user-facing contract.
struct NumericalError : std::runtime_error { using std::runtime_error::runtime_error; };

}  // namespace linkmorse
