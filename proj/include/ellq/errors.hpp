#pragma once

#include <stdexcept>
#include <string>

namespace ellq {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Theta series needs a truncation index beyond the hard cap (eta too close
// to the real axis for the requested tolerance).
struct NonConvergent : Error {
    using Error::Error;
};

// psi basis requested for even order.
struct EvenOrder : Error {
    using Error::Error;
};

// |f| dipped below the floor on a contour.
struct ZeroOnBoundary : Error {
    using Error::Error;
};

// Winding integral too far from an integer.
struct NonInteger : Error {
    using Error::Error;
};

// tau lies on the (1/n)-lattice; the raw relation formula is singular there.
struct TorsionPoint : Error {
    using Error::Error;
};

// Singular-value gap too small to trust the computed rank.
struct RankAmbiguous : Error {
    using Error::Error;
};

struct SingularMap : Error {
    using Error::Error;
};

// Evaluation point too close to a theta divisor.
struct PoleProximity : Error {
    using Error::Error;
};

struct ResourceExceeded : Error {
    using Error::Error;
};

struct UnknownCheck : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

} // namespace ellq
