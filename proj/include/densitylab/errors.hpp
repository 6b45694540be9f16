// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace densitylab {

// Base class for all library errors. Subclasses name the failed contract.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonSquare : Error {
    using Error::Error;
};
struct NotHermitian : Error {
    using Error::Error;
};
struct DimensionMismatch : Error {
    using Error::Error;
};
struct NotAFrame : Error {
    using Error::Error;
};
struct NotRiesz : Error {
    using Error::Error;
};
struct GammaNotInLattice : Error {
    using Error::Error;
};
struct OffGridShift : Error {
    using Error::Error;
};
struct QuadratureFailure : Error {
    using Error::Error;
};
struct InvalidDensity : Error {
    using Error::Error;
};
struct SingularBasis : Error {
    using Error::Error;
};
struct UnsupportedField : Error {
    using Error::Error;
};
struct AlphaOutOfRange : Error {
    using Error::Error;
};
struct InvalidInvariant : Error {
    using Error::Error;
};
struct ConfigInvalid : Error {
    using Error::Error;
};
struct ComputeFailed : Error {
    using Error::Error;
};

} // namespace densitylab
