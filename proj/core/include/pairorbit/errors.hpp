#pragma once

#include <stdexcept>
#include <string>

namespace pairorbit {

/// Base class for all domain errors raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// x0 = y0 = 0: the magnetic momentum vanishes and the reduction breaks down.
class DegenerateMomentum : public Error {
public:
    using Error::Error;
};

/// alpha <= 0 is outside the attractive electron-positron setting.
class NonPositiveCoupling : public Error {
public:
    using Error::Error;
};

/// Evaluation at zero separation from the Coulomb center.
class CoulombSingularity : public Error {
public:
    using Error::Error;
};

/// Requested caustics/motion data for a parameter point with no allowed region.
class ForbiddenRegion : public Error {
public:
    using Error::Error;
};

/// Separated integration seeded outside the allowed intervals.
class OutsideAllowedRegion : public Error {
public:
    using Error::Error;
};

/// Plot rendering invoked with no data.
class EmptyPlot : public Error {
public:
    using Error::Error;
};

} // namespace pairorbit
