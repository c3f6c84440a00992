#pragma once

#include <stdexcept>
#include <string>

namespace momentlab {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Input sequence shorter than the operation requires.
struct TooShort : Error {
    using Error::Error;
};

/// Index pair outside the admissible triangle / range.
struct OutOfRange : Error {
    using Error::Error;
};

/// Operation requires an Interior vector but the argument is not.
struct NotInterior : Error {
    using Error::Error;
};

/// The argument fails the positivity conditions of a truncated moment vector.
struct NotAMomentVector : Error {
    using Error::Error;
};

/// Group elements from different subgroup descriptors were mixed.
struct MixedDescriptors : Error {
    using Error::Error;
};

/// Denominator search in round_into exceeded its configured cap.
struct DepthExhausted : Error {
    using Error::Error;
};

/// Enclosure refinement hit the precision cap before a sign was decided.
struct PrecisionExhausted : Error {
    using Error::Error;
};

/// Cylinder refinement exceeded the configured depth cap.
struct DepthCapExceeded : Error {
    using Error::Error;
};

} // namespace momentlab
