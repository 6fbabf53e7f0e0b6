#pragma once

#include <stdexcept>
#include <string>

namespace hardysim {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad inputs: mismatched lengths, unknown modes, out-of-range parameters.
struct ArgumentError : Error {
    using Error::Error;
};

// A state with (near-)zero norm cannot be normalized or measured.
struct DegenerateStateError : Error {
    using Error::Error;
};

// Conditioning on an outcome whose probability is numerically zero.
struct ImpossibleOutcomeError : Error {
    using Error::Error;
};

// A mode expected to factor out is still entangled with the rest.
struct EntangledModeError : Error {
    using Error::Error;
};

}  // namespace hardysim
