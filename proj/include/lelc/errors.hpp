#pragma once

#include <stdexcept>
#include <string>

namespace lelc {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Caller passed a value outside an operation's contract (bad k, bad range, ...).
struct InvalidParameter : Error {
    using Error::Error;
};

// A file (trace, histogram, map, prefix table, weight table) violates its format.
struct FormatError : Error {
    using Error::Error;
};

// Encode/decode failure: bad framing, unparseable stream, unknown codeword.
// Messages carry the payload or bit offset where the problem was detected.
struct CodecError : Error {
    using Error::Error;
};

} // namespace lelc
