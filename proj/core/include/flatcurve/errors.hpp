#pragma once

#include <stdexcept>
#include <string>

namespace flatcurve {

/// Iterative solver exceeded its iteration cap before reaching tolerance.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// File or stream operation failed; message carries the path.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace flatcurve
