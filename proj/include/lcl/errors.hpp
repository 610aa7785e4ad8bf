#ifndef LCL_ERRORS_HPP
#define LCL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lcl {

// Thrown when a computed quantity misses a stated tolerance or analytic bound.
// The CLI maps this to exit code 4 (config errors are 2, precondition errors 3).
struct tolerance_error : std::runtime_error {
    explicit tolerance_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace lcl

#endif
