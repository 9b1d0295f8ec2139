#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace cheblab {

using cplx = std::complex<double>;

// Error with a machine-readable "module.operation: message" format.
class error : public std::runtime_error {
public:
    error(const std::string& module, const std::string& op, const std::string& message)
        : std::runtime_error(module + "." + op + ": " + message),
          module_(module), op_(op), message_(message) {}

    const std::string& module_name() const noexcept { return module_; }
    const std::string& operation() const noexcept { return op_; }
    const std::string& message() const noexcept { return message_; }

private:
    std::string module_, op_, message_;
};

[[noreturn]] inline void fail(const std::string& module, const std::string& op,
                              const std::string& message) {
    throw error(module, op, message);
}

} // namespace cheblab
