#pragma once

#include <stdexcept>
#include <string>

namespace cyp {

// Error classes map onto CLI exit codes: input 2, computation 3, reconstruction 4.
enum class ErrorKind { Input, Computation, Reconstruction };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string code, const std::string &detail)
        : std::runtime_error(code + ": " + detail), kind_(kind), code_(std::move(code)) {}

    ErrorKind kind() const noexcept { return kind_; }
    const std::string &code() const noexcept { return code_; }

private:
    ErrorKind kind_;
    std::string code_;
};

[[noreturn]] inline void input_error(const std::string &code, const std::string &detail)
{
    throw Error(ErrorKind::Input, code, detail);
}

[[noreturn]] inline void computation_error(const std::string &code, const std::string &detail)
{
    throw Error(ErrorKind::Computation, code, detail);
}

[[noreturn]] inline void reconstruction_error(const std::string &code, const std::string &detail)
{
    throw Error(ErrorKind::Reconstruction, code, detail);
}

} // namespace cyp
