#pragma once

#include <stdexcept>
#include <string>

namespace gpe {

enum class Errc {
    invalid_argument,
    dimension_mismatch,
    grid_too_coarse,
    not_positive,
    infeasible_solve,
    nonmonotone,
    no_convergence,
    unsupported,
    config,
    io,
};

const char* to_string(Errc code);

/// Single exception type for the library; `code()` tells callers which
/// contract was broken.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace gpe
