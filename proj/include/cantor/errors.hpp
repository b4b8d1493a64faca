#pragma once

#include <stdexcept>
#include <string>

namespace cantor {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct invalid_params : error {
    using error::error;
};

// A labeling offered two digits of equal parity at some vertex.
struct parity_error : error {
    using error::error;
};

struct budget_exceeded : error {
    using error::error;
};

struct step_budget_exceeded : error {
    using error::error;
};

struct tolerance_not_reached : error {
    using error::error;
};

struct orthogonality_violation : error {
    using error::error;
};

struct parse_error : error {
    std::size_t line;
    std::size_t column;
    parse_error(std::size_t l, std::size_t c, const std::string& what_)
        : error("line " + std::to_string(l) + ", col " + std::to_string(c) + ": " + what_),
          line(l), column(c) {}
};

} // namespace cantor
