#ifndef SPARSECARD_ERRORS_HPP
#define SPARSECARD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sparsecard {

// Invalid input data (bad instance, broken invariant on a value passed in).
class validation_error : public std::invalid_argument {
public:
    explicit validation_error(const std::string& what) : std::invalid_argument(what) {}
};

// Input exceeds a documented size guard (oracle k, brute-force n, capacity overflow).
class size_error : public std::length_error {
public:
    explicit size_error(const std::string& what) : std::length_error(what) {}
};

}  // namespace sparsecard

#endif
