#pragma once

#include <stdexcept>
#include <string>

namespace pbphase {

// Caller violated a precondition (dimension mismatch, out-of-range index, bad flag).
class usage_error : public std::invalid_argument {
public:
    explicit usage_error(const std::string& what) : std::invalid_argument(what) {}
};

// A computation left its mathematical domain (non-finite value, singular denominator).
class domain_error : public std::domain_error {
public:
    explicit domain_error(const std::string& what) : std::domain_error(what) {}
};

}  // namespace pbphase
