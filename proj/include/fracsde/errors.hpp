#pragma once

#include <stdexcept>
#include <string>

namespace fracsde {

// Violated precondition or parameter constraint (maps to CLI exit code 3).
class domain_violation : public std::invalid_argument {
public:
    explicit domain_violation(const std::string& what) : std::invalid_argument(what) {}
};

// A numerical procedure failed to deliver a result at the requested quality
// (series did not converge, factorization broke down, ...). CLI exit code 4.
class numerical_failure : public std::runtime_error {
public:
    explicit numerical_failure(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw domain_violation(msg);
}

}  // namespace fracsde
