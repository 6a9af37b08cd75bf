#ifndef CLPAIR_ERRORS_HPP
#define CLPAIR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace clpair {

// Input is structurally fine but exceeds a configured resource budget
// (sieve limit, discriminant bound, 64-bit overflow of a target value, ...).
class capacity_error : public std::runtime_error {
public:
    explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

// An internal cross-check failed: two independent computations of the same
// quantity disagree, or a certified property did not hold.  This always
// indicates a bug (or a falsified theorem), never bad user input.
class invariant_error : public std::logic_error {
public:
    explicit invariant_error(const std::string& what) : std::logic_error(what) {}
};

// A resume checkpoint is missing a field, fails its consistency check, or
// belongs to a different run configuration.
class checkpoint_error : public std::runtime_error {
public:
    explicit checkpoint_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace clpair

#endif
