#pragma once

#include <stdexcept>
#include <string>

namespace flowreconf {

// Input violates a documented precondition or invariant.
struct validation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed textual input (graph6 lines, JSON files, domain strings).
struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A configured enumeration budget or cap would be exceeded. Never silently
// truncated; callers decide whether to retry with a larger budget.
struct budget_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace flowreconf
