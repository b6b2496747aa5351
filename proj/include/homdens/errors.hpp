#pragma once

#include <stdexcept>

namespace homdens {

// Work estimate exceeded a configured budget; callers may retry with a
// smaller instance or switch to sampling.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace homdens
