#pragma once

#include <stdexcept>

namespace citepop {

// Malformed or inconsistent input data: bad files, unknown ids, testing
// times outside the corpus. The CLI maps this to exit code 1, while
// std::invalid_argument (parameter violations) maps to exit code 2.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class EmptySnapshotError : public DataError {
public:
    using DataError::DataError;
};

} // namespace citepop
