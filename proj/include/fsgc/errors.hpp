#pragma once

#include <stdexcept>
#include <string>

namespace fsgc {

// Exit-code contract: 2 = invalid input, 3 = hypothesis violated,
// 4 = internal assertion (a guarantee the theory promises was breached).

struct invalid_input : std::runtime_error {
    explicit invalid_input(const std::string& msg) : std::runtime_error(msg) {}
};

struct hypothesis_violated : std::runtime_error {
    explicit hypothesis_violated(const std::string& msg) : std::runtime_error(msg) {}
};

struct internal_assertion : std::logic_error {
    explicit internal_assertion(const std::string& msg) : std::logic_error(msg) {}
};

inline void check_input(bool ok, const std::string& msg) {
    if (!ok) throw invalid_input(msg);
}

inline void check_hypothesis(bool ok, const std::string& msg) {
    if (!ok) throw hypothesis_violated(msg);
}

inline void check_internal(bool ok, const std::string& msg) {
    if (!ok) throw internal_assertion(msg);
}

} // namespace fsgc
