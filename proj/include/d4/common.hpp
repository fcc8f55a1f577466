#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace d4 {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using u32 = std::uint32_t;
using i128 = __int128;
using u128 = unsigned __int128;

inline constexpr const char* version_string = "1.0.0";

// Invalid mathematical input (maps to CLI exit code 3).
struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Configured search/memory budget exceeded (maps to CLI exit code 4).
// Always raised loudly, never converted into a silent wrong answer.
struct budget_error : std::runtime_error {
    explicit budget_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Internal cross-check failure. Signals an implementation bug, never swallowed.
struct inconsistent_error : std::logic_error {
    explicit inconsistent_error(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace d4
