#pragma once

#include <optional>

#include "gapamp/error.hpp"

namespace gapamp::test {

template <class Fn>
std::optional<ErrorCode> thrown_code(Fn&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return std::nullopt;
}

} // namespace gapamp::test
