#pragma once

#include <functional>

#include "usolab/error.hpp"

namespace usolab::testutil {

// True iff fn throws a usolab::Error of exactly this kind.
inline bool throws_kind(ErrorKind kind, const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind() == kind;
    }
    return false;
}

} // namespace usolab::testutil
