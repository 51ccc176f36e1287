#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace braidlat {

// Malformed textual input. `offset` is the byte offset of the offending character.
struct ParseError : std::runtime_error {
    std::size_t offset;
    ParseError(std::size_t off, const std::string& msg)
        : std::runtime_error(msg + " at offset " + std::to_string(off)), offset(off) {}
};

// A documented precondition of an operation was violated by the caller.
struct PreconditionError : std::logic_error {
    using std::logic_error::logic_error;
};

// A search hit its configured node or state cap before reaching a decision.
struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A structural invariant that must hold for valid input failed. Either a bug or a
// genuine counterexample; callers should surface it with a reproducer.
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

#define BRAIDLAT_ASSERT(cond, msg)                                                     \
    do {                                                                               \
        if (!(cond)) throw ::braidlat::InternalError(std::string("assertion failed: ") + \
                                                     (msg));                           \
    } while (0)

}  // namespace braidlat
