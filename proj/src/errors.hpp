#pragma once

#include <stdexcept>
#include <string>

namespace swarmgain {

// Bad user input: malformed files, out-of-range config values, broken
// invariants in supplied data. Maps to exit code / status 2 at the
// boundaries; everything else that throws maps to 1.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace swarmgain
