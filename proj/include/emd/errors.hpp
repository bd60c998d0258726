#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace emd {

// No parameter choice within the supported desk-scale limits satisfies the
// integrality requirements (blocklength, field degree, bin width).
struct InfeasibleParams : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Received symbols do not lie on any codeword, or parity contradicts the
// systematic part. Only possible with corrupted input.
struct InconsistentCodeword : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MalformedPacket : std::runtime_error {
    MalformedPacket(std::size_t at, const std::string& what)
        : std::runtime_error("malformed packet at offset " + std::to_string(at) + ": " + what),
          offset(at) {}
    std::size_t offset;
};

}  // namespace emd
