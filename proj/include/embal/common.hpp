#ifndef EMBAL_COMMON_HPP
#define EMBAL_COMMON_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace embal {

/// Row-major so that one word vector is one contiguous row.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

using WordId = std::uint32_t;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input violates a documented precondition (bad argument, unknown label, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Two operands disagree in shape or vocabulary binding.
class ShapeMismatch : public Error {
public:
    using Error::Error;
};

/// Malformed file contents or unreadable file.
class FormatError : public Error {
public:
    using Error::Error;
};

/// A numerical routine produced NaN or infinity.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// FNV-1a, 64 bit. Stable across platforms; used for vocabulary and config hashes.
class Fnv1a {
public:
    void update(const void* data, std::size_t size) {
        const auto* p = static_cast<const unsigned char*>(data);
        for (std::size_t k = 0; k < size; ++k) {
            state_ ^= p[k];
            state_ *= 0x100000001b3ULL;
        }
    }
    void update(const std::string& s) {
        update(s.data(), s.size());
        const char sep = '\0';
        update(&sep, 1);
    }
    [[nodiscard]] std::uint64_t digest() const { return state_; }

private:
    std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

std::string hex64(std::uint64_t value);

}  // namespace embal

#endif  // EMBAL_COMMON_HPP
