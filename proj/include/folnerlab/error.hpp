#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace folnerlab {

/// Base class for every error thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An element or set was used with a descriptor it does not belong to.
struct DescriptorMismatchError : Error {
  using Error::Error;
};

/// A requested embedding dimension exceeds the group's declared rank.
struct RankExceededError : Error {
  using Error::Error;
};

/// An operation that requires a nonempty set received an empty one.
struct EmptySetError : Error {
  using Error::Error;
};

/// A set was required to lie inside an embedded subgroup and does not.
struct ContainmentError : Error {
  using Error::Error;
};

/// Integer coordinates left the representable range. Coordinates never wrap.
struct OverflowError : Error {
  using Error::Error;
};

/// Candidate embedding images do not commute or are dependent.
struct EmbeddingError : Error {
  using Error::Error;
};

/// An enumeration request exceeded the configured safety guard.
struct GuardExceededError : Error {
  using Error::Error;
};

/// Too few data points to fit the requested statistic.
struct InsufficientDataError : Error {
  using Error::Error;
};

/// A sequence construction could not satisfy its own invariants.
struct ConstructionError : Error {
  using Error::Error;
};

/// Text input rejected; `offset` is the byte position of the problem.
struct ParseError : Error {
  std::size_t offset;
  ParseError(const std::string& what, std::size_t off)
      : Error(what + " (byte " + std::to_string(off) + ")"), offset(off) {}
};

/// A bounded search ran out of room; `partial` holds what was found.
struct ExhaustionError : Error {
  std::vector<int> partial;
  ExhaustionError(const std::string& what, std::vector<int> found)
      : Error(what), partial(std::move(found)) {}
};

}  // namespace folnerlab
