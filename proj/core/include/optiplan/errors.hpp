#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace optiplan {

/// Malformed or schema-invalid input (bad field, missing key, bad value range).
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Two or more transmitters active on the same channel in one broadcast domain.
class CollisionError : public std::runtime_error {
 public:
  CollisionError(const std::string& what, std::vector<int> channels)
      : std::runtime_error(what), channels_(std::move(channels)) {}
  const std::vector<int>& channels() const { return channels_; }

 private:
  std::vector<int> channels_;
};

/// A name lookup (path, record, node) that does not resolve.
class UnknownReferenceError : public std::runtime_error {
 public:
  explicit UnknownReferenceError(const std::string& what) : std::runtime_error(what) {}
};

/// A budget or scaling request whose starting point already violates the floor.
class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace optiplan
