#pragma once

#include <stdexcept>
#include <string>

namespace sfmap {

struct DomainError : std::invalid_argument {
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// mu = 0 is the primary homoclinic point: branch seeds coincide with the
// origin and itineraries are undefined
struct DegenerateParameter : DomainError {
  explicit DegenerateParameter(const std::string& what) : DomainError(what) {}
};

struct EmptySequenceError : DomainError {
  explicit EmptySequenceError(const std::string& what) : DomainError(what) {}
};

struct NonFiniteError : std::runtime_error {
  explicit NonFiniteError(const std::string& what) : std::runtime_error(what) {}
};

struct EmptyResult : std::runtime_error {
  explicit EmptyResult(const std::string& what) : std::runtime_error(what) {}
};

struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}
