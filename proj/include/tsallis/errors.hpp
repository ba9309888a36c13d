#pragma once

#include <stdexcept>
#include <string>

namespace tsallis {

// Base of every error raised by the library. The CLI maps these onto exit
// codes: ResourceLimit subclasses give 3, everything else is a usage error.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class NegativeComponent : public Error {
 public:
  using Error::Error;
};

class NotNormalized : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class ZeroMass : public Error {
 public:
  using Error::Error;
};

class ArityMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidConditional : public Error {
 public:
  using Error::Error;
};

class InvalidPermutation : public Error {
 public:
  using Error::Error;
};

class AlphaIsOne : public Error {
 public:
  AlphaIsOne() : Error("alpha = 1 is the Shannon branch; use shannon()") {}
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class AmbiguousReconstruction : public Error {
 public:
  using Error::Error;
};

// Resource caps: grid size, iteration budget.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

class SizeLimit : public ResourceLimit {
 public:
  using ResourceLimit::ResourceLimit;
};

class StepLimitExceeded : public ResourceLimit {
 public:
  using ResourceLimit::ResourceLimit;
};

}  // namespace tsallis
