#pragma once

#include <stdexcept>
#include <string>

namespace pcc {

// All library errors derive from Error so callers can catch one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidModel : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

class NotPlanarEmbedding : public Error {
 public:
  using Error::Error;
};

class NoPerfectMatching : public Error {
 public:
  using Error::Error;
};

class InvalidRewarm : public Error {
 public:
  using Error::Error;
};

class TooLarge : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace pcc
