#pragma once

#include <stdexcept>
#include <string>

namespace derand {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An input value lies outside its admissible range (a bid, a play, an index).
class RangeError : public Error {
 public:
  using Error::Error;
};

// An input is structurally invalid (not a permutation, sizes disagree, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// An exhaustive computation was asked for beyond its size guard.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// A protocol step was illegal, e.g. eliminating an already eliminated agent.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

}  // namespace derand
