#pragma once

#include <stdexcept>
#include <string>

namespace torusgen {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NotFullRank : public Error {
 public:
  using Error::Error;
};

class NotDeficient : public Error {
 public:
  using Error::Error;
};

// A bounded search hit its cap without deciding the question.
class Inconclusive : public Error {
 public:
  using Error::Error;
};

class UnlabelableWeight : public Error {
 public:
  using Error::Error;
};

class ParityViolation : public Error {
 public:
  using Error::Error;
};

class WindowTooSmall : public Error {
 public:
  WindowTooSmall(std::string const& what, long suggested)
      : Error(what), suggested_window_(suggested) {}
  long suggested_window() const { return suggested_window_; }

 private:
  long suggested_window_;
};

class InvalidQuiver : public Error {
 public:
  using Error::Error;
};

}  // namespace torusgen
