#ifndef RBD_ERRORS_HPP
#define RBD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rbd {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Vector/matrix sizes do not line up for the requested operation.
class DimensionMismatch : public Error {
public:
  using Error::Error;
};

// Weight matrix dimension does not match the data dimension m.
class IncompatibleWeight : public Error {
public:
  using Error::Error;
};

// Input from which no basis can be built (zero matrix, zero start column).
class DegenerateInput : public Error {
public:
  using Error::Error;
};

// Quadratic form came out negative beyond roundoff; the weight is not SPD.
class NotPositive : public Error {
public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
public:
  using Error::Error;
};

// Iteration budget exhausted without meeting the convergence criterion.
class NoConvergence : public Error {
public:
  using Error::Error;
};

class InvalidArgument : public Error {
public:
  using Error::Error;
};

class UnsupportedFormat : public Error {
public:
  using Error::Error;
};

class IoError : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  ParseError(const std::string& path, long line, const std::string& what)
      : Error(path + ":" + std::to_string(line) + ": " + what),
        path_(path),
        line_(line) {}

  const std::string& path() const { return path_; }
  long line() const { return line_; }

private:
  std::string path_;
  long line_;
};

}  // namespace rbd

#endif
