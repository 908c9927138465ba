#pragma once

#include <stdexcept>
#include <string>

namespace ctmp {

// Base class for all domain errors. name() is the stable identifier the CLI
// prints on stderr; what() carries the human-readable context.
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& message)
      : std::runtime_error(message), name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

struct NegativeOffDiagonal : Error {
  NegativeOffDiagonal(int row_1based, int col_1based, double value)
      : Error("NegativeOffDiagonal",
              "generator entry (" + std::to_string(row_1based) + "," +
                  std::to_string(col_1based) + ") = " + std::to_string(value) +
                  " is negative"),
        row(row_1based), col(col_1based), value(value) {}
  int row;
  int col;
  double value;
};

struct ColumnSumNonzero : Error {
  ColumnSumNonzero(int col_1based, double residual)
      : Error("ColumnSumNonzero",
              "generator column " + std::to_string(col_1based) +
                  " sums to " + std::to_string(residual)),
        column(col_1based), residual(residual) {}
  int column;
  double residual;
};

struct EmptyObservableSet : Error {
  EmptyObservableSet() : Error("EmptyObservableSet", "observable set is empty") {}
};

struct FullObservableSet : Error {
  FullObservableSet()
      : Error("FullObservableSet",
              "observable set covers every state; its complement must be nonempty") {}
};

struct NonIrreducible : Error {
  explicit NonIrreducible(const std::string& message)
      : Error("NonIrreducible", message) {}
};

struct InvalidDimension : Error {
  explicit InvalidDimension(const std::string& message)
      : Error("InvalidDimension", message) {}
};

struct NonFinite : Error {
  explicit NonFinite(const std::string& message) : Error("NonFinite", message) {}
};

struct ConvergenceFailure : Error {
  explicit ConvergenceFailure(const std::string& message)
      : Error("ConvergenceFailure", message) {}
};

struct ZeroLikelihood : Error {
  explicit ZeroLikelihood(double time)
      : Error("ZeroLikelihood",
              "observation sequence has zero likelihood under the model at t = " +
                  std::to_string(time)),
        time(time) {}
  double time;
};

struct ZeroBoundaryFlux : Error {
  explicit ZeroBoundaryFlux(double time)
      : Error("ZeroBoundaryFlux",
              "no transition rate connects the active sets across the observation "
              "transition at t = " + std::to_string(time)),
        time(time) {}
  double time;
};

struct DegenerateSojourn : Error {
  explicit DegenerateSojourn(double time)
      : Error("DegenerateSojourn",
              "observation sojourn shorter than 1e-12 time units near t = " +
                  std::to_string(time)),
        time(time) {}
  double time;
};

struct EmptyGrid : Error {
  explicit EmptyGrid(const std::string& message) : Error("EmptyGrid", message) {}
};

struct OutOfRange : Error {
  explicit OutOfRange(const std::string& message) : Error("OutOfRange", message) {}
};

struct NotTwoEigenvalues : Error {
  explicit NotTwoEigenvalues(int count)
      : Error("NotTwoEigenvalues",
              "truncated block has " + std::to_string(count) +
                  " distinct eigenvalues; exactly 2 required"),
        count(count) {}
  int count;
};

struct NotDiagonalizable : Error {
  NotDiagonalizable()
      : Error("NotDiagonalizable", "truncated block is not diagonalizable") {}
};

struct InsufficientGrid : Error {
  explicit InsufficientGrid(const std::string& message)
      : Error("InsufficientGrid", message) {}
};

struct ParseError : Error {
  explicit ParseError(const std::string& message) : Error("ParseError", message) {}
};

struct InvalidTrace : Error {
  explicit InvalidTrace(const std::string& message)
      : Error("InvalidTrace", message) {}
};

}  // namespace ctmp
