#pragma once

#include <stdexcept>
#include <string>

namespace lipmr {

// Failure classes map to process exit codes: input -> 2, solver -> 3, internal -> 4.
enum class ErrorKind { input, solver, internal };

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

class InputError : public Error {
public:
  explicit InputError(const std::string& what) : Error(ErrorKind::input, what) {}
};

class SolverError : public Error {
public:
  explicit SolverError(const std::string& what) : Error(ErrorKind::solver, what) {}
};

class InternalError : public Error {
public:
  explicit InternalError(const std::string& what) : Error(ErrorKind::internal, what) {}
};

struct MissingFile : InputError {
  explicit MissingFile(const std::string& path) : InputError("cannot open file: " + path) {}
};

struct RaggedRow : InputError {
  RaggedRow(int row, int got, int expected)
      : InputError("row " + std::to_string(row) + " has " + std::to_string(got) +
                   " fields, expected " + std::to_string(expected)),
        row(row) {}
  int row;
};

struct UnparsableValue : InputError {
  UnparsableValue(int row, int col, const std::string& token)
      : InputError("row " + std::to_string(row) + ", column " + std::to_string(col) +
                   ": cannot parse value '" + token + "'"),
        row(row), col(col) {}
  int row;
  int col;
};

struct LabelNotBinary : InputError {
  explicit LabelNotBinary(const std::string& detail)
      : InputError("label column is not binary: " + detail) {}
};

struct DegenerateSplit : InputError {
  explicit DegenerateSplit(const std::string& detail)
      : InputError("cannot produce a usable train/test split: " + detail) {}
};

struct DimensionMismatch : InputError {
  explicit DimensionMismatch(const std::string& detail)
      : InputError("dimension mismatch: " + detail) {}
};

struct SingleClass : InputError {
  explicit SingleClass(const std::string& detail)
      : InputError("training data has a single class: " + detail) {}
};

struct NoSameLabelPairs : InputError {
  NoSameLabelPairs() : InputError("no same-label pairs exist; cannot form intra-class diameters") {}
};

struct EmptyAnchors : InputError {
  EmptyAnchors() : InputError("model has no anchors") {}
};

struct NotPsd : InputError {
  explicit NotPsd(const std::string& detail)
      : InputError("matrix is not positive semidefinite: " + detail) {}
};

struct InstanceTooLarge : InputError {
  explicit InstanceTooLarge(const std::string& detail)
      : InputError("instance exceeds the reference solver's size cap: " + detail) {}
};

struct BadDocument : InputError {
  explicit BadDocument(const std::string& detail) : InputError("bad document: " + detail) {}
};

struct ConfigError : InputError {
  explicit ConfigError(const std::string& detail) : InputError("bad configuration: " + detail) {}
};

struct FactorizationFailure : SolverError {
  explicit FactorizationFailure(const std::string& detail)
      : SolverError("linear algebra failure: " + detail) {}
};

// Internal invariant check; failures indicate a bug, not bad input.
#define LIPMR_ASSERT(cond, msg)                                          \
  do {                                                                   \
    if (!(cond)) throw ::lipmr::InternalError(std::string("internal invariant violated: ") + (msg)); \
  } while (0)

}  // namespace lipmr
