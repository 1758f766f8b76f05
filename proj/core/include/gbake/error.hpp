#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gbake {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file: bad header, missing property, unsupported encoding.
class FormatError : public Error {
public:
  using Error::Error;
};

/// Well-formed file carrying unusable values (NaN, Inf).
class DataError : public Error {
public:
  DataError(const std::string &what, std::size_t index)
      : Error(what + " (vertex " + std::to_string(index) + ")"), index_(index) {}

  std::size_t index() const { return index_; }

private:
  std::size_t index_;
};

class EmptySceneError : public Error {
public:
  EmptySceneError() : Error("scene contains no particles") {}
  explicit EmptySceneError(const std::string &what) : Error(what) {}
};

/// Argument outside the domain of an operation (zero resolution, bad face key, ...).
class DomainError : public Error {
public:
  using Error::Error;
};

class IoError : public Error {
public:
  IoError(const std::string &what, std::string path)
      : Error(what + ": " + path), path_(std::move(path)) {}

  const std::string &path() const { return path_; }

private:
  std::string path_;
};

class ManifestError : public Error {
public:
  using Error::Error;
};

class ManifestVersionError : public ManifestError {
public:
  using ManifestError::ManifestError;
};

class ManifestMissingFaceError : public ManifestError {
public:
  using ManifestError::ManifestError;
};

class ManifestCountError : public ManifestError {
public:
  using ManifestError::ManifestError;
};

} // namespace gbake
