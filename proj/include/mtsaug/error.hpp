#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mtsaug {

enum class ErrorKind {
  InvalidArgument,
  MissingData,
  EmptyDataset,
  ShapeMismatch,
  DimensionMismatch,
  NotADistribution,
  ZeroBaseline,
  EmptyClass,
  RatioOutOfRange,
  SeriesTooShort,
  ChannelOutOfRange,
  SingleClass,
  WidthMismatch,
  InconsistentHeader,
  AllMissingChannel,
  Parse,
  Config,
  Io,
};

const char* to_string(ErrorKind kind) noexcept;

/// Base exception for every library failure. The kind is stable and
/// is what callers (and the CLI exit-code mapping) switch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

enum class ParseErrorKind {
  MissingDataSection,
  RaggedRecord,
  NonNumericValue,
  UnknownLabel,
  MalformedHeader,
  Unsupported,
};

const char* to_string(ParseErrorKind kind) noexcept;

/// Fatal `.ts` parse failure; line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(ParseErrorKind kind, std::size_t line, std::size_t column, const std::string& what)
      : Error(ErrorKind::Parse, std::string(to_string(kind)) + " at " + std::to_string(line) + ":" +
                                    std::to_string(column) + ": " + what),
        parse_kind_(kind),
        line_(line),
        column_(column) {}

  ParseErrorKind parse_kind() const noexcept { return parse_kind_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  ParseErrorKind parse_kind_;
  std::size_t line_;
  std::size_t column_;
};

}  // namespace mtsaug
