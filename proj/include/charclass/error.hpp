#ifndef CHARCLASS_ERROR_HPP
#define CHARCLASS_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace charclass {

// Exit codes of the CLI are derived from these categories.
enum class ErrorCategory {
  parse = 2,
  domain = 3,
  genericity = 4,
  numeric = 5,
  resource = 6,
};

inline std::string_view category_name(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::parse: return "parse";
    case ErrorCategory::domain: return "domain";
    case ErrorCategory::genericity: return "genericity";
    case ErrorCategory::numeric: return "numeric-backend";
    case ErrorCategory::resource: return "resource";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(ErrorCategory::parse,
              std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

struct DomainError : Error {
  explicit DomainError(const std::string& what) : Error(ErrorCategory::domain, what) {}
};

struct GenericityError : Error {
  explicit GenericityError(const std::string& what)
      : Error(ErrorCategory::genericity, what) {}
};

struct NumericError : Error {
  explicit NumericError(const std::string& what) : Error(ErrorCategory::numeric, what) {}
};

struct ResourceError : Error {
  explicit ResourceError(const std::string& what) : Error(ErrorCategory::resource, what) {}
};

}  // namespace charclass

#endif  // CHARCLASS_ERROR_HPP
