#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace attrex {

// A set, clause or name does not fit the schema it is used against.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller broke a documented precondition.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// The exploration base has no realizer.
class InconsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A brute-force enumeration would exceed the configured attribute limit.
class SizeLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input document (schema, domain, examples).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A journal line could not be parsed or applied.
class JournalError : public std::runtime_error {
 public:
  JournalError(std::uint64_t seq, const std::string& what)
      : std::runtime_error("journal entry " + std::to_string(seq) + ": " + what), seq_(seq) {}

  std::uint64_t seq() const noexcept { return seq_; }

 private:
  std::uint64_t seq_;
};

// An expert answer failed one of the acceptance checks.
class ExpertError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace attrex
