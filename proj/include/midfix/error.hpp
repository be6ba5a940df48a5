#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace midfix {

enum class Errc {
  NotAPartialOrder,
  MissingJoinOrMeet,
  NotMonotone,
  NotPreFixed,
  NotPostFixed,
  NotPreFixedNumeric,
  NotPostFixedNumeric,
  CapExceeded,
  ArityMismatch,
  ObjectMismatch,
  ParseError,
  ValidationError,
};

std::string_view errc_name(Errc code) noexcept;

// All recoverable failures carry a code and the labels of a witnessing
// configuration (a pair of elements, an offending symbol, a level, ...).
class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string message, std::vector<std::string> witness = {})
      : std::runtime_error(std::move(message)),
        code_(code),
        witness_(std::move(witness)) {}

  Errc code() const noexcept { return code_; }
  const std::vector<std::string>& witness() const noexcept { return witness_; }

 private:
  Errc code_;
  std::vector<std::string> witness_;
};

class CapExceeded : public Error {
 public:
  CapExceeded(std::size_t level, std::size_t count, std::size_t cap)
      : Error(Errc::CapExceeded,
              "enumeration cap " + std::to_string(cap) + " exceeded at level " +
                  std::to_string(level) + " (count " + std::to_string(count) + ")",
              {std::to_string(level), std::to_string(count)}),
        level_(level),
        count_(count) {}

  std::size_t level() const noexcept { return level_; }
  std::size_t count() const noexcept { return count_; }

 private:
  std::size_t level_;
  std::size_t count_;
};

}  // namespace midfix
