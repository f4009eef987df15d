#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace quadmod {

enum class ErrorKind {
  DegenerateFixedPoints,
  InvalidForm,
  InconsistentTriple,
  ZeroMultiplier,
  NotInB2,
  DegenerateCorrespondence,
  UnsupportedForm,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::DegenerateFixedPoints: return "DegenerateFixedPoints";
    case ErrorKind::InvalidForm: return "InvalidForm";
    case ErrorKind::InconsistentTriple: return "InconsistentTriple";
    case ErrorKind::ZeroMultiplier: return "ZeroMultiplier";
    case ErrorKind::NotInB2: return "NotInB2";
    case ErrorKind::DegenerateCorrespondence: return "DegenerateCorrespondence";
    case ErrorKind::UnsupportedForm: return "UnsupportedForm";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace quadmod
