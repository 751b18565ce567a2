#pragma once

#include <stdexcept>
#include <string>

namespace hyperpos {

enum class ErrorKind {
  Dimension,
  Definiteness,
  Singular,
  Pole,
  Resonance,
  NotHurwitz,
  NotMinimal,
  Tie,
  Isometry,
  Range,
  Improper,
  Parse,
  Io,
};

// Input-shaped problems map to CLI exit 3, the rest to exit 4.
inline bool is_input_error(ErrorKind k) {
  switch (k) {
    case ErrorKind::Dimension:
    case ErrorKind::Range:
    case ErrorKind::Improper:
    case ErrorKind::Parse:
    case ErrorKind::Io:
    case ErrorKind::Isometry:
      return true;
    default:
      return false;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace hyperpos
