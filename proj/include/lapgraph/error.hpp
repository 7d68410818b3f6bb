#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lapgraph {

enum class Errc {
  InvalidVertexId,
  IsolatedVertex,
  UnknownFamily,
  BadParams,
  GridTooCoarse,
  NotHermitian,
  DimensionTooLarge,
  ShapeMismatch,
  Io,
  Format,
};

inline constexpr std::string_view to_string(Errc c) noexcept {
  switch (c) {
    case Errc::InvalidVertexId: return "InvalidVertexId";
    case Errc::IsolatedVertex: return "IsolatedVertex";
    case Errc::UnknownFamily: return "UnknownFamily";
    case Errc::BadParams: return "BadParams";
    case Errc::GridTooCoarse: return "GridTooCoarse";
    case Errc::NotHermitian: return "NotHermitian";
    case Errc::DimensionTooLarge: return "DimensionTooLarge";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::Io: return "Io";
    case Errc::Format: return "Format";
  }
  return "Unknown";
}

/// Domain error raised by every lapgraph operation. The code identifies the
/// failed precondition; the message carries the offending values.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace lapgraph
