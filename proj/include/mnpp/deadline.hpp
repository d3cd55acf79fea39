#pragma once

#include <chrono>
#include <optional>

#include "mnpp/errors.hpp"

namespace mnpp {

/// Wall-clock limit checked cooperatively at iteration boundaries.
class Deadline {
 public:
  using Clock = std::chrono::steady_clock;

  Deadline() = default;
  static Deadline after(std::chrono::duration<double> limit) {
    Deadline d;
    d.at_ = Clock::now() + std::chrono::duration_cast<Clock::duration>(limit);
    return d;
  }

  bool expired() const { return at_ && Clock::now() >= *at_; }
  void check() const {
    if (expired()) throw TimeoutError("time limit reached");
  }
  /// Seconds left, or nullopt when unlimited.
  std::optional<double> remaining() const {
    if (!at_) return std::nullopt;
    return std::chrono::duration<double>(*at_ - Clock::now()).count();
  }

 private:
  std::optional<Clock::time_point> at_;
};

}  // namespace mnpp
