#pragma once

namespace echo2d {

/// The three inter-pulse delays (fs).
enum class Delay { T1, T2, T3 };

struct Delays {
  double t1 = 0.0;
  double t2 = 0.0;
  double t3 = 0.0;

  double operator[](Delay d) const noexcept {
    switch (d) {
      case Delay::T1: return t1;
      case Delay::T2: return t2;
      case Delay::T3: return t3;
    }
    return 0.0;
  }
};

}  // namespace echo2d
