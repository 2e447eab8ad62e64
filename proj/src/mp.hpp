#pragma once

#include <cmath>
#include <mutex>

#include <boost/multiprecision/mpfr.hpp>

namespace sinebeta::detail {

using mp = boost::multiprecision::mpfr_float;

// Boost keeps the working precision in a process-wide variable, so every
// extended-precision section holds this lock.
inline std::mutex& mp_mutex() {
  static std::mutex m;
  return m;
}

class MpScope {
 public:
  explicit MpScope(unsigned bits)
      : lock_(mp_mutex()), saved_(mp::default_precision()) {
    mp::default_precision(digits_for_bits(bits));
  }
  ~MpScope() { mp::default_precision(saved_); }
  MpScope(const MpScope&) = delete;
  MpScope& operator=(const MpScope&) = delete;

  static unsigned digits_for_bits(unsigned bits) {
    return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 2;
  }

 private:
  std::lock_guard<std::mutex> lock_;
  unsigned saved_;
};

}  // namespace sinebeta::detail
