// Copyright 2026 The cliffxeb authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CLIFFXEB_EXTFLOAT_HPP
#define CLIFFXEB_EXTFLOAT_HPP

#include <cmath>
#include <cstdint>

namespace cliffxeb {

// Nonnegative float with a wide exponent: value = mantissa * 2^exponent with
// mantissa in [0.5, 1) (or exactly 0). Holds quantities like count * 2^(n-k)
// for n in the thousands, far past the double range, and only rounds within
// the 53-bit mantissa. Conversion back to double saturates to infinity or
// flushes to zero when the exponent leaves the representable range.
class ExtFloat {
  public:
    ExtFloat() = default;

    // mant * 2^ex with mant >= 0 and finite.
    static ExtFloat term(double mant, int64_t ex) {
        ExtFloat f;
        f.mant_ = mant;
        f.ex_ = ex;
        f.normalize();
        return f;
    }

    ExtFloat &operator+=(const ExtFloat &o) {
        if (o.mant_ == 0.0) return *this;
        if (mant_ == 0.0) {
            *this = o;
            return *this;
        }
        // Align the smaller term onto the larger exponent; ldexp underflows
        // cleanly to zero when the gap exceeds the double range.
        if (ex_ >= o.ex_) {
            mant_ += ldexp_clamped(o.mant_, o.ex_ - ex_);
        } else {
            mant_ = o.mant_ + ldexp_clamped(mant_, ex_ - o.ex_);
            ex_ = o.ex_;
        }
        normalize();
        return *this;
    }

    ExtFloat &divide_by(double d) {
        mant_ /= d;
        normalize();
        return *this;
    }

    double to_double() const { return mant_ == 0.0 ? 0.0 : ldexp_clamped(mant_, ex_); }

    bool is_zero() const { return mant_ == 0.0; }
    double mantissa() const { return mant_; }
    int64_t exponent() const { return ex_; }

  private:
    static double ldexp_clamped(double m, int64_t e) {
        if (e > 5000) return m * HUGE_VAL;
        if (e < -5000) return 0.0;
        return std::ldexp(m, (int)e);
    }

    void normalize() {
        if (mant_ == 0.0) {
            ex_ = 0;
            return;
        }
        int e = 0;
        mant_ = std::frexp(mant_, &e);
        ex_ += e;
    }

    double mant_ = 0.0;
    int64_t ex_ = 0;
};

}  // namespace cliffxeb

#endif  // CLIFFXEB_EXTFLOAT_HPP
