#ifndef QDIV_EXTENDED_REAL_HPP
#define QDIV_EXTENDED_REAL_HPP

/*
 *  ExtendedReal: a value in R u {+inf} with exact infinity propagation
 *  and the convention 0 * inf = 0; -inf is rejected at construction
 */

#include <cmath>
#include <ostream>
#include "core.hpp"

namespace qdiv {

class ExtendedReal {
  public:
    ExtendedReal() : val_(0.0), inf_(false) {}
    ExtendedReal(double v) : val_(v), inf_(false) {
        require(std::isfinite(v), "ExtendedReal: non-finite double");
    }

    static ExtendedReal infinity() {
        ExtendedReal x;
        x.inf_ = true;
        return x;
    }

    bool is_inf() const { return inf_; }
    double value() const {
        require(!inf_, "ExtendedReal: finite value requested from +inf");
        return val_;
    }
    double as_double() const {
        return inf_ ? std::numeric_limits<double>::infinity() : val_;
    }

    ExtendedReal operator+(const ExtendedReal& o) const {
        if (inf_ || o.inf_) return infinity();
        return ExtendedReal(val_ + o.val_);
    }
    ExtendedReal& operator+=(const ExtendedReal& o) { return *this = *this + o; }

    // scalar multiple with 0 * inf = 0; negative scalars only on finite values
    friend ExtendedReal operator*(double c, const ExtendedReal& x) {
        if (x.inf_) {
            if (c == 0.0) return ExtendedReal(0.0);
            require(c > 0.0, "ExtendedReal: negative multiple of +inf");
            return infinity();
        }
        return ExtendedReal(c * x.val_);
    }

    bool operator==(const ExtendedReal& o) const {
        return inf_ == o.inf_ && (inf_ || val_ == o.val_);
    }
    bool operator<(const ExtendedReal& o) const {
        if (inf_) return false;
        if (o.inf_) return true;
        return val_ < o.val_;
    }

    friend std::ostream& operator<<(std::ostream& os, const ExtendedReal& x) {
        if (x.inf_) return os << "inf";
        return os << x.val_;
    }

  private:
    double val_;
    bool inf_;
};

} // namespace qdiv

#endif // QDIV_EXTENDED_REAL_HPP
