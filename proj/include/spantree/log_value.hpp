#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>

namespace spantree {

// A nonnegative quantity stored as its natural logarithm. Tree counts such as
// n^(n-2) overflow every fixed-width format long before n reaches 100, so all
// count arithmetic happens in the log domain. Zero is the sentinel log = -inf;
// it absorbs multiplication and is the identity for log-sum-exp addition.
class LogValue {
public:
    LogValue() = default;  // zero

    static LogValue zero() noexcept { return LogValue(); }

    static LogValue from_log(double log_x) noexcept {
        LogValue v;
        v.log_ = log_x;
        return v;
    }

    static LogValue from_value(double x) {
        if (x < 0.0 || std::isnan(x)) throw std::invalid_argument("LogValue: negative or NaN");
        return from_log(std::log(x));
    }

    bool is_zero() const noexcept { return std::isinf(log_) && log_ < 0.0; }
    double log() const noexcept { return log_; }
    double value() const noexcept { return is_zero() ? 0.0 : std::exp(log_); }

    LogValue& operator*=(const LogValue& o) noexcept {
        log_ = (is_zero() || o.is_zero()) ? -std::numeric_limits<double>::infinity()
                                          : log_ + o.log_;
        return *this;
    }
    friend LogValue operator*(LogValue x, const LogValue& y) noexcept { return x *= y; }

    LogValue& operator+=(const LogValue& o) noexcept {
        if (o.is_zero()) return *this;
        if (is_zero()) {
            log_ = o.log_;
            return *this;
        }
        const double hi = log_ > o.log_ ? log_ : o.log_;
        const double lo = log_ > o.log_ ? o.log_ : log_;
        log_ = hi + std::log1p(std::exp(lo - hi));
        return *this;
    }
    friend LogValue operator+(LogValue x, const LogValue& y) noexcept { return x += y; }

private:
    double log_ = -std::numeric_limits<double>::infinity();
};

// Max-shifted log-sum-exp over raw logs (-inf entries contribute zero).
inline double log_sum_exp(std::span<const double> logs) noexcept {
    double hi = -std::numeric_limits<double>::infinity();
    for (double v : logs)
        if (v > hi) hi = v;
    if (std::isinf(hi) && hi < 0.0) return hi;
    double acc = 0.0;
    for (double v : logs)
        if (!(std::isinf(v) && v < 0.0)) acc += std::exp(v - hi);
    return hi + std::log(acc);
}

}  // namespace spantree
