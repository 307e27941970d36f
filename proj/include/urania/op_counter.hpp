#pragma once

#include <cmath>
#include <cstdint>
#include <ostream>

namespace urania {

/// Per-query tally of the arithmetic a position query performed.
///
/// Divisions are tallied as multiplications and subtractions as additions.
/// Comparisons, sign flips, floor and integer index arithmetic are free.
/// Every call to sin/cos/tan/atan/atan2/asin/acos/sqrt/exp/log counts as a
/// transcendental call, sqrt included.
struct OpCounter {
    std::uint64_t adds = 0;
    std::uint64_t muls = 0;
    std::uint64_t transcendental_calls = 0;
    std::uint64_t row_accesses = 0;

    std::uint64_t arithmetic() const { return adds + muls + transcendental_calls; }
    std::uint64_t total() const { return arithmetic() + row_accesses; }

    OpCounter& operator+=(const OpCounter& o) {
        adds += o.adds;
        muls += o.muls;
        transcendental_calls += o.transcendental_calls;
        row_accesses += o.row_accesses;
        return *this;
    }
    friend bool operator==(const OpCounter&, const OpCounter&) = default;
};

std::ostream& operator<<(std::ostream& os, const OpCounter& c);

namespace detail {
inline thread_local OpCounter* active_counter = nullptr;
}

/// Binds `counter` as the target of CountedReal operations on this thread
/// for the lifetime of the scope. Scopes nest; the previous binding is
/// restored on exit.
class CountingScope {
public:
    explicit CountingScope(OpCounter& counter) : prev_(detail::active_counter) {
        detail::active_counter = &counter;
    }
    ~CountingScope() { detail::active_counter = prev_; }
    CountingScope(const CountingScope&) = delete;
    CountingScope& operator=(const CountingScope&) = delete;

private:
    OpCounter* prev_;
};

/// A double that reports each operation to the active OpCounter. Kernels are
/// written once as templates over the scalar type and instantiated for both
/// `double` and `CountedReal`; the two instantiations perform the same
/// floating-point operations in the same order.
class CountedReal {
public:
    constexpr CountedReal() = default;
    constexpr CountedReal(double v) : v_(v) {}  // NOLINT: implicit by intent

    constexpr double value() const { return v_; }

    static void tick_add(std::uint64_t n = 1) {
        if (auto* c = detail::active_counter) c->adds += n;
    }
    static void tick_mul(std::uint64_t n = 1) {
        if (auto* c = detail::active_counter) c->muls += n;
    }
    static void tick_transcendental() {
        if (auto* c = detail::active_counter) ++c->transcendental_calls;
    }
    static void tick_row(std::uint64_t n = 1) {
        if (auto* c = detail::active_counter) c->row_accesses += n;
    }

    friend CountedReal operator+(CountedReal a, CountedReal b) { tick_add(); return a.v_ + b.v_; }
    friend CountedReal operator-(CountedReal a, CountedReal b) { tick_add(); return a.v_ - b.v_; }
    friend CountedReal operator*(CountedReal a, CountedReal b) { tick_mul(); return a.v_ * b.v_; }
    friend CountedReal operator/(CountedReal a, CountedReal b) { tick_mul(); return a.v_ / b.v_; }
    friend CountedReal operator-(CountedReal a) { return -a.v_; }

    CountedReal& operator+=(CountedReal o) { return *this = *this + o; }
    CountedReal& operator-=(CountedReal o) { return *this = *this - o; }
    CountedReal& operator*=(CountedReal o) { return *this = *this * o; }
    CountedReal& operator/=(CountedReal o) { return *this = *this / o; }

    friend bool operator==(CountedReal a, CountedReal b) { return a.v_ == b.v_; }
    friend auto operator<=>(CountedReal a, CountedReal b) { return a.v_ <=> b.v_; }

private:
    double v_ = 0.0;
};

// Free math functions found by ADL from templated kernels.
#define URANIA_COUNTED_UNARY(fn)                                 \
    inline CountedReal fn(CountedReal x) {                       \
        CountedReal::tick_transcendental();                      \
        return std::fn(x.value());                               \
    }
URANIA_COUNTED_UNARY(sin)
URANIA_COUNTED_UNARY(cos)
URANIA_COUNTED_UNARY(tan)
URANIA_COUNTED_UNARY(atan)
URANIA_COUNTED_UNARY(asin)
URANIA_COUNTED_UNARY(acos)
URANIA_COUNTED_UNARY(sqrt)
URANIA_COUNTED_UNARY(exp)
URANIA_COUNTED_UNARY(log)
#undef URANIA_COUNTED_UNARY

inline CountedReal atan2(CountedReal y, CountedReal x) {
    CountedReal::tick_transcendental();
    return std::atan2(y.value(), x.value());
}
inline CountedReal fmod(CountedReal x, CountedReal y) {
    CountedReal::tick_mul();
    return std::fmod(x.value(), y.value());
}
inline CountedReal floor(CountedReal x) { return std::floor(x.value()); }
inline CountedReal fabs(CountedReal x) { return std::fabs(x.value()); }
inline bool isfinite(CountedReal x) { return std::isfinite(x.value()); }

/// Plain double behind a kernel scalar.
constexpr double raw(double x) { return x; }
constexpr double raw(CountedReal x) { return x.value(); }

}  // namespace urania
