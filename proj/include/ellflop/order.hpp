#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>

namespace ellflop {

/// Order of vanishing: a non-negative integer or infinity (the zero polynomial).
class Order {
   public:
    constexpr Order() = default;
    constexpr Order(unsigned v) : v_(v) {}
    static constexpr Order infinity() {
        Order o;
        o.v_ = kInf;
        return o;
    }

    constexpr bool is_infinite() const { return v_ == kInf; }
    constexpr bool is_finite() const { return v_ != kInf; }
    /// Only meaningful when finite.
    constexpr unsigned value() const { return v_; }

    constexpr Order operator+(Order o) const {
        if (is_infinite() || o.is_infinite()) return infinity();
        return Order(v_ + o.v_);
    }
    /// floor(order / k); infinity stays infinity.
    constexpr Order floor_div(unsigned k) const { return is_infinite() ? *this : Order(v_ / k); }

    friend constexpr bool operator==(Order, Order) = default;
    friend constexpr auto operator<=>(Order a, Order b) { return a.v_ <=> b.v_; }

    std::string str() const { return is_infinite() ? "inf" : std::to_string(v_); }
    friend std::ostream& operator<<(std::ostream& os, Order o) { return os << o.str(); }

   private:
    static constexpr unsigned kInf = std::numeric_limits<unsigned>::max();
    unsigned v_ = 0;
};

}  // namespace ellflop
