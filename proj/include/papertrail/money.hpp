#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace papertrail {

/// Fixed-point amount with two fractional digits. Sums are exact integer
/// arithmetic, so totals do not depend on accumulation order.
class Money {
public:
    constexpr Money() = default;

    static constexpr Money from_cents(std::int64_t cents) { return Money(cents); }

    /// Parses "1234", "1234.5", "-0.25", "1234.567" (rounded half away from
    /// zero to cents). Returns nullopt on malformed input.
    static std::optional<Money> parse(std::string_view text);

    [[nodiscard]] constexpr std::int64_t cents() const { return cents_; }
    [[nodiscard]] double to_double() const { return static_cast<double>(cents_) / 100.0; }
    [[nodiscard]] std::string to_string() const;

    /// Converts into another unit given `units_per_target` (e.g. 0.92 EUR per
    /// USD), rounding to the nearest cent.
    [[nodiscard]] Money convert(double units_per_target) const;

    constexpr Money& operator+=(Money other) {
        cents_ += other.cents_;
        return *this;
    }
    friend constexpr Money operator+(Money a, Money b) { return a += b; }
    friend constexpr auto operator<=>(Money, Money) = default;

private:
    constexpr explicit Money(std::int64_t cents) : cents_(cents) {}
    std::int64_t cents_ = 0;
};

}  // namespace papertrail
