#include "papertrail/money.hpp"

#include <cmath>
#include <cstdlib>

#include "papertrail/text.hpp"

namespace papertrail {

std::optional<Money> Money::parse(std::string_view raw) {
    std::string_view s = text::trim(raw);
    if (s.empty()) return std::nullopt;
    bool negative = false;
    if (s.front() == '-' || s.front() == '+') {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    std::int64_t whole = 0;
    std::size_t i = 0;
    bool digits = false;
    for (; i < s.size() && s[i] >= '0' && s[i] <= '9'; ++i) {
        if (whole > (INT64_MAX - 9) / 10 / 100) return std::nullopt;
        whole = whole * 10 + (s[i] - '0');
        digits = true;
    }
    std::int64_t frac = 0;
    if (i < s.size() && s[i] == '.') {
        ++i;
        int places = 0;
        bool round_up = false;
        for (; i < s.size() && s[i] >= '0' && s[i] <= '9'; ++i, ++places) {
            digits = true;
            if (places < 2) {
                frac = frac * 10 + (s[i] - '0');
            } else if (places == 2) {
                round_up = s[i] >= '5';
            }
        }
        if (places == 1) frac *= 10;
        if (round_up) ++frac;
    }
    if (!digits || i != s.size()) return std::nullopt;
    std::int64_t cents = whole * 100 + frac;
    return Money(negative ? -cents : cents);
}

std::string Money::to_string() const {
    const std::int64_t a = std::llabs(cents_);
    std::string frac = std::to_string(a % 100);
    if (frac.size() < 2) frac.insert(0, "0");
    return (cents_ < 0 ? "-" : "") + std::to_string(a / 100) + "." + frac;
}

Money Money::convert(double units_per_target) const {
    return Money(std::llround(static_cast<double>(cents_) / units_per_target));
}

}  // namespace papertrail
