#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace tcnfet {

/// One unbalanced ternary digit, 0, 1 or 2.
class Trit {
public:
    constexpr Trit() = default;
    /// Throws std::out_of_range outside {0, 1, 2}.
    explicit Trit(int value);

    [[nodiscard]] constexpr int value() const noexcept { return value_; }
    [[nodiscard]] char to_char() const noexcept { return static_cast<char>('0' + value_); }
    static Trit from_char(char c);

    auto operator<=>(const Trit&) const = default;

private:
    std::uint8_t value_ = 0;
};

inline const std::array<Trit, 3> kAllTrits{Trit{0}, Trit{1}, Trit{2}};

/// Trit <-> voltage assignment 0, vdd/2, vdd with a symmetric acceptance band.
class VoltageLevelMap {
public:
    /// Throws std::invalid_argument unless 0 <= band < vdd/4 and vdd > 0.
    VoltageLevelMap(double vdd, double tolerance_band);

    [[nodiscard]] double vdd() const noexcept { return vdd_; }
    [[nodiscard]] double tolerance_band() const noexcept { return band_; }
    [[nodiscard]] double voltage(Trit t) const noexcept { return vdd_ * t.value() / 2.0; }

    /// Throws IndeterminateLevel in the forbidden zones between bands.
    [[nodiscard]] Trit to_trit(double v) const;

private:
    double vdd_;
    double band_;
};

[[nodiscard]] Trit voltage_to_trit(double v, const VoltageLevelMap& map);

// Inverters and buffer.
[[nodiscard]] Trit nti(Trit x) noexcept;
[[nodiscard]] Trit pti(Trit x) noexcept;
[[nodiscard]] Trit sti(Trit x) noexcept;
[[nodiscard]] Trit stb(Trit x) noexcept;

struct CarryPair {
    Trit carry;
    Trit value;  // sum or product digit
    bool operator==(const CarryPair&) const = default;
};

[[nodiscard]] CarryPair tha_ref(Trit a, Trit b) noexcept;
[[nodiscard]] CarryPair tmul_ref(Trit a, Trit b) noexcept;
[[nodiscard]] CarryPair tfa_ref(Trit a, Trit b, Trit cin) noexcept;

using BigUnsigned = boost::multiprecision::cpp_int;

/// radix^digits - 1, exact for any size.
[[nodiscard]] BigUnsigned max_unsigned(int radix, int digits);

/// Scientific rendering with the mantissa truncated (not rounded) to
/// `significant` digits, e.g. "1.85302018e15".
[[nodiscard]] std::string format_truncated_scientific(const BigUnsigned& value, int significant);

/// vdd / (2 r - 2).
[[nodiscard]] double noise_margin(int radix, double vdd);

/// Fixed-width word of trits, most-significant digit first.
class TritWord {
public:
    TritWord() = default;
    explicit TritWord(std::vector<Trit> digits_msb_first);
    /// Parses an MSB-first digit string such as "2221".
    static TritWord parse(std::string_view digits);

    [[nodiscard]] std::size_t width() const noexcept { return digits_.size(); }
    [[nodiscard]] const std::vector<Trit>& digits() const noexcept { return digits_; }
    /// Digit of weight 3^k.
    [[nodiscard]] Trit at_weight(std::size_t k) const { return digits_.at(digits_.size() - 1 - k); }
    [[nodiscard]] std::string to_string() const;

    bool operator==(const TritWord&) const = default;

private:
    std::vector<Trit> digits_;
};

/// Positional value. Throws OverflowError for words wider than 40 trits.
[[nodiscard]] std::uint64_t word_to_int(const TritWord& w);
/// Throws OverflowError unless n <= 3^width - 1.
[[nodiscard]] TritWord int_to_word(std::uint64_t n, std::size_t width);

/// Balanced-ternary digits (-1, 0, 1) of n, most-significant first.
[[nodiscard]] std::vector<int> to_balanced(std::int64_t n);
[[nodiscard]] std::int64_t from_balanced(const std::vector<int>& digits);

}  // namespace tcnfet
