#include "tcnfet/ternary.hpp"

#include <cmath>
#include <stdexcept>

#include "tcnfet/error.hpp"

namespace tcnfet {

Trit::Trit(int value)
{
    if (value < 0 || value > 2) throw std::out_of_range("trit value " + std::to_string(value) + " not in {0,1,2}");
    value_ = static_cast<std::uint8_t>(value);
}

Trit Trit::from_char(char c)
{
    if (c < '0' || c > '2') throw std::invalid_argument(std::string("invalid trit digit '") + c + "'");
    return Trit{c - '0'};
}

VoltageLevelMap::VoltageLevelMap(double vdd, double tolerance_band) : vdd_(vdd), band_(tolerance_band)
{
    if (!(vdd > 0.0)) throw std::invalid_argument("vdd must be positive");
    if (!(tolerance_band >= 0.0 && tolerance_band < vdd / 4.0)) {
        throw std::invalid_argument("tolerance band must lie in [0, vdd/4)");
    }
}

Trit VoltageLevelMap::to_trit(double v) const
{
    for (const Trit t : kAllTrits) {
        if (std::abs(v - voltage(t)) <= band_) return t;
    }
    throw IndeterminateLevel(v);
}

Trit voltage_to_trit(double v, const VoltageLevelMap& map)
{
    return map.to_trit(v);
}

Trit nti(Trit x) noexcept
{
    return x.value() == 0 ? Trit{2} : Trit{0};
}

Trit pti(Trit x) noexcept
{
    return x.value() == 2 ? Trit{0} : Trit{2};
}

Trit sti(Trit x) noexcept
{
    return Trit{2 - x.value()};
}

Trit stb(Trit x) noexcept
{
    return x;
}

CarryPair tha_ref(Trit a, Trit b) noexcept
{
    const int s = a.value() + b.value();
    return {Trit{s / 3}, Trit{s % 3}};
}

CarryPair tmul_ref(Trit a, Trit b) noexcept
{
    const int p = a.value() * b.value();
    return {Trit{p / 3}, Trit{p % 3}};
}

CarryPair tfa_ref(Trit a, Trit b, Trit cin) noexcept
{
    const int s = a.value() + b.value() + cin.value();
    return {Trit{s / 3}, Trit{s % 3}};
}

BigUnsigned max_unsigned(int radix, int digits)
{
    if (radix < 2) throw std::invalid_argument("radix must be at least 2");
    if (digits < 1) throw std::invalid_argument("digit count must be at least 1");
    BigUnsigned result = 1;
    for (int i = 0; i < digits; ++i) result *= radix;
    return result - 1;
}

std::string format_truncated_scientific(const BigUnsigned& value, int significant)
{
    if (significant < 1) throw std::invalid_argument("need at least one significant digit");
    const std::string digits = value.str();
    const int exponent = static_cast<int>(digits.size()) - 1;
    std::string out(1, digits.front());
    if (significant > 1) {
        out += '.';
        std::string tail = digits.substr(1, static_cast<std::size_t>(significant - 1));
        tail.resize(static_cast<std::size_t>(significant - 1), '0');
        out += tail;
    }
    return out + "e" + std::to_string(exponent);
}

double noise_margin(int radix, double vdd)
{
    if (radix < 2) throw std::invalid_argument("radix must be at least 2");
    if (!(vdd > 0.0)) throw std::invalid_argument("vdd must be positive");
    return vdd / (2.0 * radix - 2.0);
}

TritWord::TritWord(std::vector<Trit> digits_msb_first) : digits_(std::move(digits_msb_first))
{
    if (digits_.empty()) throw std::invalid_argument("trit word must have at least one digit");
}

TritWord TritWord::parse(std::string_view digits)
{
    std::vector<Trit> out;
    out.reserve(digits.size());
    for (const char c : digits) out.push_back(Trit::from_char(c));
    return TritWord{std::move(out)};
}

std::string TritWord::to_string() const
{
    std::string s;
    s.reserve(digits_.size());
    for (const Trit t : digits_) s.push_back(t.to_char());
    return s;
}

namespace {

// 3^40 < 2^64 <= 3^41
constexpr std::size_t kMaxIntegerWidth = 40;

}  // namespace

std::uint64_t word_to_int(const TritWord& w)
{
    if (w.width() > kMaxIntegerWidth) {
        throw OverflowError("word of " + std::to_string(w.width()) + " trits does not fit in 64 bits");
    }
    std::uint64_t n = 0;
    for (const Trit t : w.digits()) n = n * 3 + static_cast<std::uint64_t>(t.value());
    return n;
}

TritWord int_to_word(std::uint64_t n, std::size_t width)
{
    if (width == 0) throw std::invalid_argument("width must be positive");
    if (width > kMaxIntegerWidth) {
        throw OverflowError("width " + std::to_string(width) + " exceeds the 64-bit integer path");
    }
    std::vector<Trit> digits(width);
    std::uint64_t rest = n;
    for (std::size_t i = width; i-- > 0;) {
        digits[i] = Trit{static_cast<int>(rest % 3)};
        rest /= 3;
    }
    if (rest != 0) {
        throw OverflowError(std::to_string(n) + " does not fit in " + std::to_string(width) + " trits");
    }
    return TritWord{std::move(digits)};
}

std::vector<int> to_balanced(std::int64_t n)
{
    if (n == 0) return {0};
    std::vector<int> lsb_first;
    while (n != 0) {
        int r = static_cast<int>(((n % 3) + 3) % 3);
        if (r == 2) r = -1;
        lsb_first.push_back(r);
        n = (n - r) / 3;
    }
    return {lsb_first.rbegin(), lsb_first.rend()};
}

std::int64_t from_balanced(const std::vector<int>& digits)
{
    std::int64_t n = 0;
    for (const int d : digits) {
        if (d < -1 || d > 1) throw std::invalid_argument("balanced digit out of range");
        n = n * 3 + d;
    }
    return n;
}

}  // namespace tcnfet
