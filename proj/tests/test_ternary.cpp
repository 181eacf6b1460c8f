#include <catch_amalgamated.hpp>

#include <random>

#include "tcnfet/error.hpp"
#include "tcnfet/ternary.hpp"

using namespace tcnfet;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

Trit T(int v)
{
    return Trit{v};
}

}  // namespace

TEST_CASE("trit domain")
{
    CHECK_THROWS_AS(Trit{3}, std::out_of_range);
    CHECK_THROWS_AS(Trit{-1}, std::out_of_range);
    CHECK(Trit::from_char('2') == T(2));
    CHECK_THROWS_AS(Trit::from_char('3'), std::invalid_argument);
}

TEST_CASE("voltage to trit mapping")
{
    const VoltageLevelMap m(0.9, 0.05);
    CHECK(voltage_to_trit(0.45, m) == T(1));
    CHECK(voltage_to_trit(0.9, m) == T(2));
    CHECK(voltage_to_trit(0.0, m) == T(0));
    CHECK(voltage_to_trit(0.87, m) == T(2));
    CHECK_THROWS_AS(voltage_to_trit(0.25, m), IndeterminateLevel);
    CHECK_THROWS_AS(voltage_to_trit(0.7, m), IndeterminateLevel);
    CHECK_THROWS_AS(VoltageLevelMap(0.9, 0.225), std::invalid_argument);
    CHECK_NOTHROW(VoltageLevelMap(0.9, 0.2249));
    for (const Trit t : kAllTrits) CHECK(m.to_trit(m.voltage(t)) == t);
}

TEST_CASE("inverter and buffer truth tables")
{
    // x: 0 1 2
    const std::array<int, 3> nti_row{2, 0, 0};
    const std::array<int, 3> pti_row{2, 2, 0};
    const std::array<int, 3> sti_row{2, 1, 0};
    for (int x = 0; x < 3; ++x) {
        CAPTURE(x);
        CHECK(nti(T(x)) == T(nti_row[x]));
        CHECK(pti(T(x)) == T(pti_row[x]));
        CHECK(sti(T(x)) == T(sti_row[x]));
        CHECK(stb(T(x)) == T(x));
        CHECK(sti(sti(T(x))) == T(x));
        CHECK(nti(T(x)) <= pti(T(x)));
    }
}

TEST_CASE("half adder and multiplier reference tables")
{
    // a, b, carry, sum
    const int tha_table[9][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 2, 0, 2}, {1, 0, 0, 1}, {1, 1, 0, 2},
                                 {1, 2, 1, 0}, {2, 0, 0, 2}, {2, 1, 1, 0}, {2, 2, 1, 1}};
    // a, b, carry, product
    const int tmul_table[9][4] = {{0, 0, 0, 0}, {0, 1, 0, 0}, {0, 2, 0, 0}, {1, 0, 0, 0}, {1, 1, 0, 1},
                                  {1, 2, 0, 2}, {2, 0, 0, 0}, {2, 1, 0, 2}, {2, 2, 1, 1}};
    for (const auto& r : tha_table) {
        CHECK(tha_ref(T(r[0]), T(r[1])) == CarryPair{T(r[2]), T(r[3])});
    }
    for (const auto& r : tmul_table) {
        CHECK(tmul_ref(T(r[0]), T(r[1])) == CarryPair{T(r[2]), T(r[3])});
    }
}

TEST_CASE("full adder against integer arithmetic")
{
    CHECK(tfa_ref(T(0), T(0), T(0)) == CarryPair{T(0), T(0)});
    CHECK(tfa_ref(T(1), T(1), T(1)) == CarryPair{T(1), T(0)});
    CHECK(tfa_ref(T(2), T(2), T(1)) == CarryPair{T(1), T(2)});
    for (const Trit a : kAllTrits) {
        for (const Trit b : kAllTrits) {
            for (const Trit c : kAllTrits) {
                const auto r = tfa_ref(a, b, c);
                CHECK(3 * r.carry.value() + r.value.value() == a.value() + b.value() + c.value());
            }
        }
    }
}

TEST_CASE("precharge-level frequencies of the reference cells")
{
    int tha_carry_zero = 0;
    int tmul_prod_zero = 0;
    int tmul_carry_nonzero = 0;
    std::array<int, 3> sum_hist{};
    for (const Trit a : kAllTrits) {
        for (const Trit b : kAllTrits) {
            const auto h = tha_ref(a, b);
            tha_carry_zero += h.carry.value() == 0;
            ++sum_hist[static_cast<std::size_t>(h.value.value())];
            const auto m = tmul_ref(a, b);
            tmul_prod_zero += m.value.value() == 0;
            tmul_carry_nonzero += m.carry.value() != 0;
        }
    }
    CHECK(tha_carry_zero == 6);
    CHECK(sum_hist == std::array<int, 3>{3, 3, 3});
    CHECK(tmul_prod_zero == 5);
    CHECK(tmul_carry_nonzero == 1);
}

TEST_CASE("maximum unsigned integers by radix and width")
{
    struct Row {
        int digits;
        const char* binary;
        const char* ternary;
    };
    const std::vector<Row> table{
        {1, "1", "2"},
        {2, "3", "8"},
        {4, "15", "80"},
        {8, "255", "6560"},
        {16, "65535", "43046720"},
        {32, "4294967295", "1.85302018e15"},
        {64, "1.84467440e19", "3.43368382e30"},
    };
    auto render = [](const BigUnsigned& v) {
        return v < BigUnsigned(1'000'000'000'000ULL) ? v.str() : format_truncated_scientific(v, 9);
    };
    for (const Row& r : table) {
        CAPTURE(r.digits);
        CHECK(render(max_unsigned(2, r.digits)) == r.binary);
        CHECK(render(max_unsigned(3, r.digits)) == r.ternary);
    }
    CHECK(max_unsigned(3, 8) == 6560);
    CHECK(max_unsigned(2, 16) == 65535);
    CHECK(max_unsigned(3, 1) == 2);
    CHECK(max_unsigned(2, 64).str() == "18446744073709551615");
    CHECK(max_unsigned(3, 32).str() == "1853020188851840");
    CHECK(max_unsigned(3, 64).str() == "3433683820292512484657849089280");
    // Independent oracle: repeated multiplication.
    BigUnsigned p = 1;
    for (int i = 0; i < 64; ++i) p *= 3;
    CHECK(max_unsigned(3, 64) == p - 1);
    CHECK_THROWS(max_unsigned(1, 4));
    CHECK_THROWS(max_unsigned(3, 0));
}

TEST_CASE("truncated scientific rendering truncates instead of rounding")
{
    CHECK(format_truncated_scientific(BigUnsigned(1999999999999ULL), 3) == "1.99e12");
    CHECK(format_truncated_scientific(BigUnsigned(5), 3) == "5.00e0");
}

TEST_CASE("noise margin")
{
    // vdd, binary, ternary
    const double table[5][3] = {{3, 1.5, 0.75}, {1.8, 0.9, 0.45}, {1.2, 0.6, 0.3}, {0.9, 0.45, 0.225}, {0.75, 0.375, 0.1875}};
    for (const auto& r : table) {
        CHECK_THAT(noise_margin(2, r[0]), WithinAbs(r[1], 1e-12));
        CHECK_THAT(noise_margin(3, r[0]), WithinAbs(r[2], 1e-12));
    }
    for (double v = 0.1; v < 5.0; v += 0.37) {
        CHECK_THAT(noise_margin(3, v), WithinRel(noise_margin(2, v) / 2.0, 1e-15));
    }
}

TEST_CASE("word conversions")
{
    CHECK(int_to_word(80, 4).to_string() == "2222");
    CHECK(int_to_word(0, 4).to_string() == "0000");
    // 6400 = 2*2187 + 2*729 + 2*243 + 1*81 + 0*27 + 0*9 + 0*3 + 1
    std::uint64_t oracle = 0;
    for (const int d : {2, 2, 2, 1, 0, 0, 0, 1}) oracle = oracle * 3 + static_cast<std::uint64_t>(d);
    REQUIRE(oracle == 6400);
    CHECK(int_to_word(6400, 8).to_string() == "22210001");
    CHECK_THROWS_AS(int_to_word(81, 4), OverflowError);
    CHECK_THROWS(TritWord::parse("1231"));
    CHECK(TritWord::parse("0120").at_weight(0) == T(0));
    CHECK(TritWord::parse("0120").at_weight(2) == T(1));

    for (std::uint64_t n = 0; n < 6561; ++n) CHECK(word_to_int(int_to_word(n, 8)) == n);
    std::mt19937_64 rng(7);
    const std::uint64_t max40 = static_cast<std::uint64_t>(max_unsigned(3, 40));
    std::uniform_int_distribution<std::uint64_t> dist(0, max40);
    for (int i = 0; i < 1000; ++i) {
        const std::uint64_t n = dist(rng);
        CHECK(word_to_int(int_to_word(n, 40)) == n);
    }
    CHECK_THROWS_AS(word_to_int(TritWord(std::vector<Trit>(41))), OverflowError);
}

TEST_CASE("balanced ternary conversion")
{
    CHECK(to_balanced(0) == std::vector<int>{0});
    CHECK(to_balanced(2) == std::vector<int>{1, -1});
    CHECK(to_balanced(-4) == std::vector<int>{-1, -1});
    for (std::int64_t n = -5000; n <= 5000; ++n) {
        const auto d = to_balanced(n);
        for (const int x : d) REQUIRE((x >= -1 && x <= 1));
        CHECK(from_balanced(d) == n);
    }
}
