#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "tcnfet/ternary.hpp"

namespace tcnfet {

enum class CellKind { Tmul, Tha, Tfa };

[[nodiscard]] const char* to_string(CellKind kind) noexcept;

struct CellCensus {
    int tmul = 0;
    int tha = 0;
    int tfa = 0;
    bool operator==(const CellCensus&) const = default;
};

/// Array multiplier for two n-trit words built from behavioral TMUL, THA and TFA
/// cells. Every 1-trit product contributes a product trit and a carry trit; each
/// row of products is first summed by a ripple adder and the row sums are then
/// combined pairwise in a balanced tree of ripple adders. Carries that are
/// provably zero from the operand bounds are left unconnected.
class MultiplierNetwork {
public:
    using SignalId = std::uint32_t;

    struct Cell {
        CellKind kind;
        std::vector<SignalId> inputs;
        SignalId carry_out;
        SignalId value_out;
        bool carry_connected;
    };

    explicit MultiplierNetwork(std::size_t width);

    [[nodiscard]] std::size_t width() const noexcept { return width_; }
    [[nodiscard]] const std::vector<Cell>& cells() const noexcept { return cells_; }
    [[nodiscard]] CellCensus census() const noexcept;

    /// Product word of width 2n. Throws std::invalid_argument on width mismatch and
    /// std::logic_error if an unconnected carry or a trit above 3^(2n) is nonzero.
    [[nodiscard]] TritWord evaluate(const TritWord& a, const TritWord& b) const;

private:
    using Word = std::map<int, SignalId>;  // weight -> signal

    SignalId new_signal(int max_value);
    Word ripple_add(const Word& x, const Word& y);

    std::size_t width_;
    std::vector<int> max_value_;
    std::vector<SignalId> a_in_;  // index = weight
    std::vector<SignalId> b_in_;
    std::vector<Cell> cells_;
    Word result_;
};

/// Product of two equal-width words through a freshly instantiated network.
[[nodiscard]] TritWord multiply_words_behavioral(const TritWord& a, const TritWord& b);

}  // namespace tcnfet
