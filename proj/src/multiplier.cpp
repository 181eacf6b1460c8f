#include "tcnfet/multiplier.hpp"

#include <algorithm>
#include <stdexcept>

namespace tcnfet {

const char* to_string(CellKind kind) noexcept
{
    switch (kind) {
    case CellKind::Tmul: return "TMUL";
    case CellKind::Tha: return "THA";
    case CellKind::Tfa: return "TFA";
    }
    return "?";
}

MultiplierNetwork::SignalId MultiplierNetwork::new_signal(int max_value)
{
    max_value_.push_back(max_value);
    return static_cast<SignalId>(max_value_.size() - 1);
}

MultiplierNetwork::Word MultiplierNetwork::ripple_add(const Word& x, const Word& y)
{
    Word out;
    const int lo = std::min(x.begin()->first, y.begin()->first);
    const int hi = std::max(x.rbegin()->first, y.rbegin()->first);
    std::vector<SignalId> ins;
    bool have_carry = false;
    SignalId carry = 0;
    for (int w = lo; w <= hi || have_carry; ++w) {
        ins.clear();
        if (auto it = x.find(w); it != x.end()) ins.push_back(it->second);
        if (auto it = y.find(w); it != y.end()) ins.push_back(it->second);
        if (have_carry) ins.push_back(carry);
        have_carry = false;
        if (ins.empty()) continue;
        if (ins.size() == 1) {
            out[w] = ins.front();
            continue;
        }
        int bound = 0;
        for (const SignalId s : ins) bound += max_value_[s];
        const int carry_bound = bound / 3;
        Cell cell{ins.size() == 2 ? CellKind::Tha : CellKind::Tfa, ins, new_signal(std::min(2, carry_bound)),
                  new_signal(std::min(2, bound)), carry_bound > 0};
        out[w] = cell.value_out;
        if (cell.carry_connected) {
            have_carry = true;
            carry = cell.carry_out;
        }
        cells_.push_back(std::move(cell));
    }
    return out;
}

MultiplierNetwork::MultiplierNetwork(std::size_t width) : width_(width)
{
    if (width == 0) throw std::invalid_argument("multiplier width must be positive");
    const int n = static_cast<int>(width);
    for (int i = 0; i < n; ++i) a_in_.push_back(new_signal(2));
    for (int j = 0; j < n; ++j) b_in_.push_back(new_signal(2));

    std::vector<Word> rows;
    for (int j = 0; j < n; ++j) {
        Word products;
        Word carries;
        for (int i = 0; i < n; ++i) {
            Cell cell{CellKind::Tmul, {a_in_[i], b_in_[j]}, new_signal(1), new_signal(2), true};
            products[i + j] = cell.value_out;
            carries[i + j + 1] = cell.carry_out;
            cells_.push_back(std::move(cell));
        }
        rows.push_back(ripple_add(products, carries));
    }
    while (rows.size() > 1) {
        std::vector<Word> next;
        for (std::size_t k = 0; k + 1 < rows.size(); k += 2) next.push_back(ripple_add(rows[k], rows[k + 1]));
        if (rows.size() % 2 == 1) next.push_back(rows.back());
        rows = std::move(next);
    }
    result_ = rows.front();
}

CellCensus MultiplierNetwork::census() const noexcept
{
    CellCensus c;
    for (const Cell& cell : cells_) {
        switch (cell.kind) {
        case CellKind::Tmul: ++c.tmul; break;
        case CellKind::Tha: ++c.tha; break;
        case CellKind::Tfa: ++c.tfa; break;
        }
    }
    return c;
}

TritWord MultiplierNetwork::evaluate(const TritWord& a, const TritWord& b) const
{
    if (a.width() != width_ || b.width() != width_) {
        throw std::invalid_argument("operands must both be " + std::to_string(width_) + " trits wide");
    }
    std::vector<Trit> value(max_value_.size());
    for (std::size_t k = 0; k < width_; ++k) {
        value[a_in_[k]] = a.at_weight(k);
        value[b_in_[k]] = b.at_weight(k);
    }
    for (const Cell& cell : cells_) {
        CarryPair r;
        switch (cell.kind) {
        case CellKind::Tmul: r = tmul_ref(value[cell.inputs[0]], value[cell.inputs[1]]); break;
        case CellKind::Tha: r = tha_ref(value[cell.inputs[0]], value[cell.inputs[1]]); break;
        case CellKind::Tfa: r = tfa_ref(value[cell.inputs[0]], value[cell.inputs[1]], value[cell.inputs[2]]); break;
        }
        if (!cell.carry_connected && r.carry.value() != 0) {
            throw std::logic_error("unconnected carry of a " + std::string(to_string(cell.kind)) + " cell is nonzero");
        }
        value[cell.carry_out] = r.carry;
        value[cell.value_out] = r.value;
    }
    const int out_width = static_cast<int>(2 * width_);
    std::vector<Trit> digits(2 * width_);
    for (const auto& [weight, signal] : result_) {
        if (weight < out_width) {
            digits[static_cast<std::size_t>(out_width - 1 - weight)] = value[signal];
        } else if (value[signal].value() != 0) {
            throw std::logic_error("product overflowed 2n trits");
        }
    }
    return TritWord{std::move(digits)};
}

TritWord multiply_words_behavioral(const TritWord& a, const TritWord& b)
{
    if (a.width() != b.width()) throw std::invalid_argument("operand widths differ");
    return MultiplierNetwork{a.width()}.evaluate(a, b);
}

}  // namespace tcnfet
