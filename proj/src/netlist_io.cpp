#include "tcnfet/netlist_io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "tcnfet/error.hpp"

namespace tcnfet {

namespace {

struct Token {
    std::string_view text;
    std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        if (i >= line.size()) break;
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
        out.push_back({line.substr(start, i - start), start + 1});
    }
    return out;
}

bool valid_identifier(std::string_view s)
{
    if (s.empty()) return false;
    for (const char c : s) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
                        c == '.' || c == '[' || c == ']';
        if (!ok) return false;
    }
    return true;
}

std::string shortest(double v)
{
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

class LineParser {
public:
    LineParser(std::size_t line_no, std::vector<Token> tokens) : line_(line_no), tokens_(std::move(tokens)) {}

    [[noreturn]] void fail(ParseError::Kind kind, const Token& at, const std::string& msg) const
    {
        throw ParseError(kind, line_, at.column, msg);
    }

    const std::vector<Token>& tokens() const { return tokens_; }

    /// Positional argument `index`; syntax error when missing.
    const Token& arg(std::size_t index, const char* what) const
    {
        if (index >= tokens_.size()) {
            const Token& last = tokens_.back();
            throw ParseError(ParseError::Kind::Syntax, line_, last.column + last.text.size(),
                             std::string("missing ") + what);
        }
        return tokens_[index];
    }

    const Token& identifier(std::size_t index, const char* what) const
    {
        const Token& t = arg(index, what);
        if (!valid_identifier(t.text)) fail(ParseError::Kind::Syntax, t, "invalid identifier '" + std::string(t.text) + "'");
        return t;
    }

    double number(const Token& t, std::string_view text) const
    {
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
            fail(ParseError::Kind::InvalidValue, t, "malformed number '" + std::string(text) + "'");
        }
        return v;
    }

    /// Capacitance with an optional a/f/p/n suffix; plain numbers are farads.
    double capacitance(const Token& t, std::string_view text) const
    {
        double scale = 1.0;
        if (!text.empty()) {
            switch (text.back()) {
            case 'a': scale = 1e-18; break;
            case 'f': scale = 1e-15; break;
            case 'p': scale = 1e-12; break;
            case 'n': scale = 1e-9; break;
            default: break;
            }
            if (scale != 1.0) text.remove_suffix(1);
        }
        const double v = number(t, text) * scale;
        if (v < 0.0) fail(ParseError::Kind::InvalidValue, t, "capacitance must be non-negative");
        return v;
    }

    /// key=value options starting at token `first`. Duplicate or unknown keys fail.
    std::map<std::string_view, Token> options(std::size_t first, std::initializer_list<std::string_view> allowed) const
    {
        std::map<std::string_view, Token> out;
        for (std::size_t i = first; i < tokens_.size(); ++i) {
            const Token& t = tokens_[i];
            const auto eq = t.text.find('=');
            if (eq == std::string_view::npos || eq == 0) {
                fail(ParseError::Kind::Syntax, t, "expected key=value, got '" + std::string(t.text) + "'");
            }
            const auto key = t.text.substr(0, eq);
            bool known = false;
            for (const auto a : allowed) known = known || a == key;
            if (!known) fail(ParseError::Kind::Syntax, t, "unknown option '" + std::string(key) + "'");
            Token value{t.text.substr(eq + 1), t.column + eq + 1};
            if (!out.emplace(key, value).second) {
                fail(ParseError::Kind::Syntax, t, "option '" + std::string(key) + "' given twice");
            }
        }
        return out;
    }

private:
    std::size_t line_;
    std::vector<Token> tokens_;
};

std::optional<std::optional<Trit>> level_token(std::string_view s, bool allow_none)
{
    if (s == "0" || s == "gnd") return std::optional<Trit>{Trit{0}};
    if (s == "half") return std::optional<Trit>{Trit{1}};
    if (s == "vdd") return std::optional<Trit>{Trit{2}};
    if (allow_none && s == "none") return std::optional<Trit>{};
    return std::nullopt;
}

}  // namespace

Netlist parse_netlist(std::string_view text)
{
    NetlistBuilder builder("unnamed");
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl_pos = text.find('\n');
        std::string_view line = text.substr(0, nl_pos);
        text = nl_pos == std::string_view::npos ? std::string_view{} : text.substr(nl_pos + 1);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        auto tokens = tokenize(line);
        if (tokens.empty()) continue;
        const LineParser p(line_no, std::move(tokens));
        const Token& head = p.tokens().front();
        const std::string_view kw = head.text;

        auto declare = [&](auto&& add, const Token& name_tok) {
            if (builder.has_node(name_tok.text)) {
                p.fail(ParseError::Kind::DuplicateNode, name_tok, "node '" + std::string(name_tok.text) + "' declared twice");
            }
            add(std::string(name_tok.text));
        };

        if (kw == ".name") {
            builder.name(std::string(p.identifier(1, "netlist name").text));
        } else if (kw == ".source") {
            const Token& first = p.arg(1, "source text");
            auto rest = line.substr(first.column - 1);
            while (!rest.empty() && (rest.back() == ' ' || rest.back() == '\t' || rest.back() == '\r')) rest.remove_suffix(1);
            builder.source(std::string(rest));
        } else if (kw == ".vdd") {
            const Token& t = p.arg(1, "supply voltage");
            const double v = p.number(t, t.text);
            if (!(v > 0.0)) p.fail(ParseError::Kind::InvalidValue, t, "vdd must be positive");
            builder.vdd(v);
        } else if (kw == ".default_chirality") {
            const Token& t = p.arg(1, "chirality");
            try {
                builder.default_chirality(ChiralityVector::parse(t.text));
            } catch (const ChiralityError& e) {
                p.fail(ParseError::Kind::InvalidValue, t, e.what());
            }
        } else if (kw == "rail") {
            const Token& name = p.identifier(1, "rail name");
            const Token& lvl = p.arg(2, "rail level");
            const auto level = level_token(lvl.text, false);
            if (!level) p.fail(ParseError::Kind::Syntax, lvl, "rail level must be 0, half or vdd");
            declare([&](std::string n) { builder.rail(std::move(n), **level); }, name);
        } else if (kw == "clock") {
            declare([&](std::string n) { builder.clock(std::move(n)); }, p.identifier(1, "clock name"));
        } else if (kw == "input") {
            declare([&](std::string n) { builder.input(std::move(n)); }, p.identifier(1, "input name"));
        } else if (kw == "output") {
            const Token& name = p.identifier(1, "output name");
            const auto opts = p.options(2, {"precharge", "cap"});
            const auto pc = opts.find("precharge");
            if (pc == opts.end()) p.fail(ParseError::Kind::Syntax, name, "output needs precharge=gnd|half|vdd|none");
            const auto level = level_token(pc->second.text, true);
            if (!level) p.fail(ParseError::Kind::Syntax, pc->second, "precharge must be gnd, half, vdd or none");
            double cap = 0.0;
            if (auto c = opts.find("cap"); c != opts.end()) cap = p.capacitance(c->second, c->second.text);
            declare([&](std::string n) { builder.output(std::move(n), *level, cap); }, name);
        } else if (kw == "node") {
            const Token& name = p.identifier(1, "node name");
            const auto opts = p.options(2, {"cap"});
            double cap = 0.0;
            if (auto c = opts.find("cap"); c != opts.end()) cap = p.capacitance(c->second, c->second.text);
            declare([&](std::string n) { builder.node(std::move(n), cap); }, name);
        } else if (kw == "dev") {
            const Token& name = p.identifier(1, "device name");
            if (builder.has_device(name.text)) {
                p.fail(ParseError::Kind::DuplicateDevice, name, "device '" + std::string(name.text) + "' declared twice");
            }
            const auto opts = p.options(2, {"pol", "chir", "tubes", "pitch", "g", "d", "s", "role"});
            auto need = [&](std::string_view key) -> const Token& {
                auto it = opts.find(key);
                if (it == opts.end()) p.fail(ParseError::Kind::Syntax, name, "device needs " + std::string(key) + "=");
                return it->second;
            };
            NetlistBuilder::DeviceArgs args;
            args.name = std::string(name.text);
            const Token& pol = need("pol");
            if (pol.text == "n") args.polarity = Polarity::N;
            else if (pol.text == "p") args.polarity = Polarity::P;
            else p.fail(ParseError::Kind::Syntax, pol, "polarity must be n or p");

            for (const auto key : {std::string_view{"g"}, std::string_view{"d"}, std::string_view{"s"}}) {
                const Token& t = need(key);
                if (!builder.has_node(t.text)) {
                    p.fail(ParseError::Kind::UnknownNode, t, "node '" + std::string(t.text) + "' is not declared");
                }
            }
            args.gate = need("g").text;
            args.drain = need("d").text;
            args.source = need("s").text;

            if (auto it = opts.find("chir"); it != opts.end()) {
                try {
                    args.chirality = ChiralityVector::parse(it->second.text);
                } catch (const ChiralityError& e) {
                    p.fail(ParseError::Kind::InvalidValue, it->second, e.what());
                }
            }
            if (auto it = opts.find("tubes"); it != opts.end()) {
                int v = 0;
                const auto s = it->second.text;
                const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
                if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || v < 1) {
                    p.fail(ParseError::Kind::InvalidValue, it->second, "tubes must be a positive integer");
                }
                args.tubes = v;
            }
            if (auto it = opts.find("pitch"); it != opts.end()) {
                args.pitch = p.number(it->second, it->second.text);
                if (!(args.pitch > 0.0)) p.fail(ParseError::Kind::InvalidValue, it->second, "pitch must be positive");
            }
            if (auto it = opts.find("role"); it != opts.end()) {
                const auto r = it->second.text;
                if (r == "logic") args.role = Role::Logic;
                else if (r == "precharge") args.role = Role::Precharge;
                else if (r == "evaluate") args.role = Role::Evaluate;
                else p.fail(ParseError::Kind::Syntax, it->second, "role must be logic, precharge or evaluate");
            }
            const std::size_t index = builder.device(args);
            const auto& cv = builder.current().device(index).chirality;
            if (classify_conduction(cv) == Conduction::Metallic) {
                const auto it = opts.find("chir");
                p.fail(ParseError::Kind::MetallicChirality, it != opts.end() ? it->second : name,
                       "device " + args.name + " uses metallic chirality (" + cv.to_string() + ")");
            }
        } else {
            p.fail(ParseError::Kind::Syntax, head, "unknown directive '" + std::string(kw) + "'");
        }
    }
    return builder.build();
}

Netlist load_netlist(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw Error("cannot open netlist '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_netlist(ss.str());
}

namespace {

std::string cap_text(double c)
{
    const std::string femto = shortest(c * 1e15) + "f";
    double back = 0.0;
    const std::string digits = femto.substr(0, femto.size() - 1);
    std::from_chars(digits.data(), digits.data() + digits.size(), back);
    if (back * 1e-15 == c) return femto;
    return shortest(c);
}

const char* level_text(Trit t, bool rail)
{
    switch (t.value()) {
    case 0: return rail ? "0" : "gnd";
    case 1: return "half";
    default: return "vdd";
    }
}

}  // namespace

std::string emit_netlist(const Netlist& nl)
{
    std::ostringstream os;
    os << ".name " << nl.name() << '\n';
    if (!nl.source().empty()) os << ".source " << nl.source() << '\n';
    os << ".vdd " << shortest(nl.vdd()) << '\n';
    os << ".default_chirality " << nl.default_chirality().to_string() << '\n';
    for (const Node& n : nl.nodes()) {
        switch (n.kind) {
        case NodeKind::Rail0:
        case NodeKind::RailHalf:
        case NodeKind::RailVdd: os << "rail " << n.name << ' ' << level_text(*rail_level(n.kind), true); break;
        case NodeKind::ClockRef: os << "clock " << n.name; break;
        case NodeKind::Input: os << "input " << n.name; break;
        case NodeKind::Output:
            os << "output " << n.name << " precharge=" << (n.precharge ? level_text(*n.precharge, false) : "none");
            break;
        case NodeKind::Internal: os << "node " << n.name; break;
        }
        if (n.extra_cap != 0.0) os << " cap=" << cap_text(n.extra_cap);
        os << '\n';
    }
    for (const DeviceSpec& d : nl.devices()) {
        os << "dev " << d.name << " pol=" << to_string(d.polarity);
        if (d.chirality != nl.default_chirality()) os << " chir=" << d.chirality.to_string();
        os << " tubes=" << d.tubes << " pitch=" << shortest(d.pitch) << " g=" << nl.node(d.gate).name
           << " d=" << nl.node(d.drain).name << " s=" << nl.node(d.source).name;
        if (d.role != Role::Logic) os << " role=" << to_string(d.role);
        os << '\n';
    }
    return os.str();
}

}  // namespace tcnfet
