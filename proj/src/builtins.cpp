#include "tcnfet/builtins.hpp"

namespace tcnfet {

namespace {

const ChiralityVector k10{10, 0};
const ChiralityVector k19{19, 0};
const ChiralityVector k28{28, 0};

struct Device {
    const char* name;
    Polarity pol;
    const char* g;
    const char* d;
    const char* s;
    std::optional<ChiralityVector> chir = std::nullopt;
    Role role = Role::Logic;
};

constexpr Polarity N = Polarity::N;
constexpr Polarity P = Polarity::P;

void add(NetlistBuilder& b, const std::vector<Device>& devices)
{
    for (const Device& d : devices) {
        NetlistBuilder::DeviceArgs args;
        args.name = d.name;
        args.polarity = d.pol;
        args.gate = d.g;
        args.drain = d.d;
        args.source = d.s;
        args.chirality = d.chir;
        args.role = d.role;
        b.device(args);
    }
}

/// Complementary pull-up/pull-down pair from `in` to `out`.
void inverter(NetlistBuilder& b, const std::string& prefix, const char* in, const char* out,
              const ChiralityVector& p_chir, const ChiralityVector& n_chir)
{
    const std::string pn = prefix + "_P";
    const std::string nn = prefix + "_N";
    add(b, {{pn.c_str(), P, in, out, "vdd", p_chir}, {nn.c_str(), N, in, out, "gnd", n_chir}});
}

Netlist static_inverter(const char* name, const ChiralityVector& p_chir, const ChiralityVector& n_chir)
{
    NetlistBuilder b(name);
    b.default_chirality(k19);
    b.rail("gnd", Trit{0});
    b.rail("vdd", Trit{2});
    b.input("x");
    b.output("y", std::nullopt);
    inverter(b, "M", "x", "y", p_chir, n_chir);
    return b.build();
}

std::vector<Trit> row(int a, int b)
{
    return {Trit{a}, Trit{b}};
}

}  // namespace

Netlist build_nti()
{
    return static_inverter("nti", k10, k19);
}

Netlist build_pti()
{
    return static_inverter("pti", k19, k10);
}

Netlist build_tha()
{
    NetlistBuilder b("tha");
    b.source("dynamic ternary half adder, sum and carry generators");
    b.default_chirality(k19);
    b.rail("gnd", Trit{0});
    b.rail("half", Trit{1});
    b.rail("vdd", Trit{2});
    b.clock("clk");
    b.input("a");
    b.input("b");
    b.output("sum", Trit{1});
    b.output("carry", Trit{0});
    for (const char* n : {"a_nti", "a_pti", "b_nti", "b_pti", "vgs", "vvs", "vhc", "s1", "s2", "s3", "s4", "s5",
                          "s6", "s7", "s8", "s9", "s10", "c1", "c2", "c3", "c4"}) {
        b.node(n);
    }
    add(b, {
               // sum
               {"C1", P, "clk", "sum", "half", std::nullopt, Role::Precharge},
               {"C2", N, "a_nti", "sum", "s1"},
               {"C3", P, "a", "sum", "s2", k10},
               {"C4", N, "a", "sum", "s6"},
               {"C5", N, "a", "sum", "s3"},
               {"C6", N, "a_pti", "s6", "s7"},
               {"C7", P, "a", "s3", "s4"},
               {"C8", P, "a_pti", "sum", "s9"},
               {"C9", N, "a", "sum", "s8", k10},
               {"C10", N, "b_nti", "s1", "vgs"},
               {"C11", N, "b", "s2", "vvs", k10},
               {"C12", N, "b", "s4", "s5"},
               {"C13", P, "b", "s5", "vvs"},
               {"C14", P, "b_pti", "s7", "vgs"},
               {"C15", P, "b", "s8", "vvs", k10},
               {"C16", N, "b", "s9", "s10"},
               {"C17", N, "b_pti", "s10", "vgs"},
               {"C18", N, "clk", "vgs", "gnd", std::nullopt, Role::Evaluate},
               {"C19", P, "clk", "vvs", "vdd", std::nullopt, Role::Evaluate},
               // carry
               {"C20", N, "clk", "carry", "gnd", std::nullopt, Role::Precharge},
               {"C21", N, "a", "carry", "c1"},
               {"C22", P, "a", "c1", "c2"},
               {"C23", N, "a", "carry", "c3", k10},
               {"C24", N, "b", "c2", "vhc", k10},
               {"C25", N, "b", "c3", "c4"},
               {"C26", P, "b", "c4", "vhc"},
               {"C27", P, "b_pti", "c3", "vhc"},
               {"FC", N, "clk", "vhc", "half", std::nullopt, Role::Evaluate},
           });
    inverter(b, "NTIA", "a", "a_nti", k10, k19);
    inverter(b, "PTIA", "a", "a_pti", k19, k10);
    inverter(b, "NTIB", "b", "b_nti", k10, k19);
    inverter(b, "PTIB", "b", "b_pti", k19, k10);
    return b.build();
}

Netlist build_tmul()
{
    NetlistBuilder b("tmul");
    b.source("dynamic ternary 1-trit multiplier, product and carry generators");
    b.default_chirality(k28);
    b.rail("gnd", Trit{0});
    b.rail("half", Trit{1});
    b.rail("vdd", Trit{2});
    b.clock("clk");
    b.input("a");
    b.input("b");
    b.output("prod", Trit{0});
    b.output("carry", Trit{0});
    for (const char* n : {"a_pti", "b_pti", "bc_pti", "vhp", "vvp", "vhc", "p1", "p2", "p3", "p4", "p5", "p6", "p7",
                          "p8", "q1"}) {
        b.node(n);
    }
    add(b, {
               // product
               {"C1", N, "clk", "prod", "gnd", k19, Role::Precharge},
               {"C2", P, "a_pti", "prod", "p1"},
               {"C3", P, "b_pti", "p1", "vhp"},
               {"C4", N, "a", "prod", "p2"},
               {"C5", P, "a", "p2", "p3"},
               {"C6", N, "b", "p3", "p4"},
               {"C7", P, "b", "p4", "vhp"},
               {"C8", N, "clk", "vhp", "half", std::nullopt, Role::Evaluate},
               {"C9", N, "a", "prod", "p5", k10},
               {"C10", N, "b", "p5", "p6"},
               {"C11", N, "b_pti", "p6", "vvp"},
               {"C12", N, "a", "prod", "p7"},
               {"C13", N, "a_pti", "p7", "p8"},
               {"C14", N, "b", "p8", "vvp", k10},
               {"C15", P, "clk", "vvp", "vdd", std::nullopt, Role::Evaluate},
               // carry
               {"C16", N, "clk", "carry", "gnd", k19, Role::Precharge},
               {"C17", N, "a", "carry", "q1", k10},
               {"C18", P, "bc_pti", "q1", "vhc"},
               {"FC", N, "clk", "vhc", "half", std::nullopt, Role::Evaluate},
           });
    inverter(b, "PTIA", "a", "a_pti", k28, k10);
    inverter(b, "PTIB", "b", "b_pti", k28, k10);
    inverter(b, "PTIBC", "b", "bc_pti", k28, k10);
    return b.build();
}

const std::vector<std::string>& builtin_names()
{
    static const std::vector<std::string> names{"nti", "pti", "tha", "tmul"};
    return names;
}

std::optional<Netlist> builtin_netlist(std::string_view name)
{
    if (name == "nti") return build_nti();
    if (name == "pti") return build_pti();
    if (name == "tha") return build_tha();
    if (name == "tmul") return build_tmul();
    return std::nullopt;
}

std::optional<CellReference> builtin_reference(std::string_view name)
{
    CellReference ref;
    ref.cell = std::string(name);
    if (name == "nti" || name == "pti") {
        ref.arity = 1;
        if (name == "nti") ref.eval = [](std::span<const Trit> in) { return std::vector<Trit>{nti(in[0])}; };
        else ref.eval = [](std::span<const Trit> in) { return std::vector<Trit>{pti(in[0])}; };
        return ref;
    }
    if (name == "tha") {
        ref.eval = [](std::span<const Trit> in) {
            const auto r = tha_ref(in[0], in[1]);
            return std::vector<Trit>{r.value, r.carry};
        };
        ref.on_paths = {
            {row(0, 0), {"C2", "C10", "C20"}},
            {row(0, 1), {"C1", "C20"}},
            {row(0, 2), {"C3", "C11", "C20"}},
            {row(1, 0), {"C1", "C20"}},
            {row(1, 1), {"C5", "C7", "C12", "C13", "C20"}},
            {row(1, 2), {"C4", "C6", "C14", "C21", "C22", "C24"}},
            {row(2, 0), {"C9", "C15", "C20"}},
            {row(2, 1), {"C8", "C16", "C17", "C23", "C25", "C26"}},
            {row(2, 2), {"C1", "C23", "C27"}},
        };
        return ref;
    }
    if (name == "tmul") {
        ref.eval = [](std::span<const Trit> in) {
            const auto r = tmul_ref(in[0], in[1]);
            return std::vector<Trit>{r.value, r.carry};
        };
        ref.on_paths = {
            {row(0, 0), {"C1", "C16"}},
            {row(0, 1), {"C1", "C16"}},
            {row(0, 2), {"C1", "C16"}},
            {row(1, 0), {"C1", "C16"}},
            {row(1, 1), {"C4", "C5", "C6", "C7", "C16"}},
            {row(1, 2), {"C12", "C13", "C14", "C16"}},
            {row(2, 0), {"C1", "C16"}},
            {row(2, 1), {"C9", "C10", "C11", "C16"}},
            {row(2, 2), {"C2", "C3", "C17", "C18"}},
        };
        return ref;
    }
    return std::nullopt;
}

}  // namespace tcnfet
