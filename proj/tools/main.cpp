#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <complex>
#include <iostream>
#include <sstream>

#include "n2coset/characters.hpp"
#include "n2coset/fusion.hpp"
#include "n2coset/io.hpp"

using namespace n2coset;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitMathGuard = 2;
constexpr int kExitNoRule = 3;
constexpr int kExitUsage = 64;

struct Config {
    long u = 4;
    long v = 1;
    std::string q_order;
    std::string format = "table";
    long y_window = 0;

    MinimalModel model() const { return MinimalModel(u, v); }
    Rational order() const {
        if (!q_order.empty()) return parse_rational(q_order);
        return Rational(v == 1 ? 8 : 6);
    }
    long window() const { return y_window > 0 ? y_window : 2 * u; }
};

std::string cell_str(const HighestWeightData& h) {
    std::ostringstream os;
    os << (h.parity == Parity::Even ? "+" : "-") << ";" << rational_str(h.j) << ";" << rational_str(h.delta);
    return os.str();
}

int render_kac(const Config& cfg, bool reduced) {
    KacTable kt = kac_table(cfg.u);
    const auto& table = reduced ? kt.reduced : kt.full;
    if (cfg.format == "json") {
        json out;
        out["u"] = cfg.u;
        out["reduced"] = reduced;
        json cells = json::array();
        for (const auto& [key, h] : table) {
            json c;
            c["r"] = key.first;
            c["p"] = key.second;
            c["parity"] = h.parity == Parity::Even ? "+" : "-";
            c["j"] = rational_str(h.j);
            c["delta"] = rational_str(h.delta);
            c["sector"] = h.sector == Sector::NS ? "NS" : "R";
            cells.push_back(std::move(c));
        }
        out["cells"] = std::move(cells);
        std::cout << out.dump(2) << "\n";
        return kExitOk;
    }
    long pmin = 0, pmax = 0;
    for (const auto& [key, h] : table) {
        pmin = std::min(pmin, key.second);
        pmax = std::max(pmax, key.second);
    }
    std::cout << "Kac table of M(" << cfg.u << ",1)" << (reduced ? " (reduced)" : "") << "\n";
    std::cout << "cells: parity;j;Delta   (*) marks Ramond cells\n";
    for (long r = 1; r <= cfg.u - 1; ++r) {
        std::cout << "r=" << r << ":";
        for (long p = pmin; p <= pmax; ++p) {
            auto it = table.find({r, p});
            if (it == table.end()) {
                std::cout << "  [p=" << p << ": .]";
                continue;
            }
            std::cout << "  [p=" << p << ": " << cell_str(it->second)
                      << (it->second.sector == Sector::R ? " *" : "") << "]";
        }
        std::cout << "\n";
    }
    return kExitOk;
}

void print_series(const Config& cfg, const Series2& s) {
    if (cfg.format == "json") {
        std::cout << series_to_json(s) << "\n";
        return;
    }
    if (s.is_zero()) {
        std::cout << "0  (to q-order " << rational_str(s.q_order()) << ")\n";
        return;
    }
    for (const auto& [qk, level] : s.table()) {
        std::cout << "q^" << rational_str(rat(qk, s.dq())) << ":";
        bool first = true;
        for (const auto& [zk, c] : level) {
            Rational ze = rat(zk, s.dz());
            std::string cs = c.get_str();
            if (!first && cs[0] != '-') std::cout << " +";
            std::cout << " " << cs;
            if (ze != 0) std::cout << " z^" << rational_str(ze);
            first = false;
        }
        std::cout << "\n";
    }
}

CharMethod method_from_name(const std::string& name) {
    if (name == "residue") return CharMethod::ResidueEG;
    if (name == "appell") return CharMethod::AppellLerch;
    if (name == "resolution") return CharMethod::Resolution;
    if (name == "typical") return CharMethod::Typical;
    if (name == "flow") return CharMethod::SpectralFlowTransport;
    throw MathError(Errc::BadInput, "unknown method '" + name + "'");
}

int run_character(const Config& cfg, const std::string& spec, const std::string& method, bool super) {
    ModuleLabel label = parse_label(spec);
    MinimalModel m = cfg.model();
    Rational N = cfg.order();
    if (label.algebra == Algebra::Ghost) {
        print_series(cfg, char_ghost(label.i, super, N));
        return kExitOk;
    }
    if (label.algebra == Algebra::Fock) {
        print_series(cfg, char_fock(label.p, m.t(), N));
        return kExitOk;
    }
    if (label.algebra == Algebra::SL2) {
        AnnulusRegime regime = label.family == Family::DPlus ? AnnulusRegime::OuterAnnulus
                                                             : AnnulusRegime::InnerAnnulus;
        CharKind ck = char_sl2(m, label, regime, N, cfg.window() + 8);
        if (ck.is_delta()) {
            const DeltaChar& d = ck.delta();
            std::cout << "delta-comb character: z^" << rational_str(d.z_prefactor_exp) << " * delta(z^"
                      << rational_str(d.z_coset_step) << ") * f(q), f =\n";
            print_series(cfg, d.qseries);
        } else {
            print_series(cfg, ck.series());
        }
        return kExitOk;
    }
    CharMethod meth = CharMethod::AppellLerch;
    if (!method.empty())
        meth = method_from_name(method);
    else if (label.family == Family::ETypical || label.family == Family::EPlus ||
             label.family == Family::EMinus)
        meth = CharMethod::Typical;
    print_series(cfg, char_n2(m, label, meth, super, N));
    return kExitOk;
}

int run_fuse(const Config& cfg, const std::string& aspec, const std::string& bspec, bool grothendieck) {
    MinimalModel m = cfg.model();
    ModuleLabel a = parse_label(aspec), b = parse_label(bspec);
    if (grothendieck) {
        FusionResult res;
        res.exact = std::nullopt;
        res.grothendieck = m.unitary() ? fuse_unitary(m, a, b).grothendieck : groth_fuse_n2(m, a, b);
        res.conjectural = false;
        if (cfg.format == "json")
            std::cout << fusion_result_to_json(res) << "\n";
        else
            std::cout << groth_str(res.grothendieck) << "\n";
        return kExitOk;
    }
    FusionResult res = fuse_exact(m, a, b);
    if (cfg.format == "json") {
        std::cout << fusion_result_to_json(res) << "\n";
    } else {
        std::cout << "exact:        " << (res.exact ? groth_str(*res.exact) : std::string("-")) << "\n";
        std::cout << "grothendieck: " << groth_str(res.grothendieck) << "\n";
        if (res.conjectural) std::cout << "(conjectural)\n";
    }
    return kExitOk;
}

void emit_report(const Config& cfg, const CheckReport& rep, bool& all_pass) {
    if (!rep.pass) all_pass = false;
    if (cfg.format == "json") {
        std::cout << report_to_json(rep) << "\n";
    } else {
        std::cout << (rep.pass ? "PASS " : "FAIL ") << rep.check << " [" << rep.labels << "] q-order "
                  << rational_str(rep.q_order) << "\n";
        if (!rep.pass && rep.first_discrepancy)
            std::cout << "  first discrepancy at q^" << rational_str(rep.first_discrepancy->q_exp) << " z^"
                      << rational_str(rep.first_discrepancy->z_exp) << ": expected "
                      << rep.first_discrepancy->expected << ", got " << rep.first_discrepancy->got << "\n";
    }
}

int run_verify(const Config& cfg, const std::string& suite) {
    MinimalModel m = cfg.model();
    Rational N = cfg.order();
    bool all_pass = true;
    if (suite == "branching") {
        if (m.unitary()) {
            for (long r = 1; r <= m.u - 1; ++r)
                for (long i = 0; i < 4; ++i)
                    for (bool super : {false, true})
                        emit_report(cfg, branch_verify(m, sl2_L(r), i, super, N, cfg.window()), all_pass);
        } else {
            for (long r = 1; r <= m.u - 1; ++r)
                for (long i : {0L, 1L})
                    for (bool super : {false, true})
                        emit_report(cfg, branch_verify(m, sl2_L(r), i, super, N, cfg.window()), all_pass);
            for (long r = 1; r <= m.u - 1; ++r)
                for (long s = 1; s <= m.v - 1; ++s)
                    for (long i : {0L, 1L})
                        for (bool super : {false, true})
                            emit_report(cfg, branch_verify(m, sl2_D(r, s, true), i, super, N, cfg.window()),
                                        all_pass);
        }
    } else if (suite == "ses") {
        if (m.unitary()) throw MathError(Errc::LabelOutOfRange, "the ses suite needs v >= 2");
        for (long r = 1; r <= m.u - 1; ++r)
            for (long s = 1; s <= m.v - 1; ++s)
                for (bool plus : {true, false})
                    for (long i : {0L, 1L}) {
                        Rational lam = Rational(r - 1) - m.t() * s;
                        if (!plus) lam = Rational(m.u - r - 1) - m.t() * (m.v - s);
                        emit_report(cfg, ses_char_check(m, n2_Epm(i, lam + i, r, s, plus), N), all_pass);
                    }
    } else if (suite == "magic") {
        std::vector<MagicSample> plain = {
            {{0.1, 0.0}, {0.4, 0.0}, {0.25, 0.0}},   {{0.1, 0.0}, {0.5, 0.1}, {0.3, 0.0}},
            {{0.05, 0.02}, {0.35, 0.0}, {0.2, 0.1}}, {{0.12, 0.0}, {0.6, 0.0}, {-0.22, 0.0}},
            {{0.08, 0.0}, {0.3, -0.1}, {0.4, 0.05}},
        };
        std::vector<MagicSample> primed = {
            {{0.1, 0.0}, {2.0, 0.0}, {0.25, 0.0}},  {{0.1, 0.0}, {3.0, 0.2}, {0.3, 0.0}},
            {{0.05, 0.0}, {4.0, 0.0}, {0.2, 0.1}},  {{0.12, 0.0}, {1.8, 0.0}, {-0.22, 0.0}},
            {{0.08, 0.02}, {2.5, 0.0}, {0.4, 0.0}},
        };
        emit_report(cfg, magic_check(plain, 60, 1e-9), all_pass);
        emit_report(cfg, magic_check(primed, 60, 1e-9), all_pass);
    } else if (suite == "ring") {
        Rational window = m.unitary() ? Rational(2 * m.u) : 4 * m.t();
        auto labels = ring_label_set(m, window);
        RingReport rr = ring_check(m, labels, m.unitary(), window);
        CheckReport rep;
        rep.check = m.unitary() ? "ring-exact" : "ring-grothendieck";
        rep.labels = "M(" + std::to_string(m.u) + "," + std::to_string(m.v) + "), " +
                     std::to_string(labels.size()) + " labels";
        rep.pass = rr.pass;
        rep.notes.push_back("pairs " + std::to_string(rr.pairs_checked) + ", triples " +
                            std::to_string(rr.triples_checked) + ", out-of-window products " +
                            std::to_string(rr.out_of_window));
        for (const auto& f : rr.failures) rep.notes.push_back(f);
        emit_report(cfg, rep, all_pass);
    } else if (suite == "crossmethod") {
        if (m.unitary()) {
            for (long r = 1; r <= m.u - 1; ++r)
                for (long p = -r; p <= 2 * m.u - r - 1; ++p)
                    for (long i = 0; i < 4; ++i) {
                        if (imod(p - (i + r - 1), 2) != 0) continue;
                        for (bool super : {false, true}) {
                            CheckReport rep;
                            rep.check = super ? "crossmethod-super" : "crossmethod";
                            ModuleLabel l = n2_L(i, Rational(p), r);
                            rep.labels = label_str(l);
                            rep.q_order = N;
                            Series2 lhs = char_n2(m, l, CharMethod::ResidueEG, super, N);
                            Series2 rhs = char_n2(m, l, CharMethod::AppellLerch, super, N);
                            compare_series("residue-vs-appell", lhs, rhs, N, rep);
                            emit_report(cfg, rep, all_pass);
                        }
                    }
        } else {
            bool kneg = m.level() < 0;
            for (long r = 1; r <= m.u - 1; ++r)
                for (long i : {0L, 1L}) {
                    ModuleLabel l = n2_L(i, Rational(r - 1 + i), r);
                    CheckReport rep;
                    rep.check = "crossmethod-resolution";
                    rep.labels = label_str(l);
                    rep.q_order = N;
                    Series2 al = char_n2(m, l, CharMethod::AppellLerch, false, N);
                    if (kneg) {
                        Rational zw = al.max_abs_z_exponent() + 2;
                        Series2 res = char_n2_resolution(m, l, false, N, zw);
                        compare_series("resolution-vs-appell", res, al.z_windowed(zw), N, rep);
                    } else {
                        try {
                            char_n2(m, l, CharMethod::Resolution, false, N);
                            rep.pass = false;
                            rep.notes.push_back("expected DivergentResolution for k > 0");
                        } catch (const MathError& e) {
                            if (e.code() != Errc::DivergentResolution) throw;
                            rep.notes.push_back("DivergentResolution raised as expected; Appell-Lerch converges");
                        }
                    }
                    emit_report(cfg, rep, all_pass);
                }
        }
    } else if (suite == "orbits") {
        auto orbs = orbits(cfg.u);
        std::vector<long> lengths;
        long total = 0;
        for (const auto& o : orbs) {
            lengths.push_back(o.length);
            total += o.length;
        }
        std::sort(lengths.begin(), lengths.end());
        CheckReport rep;
        rep.check = "orbits";
        rep.labels = "u=" + std::to_string(cfg.u);
        long u = cfg.u;
        std::vector<long> expect;
        if (u % 4 == 0)
            expect.assign(u - 1, 2 * u);
        else if (u % 2 == 0) {
            expect.assign(u - 2, 2 * u);
            expect.push_back(u);
            expect.push_back(u);
        } else
            expect.assign((u - 1) / 2, 4 * u);
        std::sort(expect.begin(), expect.end());
        rep.pass = (lengths == expect) && (total == 2 * u * (u - 1));
        std::ostringstream os;
        os << "orbits " << orbs.size() << ", lengths";
        for (long L : lengths) os << " " << L;
        rep.notes.push_back(os.str());
        emit_report(cfg, rep, all_pass);
    } else {
        throw MathError(Errc::BadInput, "unknown suite '" + suite + "'");
    }
    return all_pass ? kExitOk : kExitMathGuard;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact symbolic calculator for the N=2 superconformal minimal models"};
    app.require_subcommand(1);
    app.fallthrough();  // model flags may follow the subcommand

    Config cfg;
    app.add_option("--u", cfg.u, "model parameter u (>= 2)");
    app.add_option("--v", cfg.v, "model parameter v (>= 1, coprime to u)");
    app.add_option("--q-order", cfg.q_order, "truncation order as num/den (default 8 for v=1, 6 otherwise)");
    app.add_option("--format", cfg.format, "output format: table | json")
        ->check(CLI::IsMember({"table", "json"}));
    app.add_option("--y-window", cfg.y_window, "Fock-momentum window for the branching checks (default 2u)");

    auto* kac = app.add_subcommand("kac", "print the Kac table of M(u,1)");
    bool reduced = false;
    kac->add_flag("--reduced", reduced, "fold by the Kac symmetry");

    auto* character = app.add_subcommand("character", "print a module (super)character");
    std::string label_spec, method;
    bool super = false;
    character->add_option("label", label_spec, "label, e.g. N2:L[i=0,p=0,r=1]")->required();
    character->add_option("--method", method, "residue | appell | resolution | typical | flow");
    character->add_flag("--super", super, "supercharacter");

    auto* fusecmd = app.add_subcommand("fuse", "fusion product of two labels");
    std::string aspec, bspec;
    bool grothendieck = false;
    fusecmd->add_option("a", aspec, "first label")->required();
    fusecmd->add_option("b", bspec, "second label")->required();
    fusecmd->add_flag("--grothendieck", grothendieck, "Grothendieck product only");

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    std::string suite;
    verify->add_option("--suite", suite, "branching | ses | magic | ring | crossmethod | orbits")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (cfg.u < 2 || cfg.v < 1 || std::gcd(cfg.u, cfg.v) != 1) {
            std::cerr << "usage error: need u >= 2, v >= 1 and gcd(u, v) = 1\n";
            return kExitUsage;
        }
        if (kac->parsed()) return render_kac(cfg, reduced);
        if (character->parsed()) return run_character(cfg, label_spec, method, super);
        if (fusecmd->parsed()) return run_fuse(cfg, aspec, bspec, grothendieck);
        if (verify->parsed()) return run_verify(cfg, suite);
        return kExitUsage;
    } catch (const MathError& e) {
        std::cerr << "error: " << e.what() << "\n";
        if (e.code() == Errc::NoKnownExactRule) return kExitNoRule;
        if (e.code() == Errc::BadInput) return kExitUsage;
        return kExitMathGuard;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}
