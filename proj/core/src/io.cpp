#include "n2coset/io.hpp"

#include <nlohmann/json.hpp>

namespace n2coset {

using nlohmann::json;

namespace {

Family family_from_name(const std::string& s) {
    if (s == "L") return Family::L;
    if (s == "D+") return Family::DPlus;
    if (s == "D-") return Family::DMinus;
    if (s == "E") return Family::ETypical;
    if (s == "E+") return Family::EPlus;
    if (s == "E-") return Family::EMinus;
    if (s == "S") return Family::Staggered;
    if (s == "GH") return Family::GhostSector;
    if (s == "F") return Family::FockMomentum;
    if (s == "VIR") return Family::VirKac;
    throw MathError(Errc::BadInput, "unknown family name: " + s);
}

Algebra algebra_from_name(const std::string& s) {
    if (s == "N2") return Algebra::N2;
    if (s == "SL2") return Algebra::SL2;
    if (s == "GH") return Algebra::Ghost;
    if (s == "FOCK") return Algebra::Fock;
    if (s == "VIR") return Algebra::Virasoro;
    throw MathError(Errc::BadInput, "unknown algebra name: " + s);
}

}  // namespace

std::string series_to_json(const Series2& s) {
    json out;
    out["Dz"] = s.dz();
    out["Dq"] = s.dq();
    out["q_order"] = rational_str(s.q_order());
    json terms = json::array();
    for (const auto& [q, level] : s.table())
        for (const auto& [z, c] : level) {
            json term;
            term["q"] = rational_str(rat(q, s.dq()));
            term["z"] = rational_str(rat(z, s.dz()));
            term["c"] = c.get_str();
            terms.push_back(std::move(term));
        }
    out["terms"] = std::move(terms);
    return out.dump();
}

Series2 series_from_json(const std::string& text) {
    json in = json::parse(text);
    Series2 s = Series2::zero(parse_rational(in.at("q_order").get<std::string>()));
    s.ensure_lattice(in.at("Dz").get<long>(), in.at("Dq").get<long>());
    for (const auto& term : in.at("terms")) {
        Rational q = parse_rational(term.at("q").get<std::string>());
        Rational z = parse_rational(term.at("z").get<std::string>());
        Int c(term.at("c").get<std::string>());
        s.add_term(q, z, c);
    }
    return s;
}

std::string label_to_json(const ModuleLabel& l) {
    json out;
    out["algebra"] = algebra_name(l.algebra);
    out["family"] = family_name(l.family);
    out["i"] = l.i;
    out["p"] = rational_str(l.p);
    out["r"] = l.r;
    out["s"] = l.s;
    out["lambda"] = rational_str(l.lambda);
    out["flow"] = l.flow;
    out["parity"] = l.parity == Parity::Even ? "even" : "odd";
    return out.dump();
}

ModuleLabel label_from_json(const std::string& text) {
    json in = json::parse(text);
    ModuleLabel l;
    l.algebra = algebra_from_name(in.at("algebra").get<std::string>());
    l.family = family_from_name(in.at("family").get<std::string>());
    l.i = in.at("i").get<long>();
    l.p = parse_rational(in.at("p").get<std::string>());
    l.r = in.at("r").get<long>();
    l.s = in.at("s").get<long>();
    l.lambda = parse_rational(in.at("lambda").get<std::string>());
    l.flow = in.at("flow").get<long>();
    l.parity = in.at("parity").get<std::string>() == "odd" ? Parity::Odd : Parity::Even;
    return l;
}

std::string groth_to_json(const GrothVector& g) {
    json arr = json::array();
    for (const auto& [l, mult] : g.terms) {
        json item;
        item["label"] = json::parse(label_to_json(l));
        item["mult"] = mult;
        arr.push_back(std::move(item));
    }
    return arr.dump();
}

std::string fusion_result_to_json(const FusionResult& f) {
    json out;
    out["exact"] = f.exact ? json::parse(groth_to_json(*f.exact)) : json(nullptr);
    out["grothendieck"] = json::parse(groth_to_json(f.grothendieck));
    out["conjectural"] = f.conjectural;
    return out.dump();
}

std::string report_to_json(const CheckReport& r) {
    json out;
    out["check"] = r.check;
    out["labels"] = r.labels;
    out["q_order"] = rational_str(r.q_order);
    out["status"] = r.pass ? "pass" : "fail";
    if (r.first_discrepancy) {
        json d;
        d["where"] = r.first_discrepancy->where;
        d["q"] = rational_str(r.first_discrepancy->q_exp);
        d["z"] = rational_str(r.first_discrepancy->z_exp);
        d["expected"] = r.first_discrepancy->expected;
        d["got"] = r.first_discrepancy->got;
        out["first_discrepancy"] = std::move(d);
    } else {
        out["first_discrepancy"] = nullptr;
    }
    out["notes"] = r.notes;
    return out.dump();
}

ModuleLabel parse_label(const std::string& spec) {
    auto fail = [&](std::size_t pos, const std::string& msg) {
        throw MathError(Errc::BadInput,
                        "label parse error at position " + std::to_string(pos) + ": " + msg + " in '" + spec + "'");
    };
    auto colon = spec.find(':');
    if (colon == std::string::npos) fail(spec.size(), "expected ':' after the algebra name");
    std::string alg = spec.substr(0, colon);
    ModuleLabel l;
    l.algebra = algebra_from_name(alg);
    std::string rest = spec.substr(colon + 1);
    if (l.algebra == Algebra::Ghost) {
        l.family = Family::GhostSector;
        try {
            l.i = std::stol(rest);
        } catch (...) {
            fail(colon + 1, "expected a ghost sector index 0..3");
        }
        return l;
    }
    if (l.algebra == Algebra::Fock) {
        l.family = Family::FockMomentum;
        try {
            l.p = parse_rational(rest);
        } catch (...) {
            fail(colon + 1, "expected a rational momentum");
        }
        return l;
    }
    auto bracket = rest.find('[');
    if (bracket == std::string::npos || rest.back() != ']')
        fail(colon + 1 + (bracket == std::string::npos ? rest.size() : bracket),
             "expected FAMILY[key=value,...]");
    l.family = family_from_name(rest.substr(0, bracket));
    std::string body = rest.substr(bracket + 1, rest.size() - bracket - 2);
    std::size_t base = colon + 1 + bracket + 1;
    std::size_t pos = 0;
    while (pos < body.size()) {
        auto comma = body.find(',', pos);
        std::string kv = body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        auto eq = kv.find('=');
        if (eq == std::string::npos) fail(base + pos, "expected key=value");
        std::string key = kv.substr(0, eq);
        std::string val = kv.substr(eq + 1);
        try {
            if (key == "i")
                l.i = std::stol(val);
            else if (key == "p")
                l.p = parse_rational(val);
            else if (key == "r")
                l.r = std::stol(val);
            else if (key == "s")
                l.s = std::stol(val);
            else if (key == "lambda")
                l.lambda = parse_rational(val);
            else if (key == "flow")
                l.flow = std::stol(val);
            else
                fail(base + pos, "unknown key '" + key + "'");
        } catch (const MathError&) {
            throw;
        } catch (...) {
            fail(base + pos + eq + 1, "bad value for '" + key + "'");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (l.algebra == Algebra::N2 && l.family == Family::ETypical) l.lambda = rat_mod(l.p - imod(l.i, 4), Rational(2));
    return l;
}

}  // namespace n2coset
