#include "rcrt/serialization.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace rcrt {

namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kVersion = "rcrt-design/1";

}  // namespace

std::string rational_decimal(const Rat& r, int digits) {
    if (digits < 0) throw DomainError("rational_decimal: digits must be nonnegative");
    Int num = rat_num(r);
    Int den = rat_den(r);
    std::string sign;
    if (num < 0) {
        sign = "-";
        num = -num;
    }
    Int whole = num / den;
    Int rem = num % den;
    std::string out = sign + whole.str();
    if (rem == 0 || digits == 0) return out;
    std::string frac;
    for (int i = 0; i < digits && rem != 0; ++i) {
        rem *= 10;
        frac += Int(rem / den).str();
        rem %= den;
    }
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    if (frac.empty()) return out;
    return out + "." + frac;
}

Rat parse_rational(const std::string& text) {
    const auto first = text.find_first_not_of(" \t");
    const auto last = text.find_last_not_of(" \t");
    if (first == std::string::npos) throw DomainError("parse_rational: empty input");
    std::string s = text.substr(first, last - first + 1);
    if (!s.empty() && s.front() == '+') s.erase(s.begin());
    try {
        const auto slash = s.find('/');
        if (slash != std::string::npos) {
            Int num(s.substr(0, slash));
            Int den(s.substr(slash + 1));
            if (den == 0) throw DomainError("parse_rational: zero denominator");
            return Rat(num, den);
        }
        const auto dot = s.find('.');
        if (dot != std::string::npos) {
            bool negative = !s.empty() && s.front() == '-';
            std::string head = s.substr(0, dot);
            std::string tail = s.substr(dot + 1);
            if (tail.find_first_not_of("0123456789") != std::string::npos)
                throw DomainError("parse_rational: malformed decimal");
            Int whole(head.empty() || head == "-" || head == "+" ? "0" : head);
            Int scale = 1;
            for (size_t i = 0; i < tail.size(); ++i) scale *= 10;
            Int frac = tail.empty() ? Int(0) : Int(tail);
            Rat magnitude = Rat(abs(whole)) + Rat(frac, scale);
            return negative ? -magnitude : magnitude;
        }
        return Rat(Int(s));
    } catch (const DomainError&) {
        throw;
    } catch (const std::exception&) {
        throw DomainError("parse_rational: cannot parse '" + text + "'");
    }
}

namespace {

Json rat_to_json(const Rat& r) {
    return Json{{"num", rat_num(r).str()},
                {"den", rat_den(r).str()},
                {"decimal", rational_decimal(r)}};
}

Rat rat_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("num") || !j.contains("den"))
        throw DomainError("design file: malformed rational field");
    Int num(j.at("num").get<std::string>());
    Int den(j.at("den").get<std::string>());
    if (den == 0) throw DomainError("design file: rational with zero denominator");
    return Rat(num, den);
}

Json flat_to_json(const ModuliSet& set) {
    Json j;
    j["version"] = kVersion;
    j["kind"] = "flat";
    Json gs = Json::array();
    for (const auto& g : set.gammas) gs.push_back(g.str());
    j["gammas"] = gs;
    j["rho"] = rat_to_json(set.rho);
    j["m_max"] = rat_to_json(set.m_max);
    j["m"] = rat_to_json(set.m);
    j["P"] = rat_to_json(set.P);
    j["tau"] = rat_to_json(set.tau);
    j["case_label"] = set.case_label;
    return j;
}

Json layered_to_json(const LayeredDesign& d) {
    Json j;
    j["version"] = kVersion;
    j["kind"] = "layered";
    j["gamma1"] = d.gamma1.str();
    j["gamma2"] = d.gamma2.str();
    j["m"] = rat_to_json(d.m);
    j["K"] = d.K;
    Json chain = Json::array();
    for (const auto& s : d.chain.sigma) chain.push_back(s.str());
    j["chain"] = chain;
    Json bps = Json::array();
    for (const auto& p : d.breakpoints) bps.push_back(rat_to_json(p));
    j["breakpoints"] = bps;
    Json taus = Json::array();
    for (const auto& t : d.tolerances) taus.push_back(rat_to_json(t));
    j["tolerances"] = taus;
    if (d.d) j["d"] = d.d->str();
    if (d.zeta) j["zeta"] = d.zeta->str();
    if (d.rho) j["rho"] = rat_to_json(*d.rho);
    return j;
}

ModuliSet flat_from_json(const Json& j) {
    ModuliSet set;
    for (const auto& g : j.at("gammas")) set.gammas.emplace_back(g.get<std::string>());
    set.rho = rat_from_json(j.at("rho"));
    set.m_max = rat_from_json(j.at("m_max"));
    set.m = rat_from_json(j.at("m"));
    set.P = rat_from_json(j.at("P"));
    set.tau = rat_from_json(j.at("tau"));
    set.case_label = j.at("case_label").get<std::string>();

    if (!flat_feasible(set.gammas, set.rho))
        throw DomainError("design file: flat set violates feasibility");
    Rat prod = 1;
    for (const auto& g : set.gammas) prod *= Rat(g);
    if (set.m_max != set.m * Rat(set.gammas.back()) || set.P != set.m * prod ||
        set.tau != set.m / 4)
        throw DomainError("design file: inconsistent flat design fields");
    return set;
}

LayeredDesign layered_from_json(const Json& j) {
    Int g1(j.at("gamma1").get<std::string>());
    Int g2(j.at("gamma2").get<std::string>());
    Rat m = rat_from_json(j.at("m"));
    std::optional<Rat> rho;
    if (j.contains("rho")) rho = rat_from_json(j.at("rho"));

    LayeredDesign d = layered_from_pair(g1, g2, m, rho);

    if (j.contains("K") && j.at("K").get<int>() != d.K)
        throw DomainError("design file: stored K disagrees with the remainder chain");
    if (j.contains("chain")) {
        const auto& chain = j.at("chain");
        if (chain.size() != d.chain.sigma.size())
            throw DomainError("design file: stored chain disagrees");
        for (size_t i = 0; i < d.chain.sigma.size(); ++i)
            if (Int(chain[i].get<std::string>()) != d.chain.sigma[i])
                throw DomainError("design file: stored chain disagrees");
    }
    if (j.contains("breakpoints")) {
        const auto& bps = j.at("breakpoints");
        if (bps.size() != d.breakpoints.size())
            throw DomainError("design file: stored breakpoints disagree");
        for (size_t i = 0; i < d.breakpoints.size(); ++i)
            if (rat_from_json(bps[i]) != d.breakpoints[i])
                throw DomainError("design file: stored breakpoints disagree");
    }
    bool has_d = j.contains("d");
    bool has_zeta = j.contains("zeta");
    if (has_d != has_zeta) throw DomainError("design file: d and zeta must appear together");
    if (has_d) {
        if (!d.d || Int(j.at("d").get<std::string>()) != *d.d ||
            Int(j.at("zeta").get<std::string>()) != *d.zeta)
            throw DomainError("design file: seed metadata disagrees with the pair");
    } else {
        d.d.reset();
        d.zeta.reset();
    }
    return d;
}

}  // namespace

std::string design_to_json(const AnyDesign& design) {
    Json j = std::holds_alternative<ModuliSet>(design)
                 ? flat_to_json(std::get<ModuliSet>(design))
                 : layered_to_json(std::get<LayeredDesign>(design));
    return j.dump(2) + "\n";
}

AnyDesign design_from_json(const std::string& json_text) {
    Json j;
    try {
        j = Json::parse(json_text);
    } catch (const std::exception& e) {
        throw DomainError(std::string("design file: invalid JSON: ") + e.what());
    }
    try {
        if (!j.contains("version") || j.at("version").get<std::string>() != kVersion)
            throw DomainError("design file: unsupported version");
        const std::string kind = j.at("kind").get<std::string>();
        if (kind == "flat") return flat_from_json(j);
        if (kind == "layered") return layered_from_json(j);
        throw DomainError("design file: unknown kind '" + kind + "'");
    } catch (const DomainError&) {
        throw;
    } catch (const std::exception& e) {
        throw DomainError(std::string("design file: malformed content: ") + e.what());
    }
}

void save_design(const AnyDesign& design, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DomainError("save_design: cannot open '" + path + "'");
    out << design_to_json(design);
    if (!out) throw DomainError("save_design: write failed for '" + path + "'");
}

AnyDesign load_design(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("load_design: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return design_from_json(buf.str());
}

}  // namespace rcrt
