// rcrt: moduli design, success prediction, Monte Carlo simulation and
// oracle sweeps for robust remainder-based signal recovery.

#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "rcrt/codec.hpp"
#include "rcrt/serialization.hpp"
#include "rcrt/stats.hpp"

using namespace rcrt;

namespace {

int g_precision = 12;

std::string fmt_rat(const Rat& r) {
    std::string exact = rat_num(r).str();
    if (rat_den(r) != 1) exact += "/" + rat_den(r).str();
    std::string dec = rational_decimal(r, g_precision);
    if (dec == exact) return exact;
    return exact + " (" + dec + ")";
}

std::string fmt_double(double v) {
    std::ostringstream os;
    os.precision(g_precision);
    os << v;
    return os.str();
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        out += c;
        if (c == '"') out += '"';
    }
    out += '"';
    return out;
}

std::string csv_row(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += csv_field(fields[i]);
    }
    return out;
}

std::uint64_t default_seed() {
    const char* env = std::getenv("RCRT_SEED");
    if (!env || !*env) return 12345;
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0') throw DomainError("RCRT_SEED is not an unsigned integer");
    return v;
}

// "kind:param" specs, e.g. rayleigh:360 or gaussian:1. "none" is noiseless.
std::pair<std::string, double> split_spec(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos) return {spec, 0.0};
    std::string kind = spec.substr(0, colon);
    std::string rest = spec.substr(colon + 1);
    try {
        std::size_t used = 0;
        double v = std::stod(rest, &used);
        if (used != rest.size()) throw std::invalid_argument(rest);
        return {kind, v};
    } catch (const std::exception&) {
        throw DomainError("bad numeric parameter in '" + spec + "'");
    }
}

Int parse_int(const std::string& text) {
    Rat r = parse_rational(text);
    if (rat_den(r) != 1) throw DomainError("expected an integer, got '" + text + "'");
    return rat_num(r);
}

SignalPrior parse_prior(const std::string& spec) {
    auto [kind, v] = split_spec(spec);
    if (kind == "uniform") return SignalPrior::uniform(v);
    if (kind == "rayleigh") return SignalPrior::rayleigh(v);
    if (kind == "exponential") return SignalPrior::exponential(v);
    if (kind == "folded-gaussian" || kind == "folded_gaussian")
        return SignalPrior::folded_gaussian(v);
    throw DomainError("unknown prior kind '" + kind +
                      "' (uniform, rayleigh, exponential, folded-gaussian)");
}

NoiseModel parse_noise(const std::string& spec) {
    auto [kind, v] = split_spec(spec);
    if (kind == "none") return NoiseModel::gaussian(0.0);
    if (kind == "gaussian") return NoiseModel::gaussian(v);
    if (kind == "uniform") return NoiseModel::uniform(v);
    throw DomainError("unknown noise kind '" + kind + "' (gaussian, uniform, none)");
}

struct RangeSpec {
    Rat rho;
    std::optional<Rat> m_max;
};

RangeSpec resolve_range(const std::string& rho_text, const std::string& nth_text,
                        const std::string& mmax_text) {
    RangeSpec out;
    if (!mmax_text.empty()) out.m_max = parse_rational(mmax_text);
    if (!rho_text.empty()) {
        out.rho = parse_rational(rho_text);
    } else if (!nth_text.empty()) {
        if (!out.m_max) throw DomainError("--n-th needs --m-max to fix the range ratio");
        out.rho = parse_rational(nth_text) / *out.m_max;
    } else {
        throw DomainError("give either --rho or --n-th with --m-max");
    }
    return out;
}

void print_flat_report(const ModuliSet& set, std::ostream& os) {
    os << "kind = flat\n";
    os << "L = " << set.L() << "\n";
    os << "gammas =";
    for (const auto& g : set.gammas) os << " " << g;
    os << "\n";
    os << "case = " << set.case_label << "\n";
    os << "rho = " << fmt_rat(set.rho) << "\n";
    os << "m_max = " << fmt_rat(set.m_max) << "\n";
    os << "m = " << fmt_rat(set.m) << "\n";
    os << "P = " << fmt_rat(set.P) << "\n";
    os << "tau = " << fmt_rat(set.tau) << "\n";
}

void print_layered_report(const LayeredDesign& d, std::ostream& os) {
    os << "kind = layered\n";
    os << "gamma1 = " << d.gamma1 << "\n";
    os << "gamma2 = " << d.gamma2 << "\n";
    if (d.d) os << "d = " << *d.d << "\n";
    if (d.zeta) os << "zeta = " << *d.zeta << "\n";
    os << "K = " << d.K << "\n";
    os << "chain =";
    for (const auto& s : d.chain.sigma) os << " " << s;
    os << "\n";
    if (d.rho) os << "rho = " << fmt_rat(*d.rho) << "\n";
    os << "m = " << fmt_rat(d.m) << "\n";
    os << "m_max = " << fmt_rat(d.m_max()) << "\n";
    for (std::size_t j = 0; j < d.breakpoints.size(); ++j)
        os << "P_" << (j + 1) << " = " << fmt_rat(d.breakpoints[j]) << "\n";
    for (std::size_t j = 0; j < d.tolerances.size(); ++j)
        os << "tau_" << (j + 1) << " = " << fmt_rat(d.tolerances[j]) << "\n";
    if (d.rho) {
        auto ks = kstar(*d.rho);
        os << "kstar_exact = " << ks.exact << "\n";
        os << "kstar_binet = " << ks.binet << "\n";
    }
}

void emit_staircase(const LayeredDesign& d, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DomainError("cannot open '" + path + "' for writing");
    out << "x,tolerance\n";
    Rat lo(0);
    for (std::size_t j = 0; j < d.breakpoints.size(); ++j) {
        const Rat& hi = d.breakpoints[j];
        Rat mid = (lo + hi) / 2;
        out << csv_row({rational_decimal(lo, g_precision),
                        rational_decimal(d.tolerances[j], g_precision)})
            << "\n";
        out << csv_row({rational_decimal(mid, g_precision),
                        rational_decimal(d.tolerances[j], g_precision)})
            << "\n";
        lo = hi;
    }
}

void print_scaling(const LayeredDesign& d, std::ostream& os) {
    auto rep = scaling_report(d);
    os << "tau_ratios =";
    for (const auto& r : rep.tau_ratios) os << " " << fmt_rat(r);
    os << "\n";
    if (rep.p2_over_p1) os << "P2/P1 = " << fmt_rat(*rep.p2_over_p1) << "\n";
    os << "P1/Pend = " << fmt_rat(rep.p1_over_pK1) << "\n";
    if (rep.pK_over_pK1) os << "PK/Pend = " << fmt_rat(*rep.pK_over_pK1) << "\n";
    os << "two_step_ratios =";
    for (const auto& r : rep.two_step_ratios) os << " " << fmt_rat(r);
    os << "\n";
    if (rep.fib_reference) os << "fib_reference = " << fmt_rat(*rep.fib_reference) << "\n";
    if (rep.seed_reference) os << "seed_reference = " << fmt_rat(*rep.seed_reference) << "\n";
}

// ---------------------------------------------------------------- design-flat

struct FlatArgs {
    int L = 3;
    std::string rho_text, nth_text, mmax_text;
    bool heuristic = false;
    bool baselines = false;
    int truncate = -1;
    std::string out_path, format = "text";
};

int run_design_flat(const FlatArgs& a) {
    auto range = resolve_range(a.rho_text, a.nth_text, a.mmax_text);
    ModuliSet set;
    if (a.heuristic) {
        set = design_flat_heuristic(a.L, range.rho, range.m_max);
    } else if (a.L >= 2 && a.L <= 4) {
        set = design_flat(a.L, range.rho, range.m_max);
    } else {
        throw DomainError("closed forms cover L = 2..4; pass --heuristic for L = 5, 6");
    }
    if (a.truncate >= 0) set = truncate_scale(set, a.truncate);

    if (a.format == "json") {
        std::cout << design_to_json(set) << "\n";
    } else {
        print_flat_report(set, std::cout);
        if (a.baselines) {
            auto cmp = compare_baselines(set.rho, set.m_max);
            std::cout << "baseline_prime_gammas =";
            for (const auto& g : cmp.prime.gammas) std::cout << " " << g;
            std::cout << "\nbaseline_prime_m = " << fmt_rat(cmp.prime.m) << "\n";
            std::cout << "baseline_pow2_gammas =";
            for (const auto& g : cmp.power_of_two.gammas) std::cout << " " << g;
            std::cout << "\nbaseline_pow2_m = " << fmt_rat(cmp.power_of_two.m) << "\n";
            std::cout << "gain_vs_prime = " << fmt_rat(cmp.gain_vs_prime) << "\n";
            std::cout << "gain_vs_pow2 = " << fmt_rat(cmp.gain_vs_power_of_two) << "\n";
        }
    }
    if (!a.out_path.empty()) save_design(set, a.out_path);
    return 0;
}

// ------------------------------------------------------------- design-layered

struct LayeredArgs {
    std::string rho_text, nth_text, mmax_text;
    int K = -1;
    std::string d_text;  // force seed family
    std::string g1_text, g2_text, m_text;
    std::string staircase_path;
    bool scaling = false;
    std::string out_path, format = "text";
};

int run_design_layered(const LayeredArgs& a) {
    LayeredDesign d;
    if (!a.g1_text.empty() || !a.g2_text.empty()) {
        if (a.g1_text.empty() || a.g2_text.empty())
            throw DomainError("--gamma1 and --gamma2 go together");
        Rat m = a.m_text.empty() ? Rat(1) : parse_rational(a.m_text);
        d = layered_from_pair(parse_int(a.g1_text), parse_int(a.g2_text), m);
    } else {
        auto range = resolve_range(a.rho_text, a.nth_text, a.mmax_text);
        if (a.K < 0) throw DomainError("--K is required when designing from --rho");
        if (!a.d_text.empty()) {
            d = layered_candidate(range.rho, a.K, parse_int(a.d_text), range.m_max);
        } else {
            d = design_layered(range.rho, a.K, range.m_max);
        }
    }

    if (a.format == "json") {
        std::cout << design_to_json(d) << "\n";
    } else {
        print_layered_report(d, std::cout);
        if (a.scaling) print_scaling(d, std::cout);
    }
    if (!a.staircase_path.empty()) emit_staircase(d, a.staircase_path);
    if (!a.out_path.empty()) save_design(d, a.out_path);
    return 0;
}

// -------------------------------------------------------------------- predict

struct PredictArgs {
    std::string design_path, prior_spec, noise_spec = "none";
    std::string format = "text";
};

int run_predict(const PredictArgs& a) {
    AnyDesign any = load_design(a.design_path);
    SignalPrior prior = parse_prior(a.prior_spec);
    NoiseModel noise = parse_noise(a.noise_spec);
    SuccessEstimate est = std::holds_alternative<LayeredDesign>(any)
                              ? success_lower_bound(std::get<LayeredDesign>(any), prior, noise)
                              : success_lower_bound(std::get<ModuliSet>(any), prior, noise);

    if (a.format == "json") {
        std::ostringstream os;
        os << "{\"layer_mass\": [";
        for (std::size_t j = 0; j < est.layer_mass.size(); ++j)
            os << (j ? ", " : "") << fmt_double(est.layer_mass[j]);
        os << "], \"layer_pass\": [";
        for (std::size_t j = 0; j < est.layer_pass.size(); ++j)
            os << (j ? ", " : "") << fmt_double(est.layer_pass[j]);
        os << "], \"eta\": " << fmt_double(est.eta) << "}";
        std::cout << os.str() << "\n";
    } else if (a.format == "csv") {
        std::cout << "layer,mass,pass\n";
        for (std::size_t j = 0; j < est.layer_mass.size(); ++j)
            std::cout << csv_row({std::to_string(j + 1), fmt_double(est.layer_mass[j]),
                                  fmt_double(est.layer_pass[j])})
                      << "\n";
        std::cout << "eta," << fmt_double(est.eta) << ",\n";
    } else {
        for (std::size_t j = 0; j < est.layer_mass.size(); ++j)
            std::cout << "layer " << (j + 1) << ": mass = " << fmt_double(est.layer_mass[j])
                      << " pass = " << fmt_double(est.layer_pass[j]) << "\n";
        std::cout << "eta = " << fmt_double(est.eta) << "\n";
    }
    return 0;
}

// ------------------------------------------------------------------- simulate

struct SimulateArgs {
    std::string design_path, prior_spec, noise_spec, sweep_spec;
    long trials = 10000;
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::string protocol = "layered";
    std::string format = "csv";
};

struct SweepPoint {
    std::string param;
    double value = 0.0;
    NoiseModel noise;
};

std::vector<SweepPoint> sweep_points(const SimulateArgs& a) {
    std::vector<SweepPoint> pts;
    if (a.sweep_spec.empty()) {
        NoiseModel noise = parse_noise(a.noise_spec.empty() ? "none" : a.noise_spec);
        std::string name = noise.kind == NoiseKind::Gaussian ? "sigma" : "epsilon";
        pts.push_back({name, noise.param, noise});
        return pts;
    }
    std::istringstream in(a.sweep_spec);
    std::string name, lo_s, hi_s, step_s;
    if (!std::getline(in, name, ':') || !std::getline(in, lo_s, ':') ||
        !std::getline(in, hi_s, ':') || !std::getline(in, step_s))
        throw DomainError("--sweep wants param:lo:hi:step");
    if (name != "sigma" && name != "epsilon")
        throw DomainError("sweep param must be sigma (gaussian) or epsilon (uniform)");
    double lo, hi, step;
    try {
        lo = std::stod(lo_s);
        hi = std::stod(hi_s);
        step = std::stod(step_s);
    } catch (const std::exception&) {
        throw DomainError("bad numeric bounds in --sweep");
    }
    if (step <= 0 || hi < lo) throw DomainError("--sweep needs lo <= hi and step > 0");
    for (double v = lo; v <= hi + step * 0.5; v += step) {
        NoiseModel noise =
            name == "sigma" ? NoiseModel::gaussian(v) : NoiseModel::uniform(v);
        pts.push_back({name, v, noise});
    }
    return pts;
}

int run_simulate(const SimulateArgs& a) {
    AnyDesign any = load_design(a.design_path);
    SignalPrior prior = parse_prior(a.prior_spec);
    Protocol protocol = a.protocol == "flat" ? Protocol::Flat : Protocol::Layered;
    std::uint64_t seed = a.seed_given ? a.seed : default_seed();
    auto pts = sweep_points(a);

    struct Row {
        SweepPoint pt;
        MonteCarloResult mc;
        double eta = 0.0;
    };
    auto compute = [&](std::size_t i) {
        Row row;
        row.pt = pts[i];
        if (std::holds_alternative<LayeredDesign>(any)) {
            const auto& d = std::get<LayeredDesign>(any);
            row.mc = monte_carlo(d, prior, row.pt.noise, a.trials, seed, protocol);
            if (protocol == Protocol::Layered) {
                row.eta = success_lower_bound(d, prior, row.pt.noise).eta;
            } else {
                double mass = interval_mass(prior, 0.0, to_double(d.range()));
                row.eta = mass * noise_pass_prob(row.pt.noise, to_double(d.tolerances.back()));
            }
        } else {
            const auto& s = std::get<ModuliSet>(any);
            row.mc = monte_carlo(s, prior, row.pt.noise, a.trials, seed);
            row.eta = success_lower_bound(s, prior, row.pt.noise).eta;
        }
        return row;
    };

    // Sweep points run in parallel; rows are buffered and emitted in order.
    std::vector<Row> rows(pts.size());
    const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
    for (std::size_t base = 0; base < pts.size(); base += hw) {
        std::size_t end = std::min(pts.size(), base + hw);
        std::vector<std::future<Row>> fut;
        for (std::size_t i = base; i < end; ++i)
            fut.push_back(std::async(std::launch::async, compute, i));
        for (std::size_t i = base; i < end; ++i) rows[i] = fut[i - base].get();
    }

    if (a.format == "json") {
        std::cout << "[";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const Row& r = rows[i];
            std::cout << (i ? ",\n " : "\n ") << "{\"param\": \"" << r.pt.param
                      << "\", \"value\": " << fmt_double(r.pt.value)
                      << ", \"trials\": " << r.mc.trials
                      << ", \"successes\": " << r.mc.successes
                      << ", \"success_rate\": " << fmt_double(r.mc.success_rate)
                      << ", \"rrse\": " << fmt_double(r.mc.rrse)
                      << ", \"eta\": " << fmt_double(r.eta)
                      << ", \"rejected\": " << r.mc.rejected << "}";
        }
        std::cout << "\n]\n";
    } else {
        std::cout << "param,value,trials,successes,success_rate,rrse,eta,rejected\n";
        for (const Row& r : rows)
            std::cout << csv_row({r.pt.param, fmt_double(r.pt.value),
                                  std::to_string(r.mc.trials), std::to_string(r.mc.successes),
                                  fmt_double(r.mc.success_rate), fmt_double(r.mc.rrse),
                                  fmt_double(r.eta), std::to_string(r.mc.rejected)})
                      << "\n";
    }
    return 0;
}

// --------------------------------------------------------------------- oracle

struct OracleArgs {
    std::string suite;
    long rho_max = 500;
    int k_max = -1;  // suite-dependent default
};

int oracle_flat(long rho_max) {
    std::map<std::string, long> labels;
    long cases = 0;
    for (int L = 2; L <= 3; ++L) {
        for (Rat rho(2); rho <= rho_max; rho += Rat(1, 2)) {
            ModuliSet mine = design_flat(L, rho);
            ModuliSet ref = brute_force_flat(L, rho, mine.gammas.back());
            ++cases;
            ++labels[mine.case_label];
            if (mine.gammas.back() != ref.gammas.back()) {
                std::cout << "FAIL flat L=" << L << " rho=" << fmt_rat(rho) << ": got gamma_L="
                          << mine.gammas.back() << " optimum=" << ref.gammas.back() << "\n";
                return 4;
            }
        }
    }
    for (Rat rho(31); rho <= rho_max; rho += 10) {
        ModuliSet mine = design_flat(4, rho);
        ModuliSet ref = brute_force_flat(4, rho, mine.gammas.back());
        ++cases;
        ++labels[mine.case_label];
        if (mine.gammas.back() != ref.gammas.back()) {
            std::cout << "FAIL flat L=4 rho=" << fmt_rat(rho) << ": got gamma_L="
                      << mine.gammas.back() << " optimum=" << ref.gammas.back() << "\n";
            return 4;
        }
    }
    std::cout << "flat: " << cases << " cases ok\n";
    for (const auto& [label, n] : labels) std::cout << "  " << label << ": " << n << "\n";
    return 0;
}

int oracle_layered(long rho_max, int k_max) {
    long cases = 0;
    Rat worst_ratio(1);
    for (long r = 4; r <= rho_max; ++r) {
        for (int K = 1; K <= k_max; ++K) {
            LayeredDesign mine = design_layered(Rat(r), K);
            auto ref = brute_force_layered(Rat(r), K, mine.gamma2);
            ++cases;
            if (!ref) {
                std::cout << "FAIL layered rho=" << r << " K=" << K
                          << ": exhaustive search found nothing up to gamma2=" << mine.gamma2
                          << "\n";
                return 4;
            }
            if (K <= 2 && ref->second != mine.gamma2) {
                std::cout << "FAIL layered rho=" << r << " K=" << K << ": got gamma2="
                          << mine.gamma2 << " optimum=" << ref->second << "\n";
                return 4;
            }
            Rat ratio = Rat(mine.gamma2) / Rat(ref->second);
            if (ratio > worst_ratio) worst_ratio = ratio;
        }
    }
    std::cout << "layered: " << cases << " cases ok (K <= 2 exactly optimal)\n";
    std::cout << "  worst gamma2 ratio vs exhaustive: " << fmt_rat(worst_ratio) << "\n";
    return 0;
}

int oracle_identities(long rho_max, int k_max) {
    long cases = 0;
    for (long d = 0; d <= 20; ++d)
        for (long k = 2; k <= 30; ++k) {
            ++cases;
            if (!check_linear_in_seed(Int(d), k)) {
                std::cout << "FAIL linear-in-seed d=" << d << " k=" << k << "\n";
                return 4;
            }
        }
    for (long d = 0; d <= 10; ++d)
        for (long s = 1; s <= 25; ++s)
            for (long t = 1; t <= s; ++t) {
                ++cases;
                if (!check_mixed_docagne(Int(d), s, t)) {
                    std::cout << "FAIL mixed-index d=" << d << " s=" << s << " t=" << t << "\n";
                    return 4;
                }
            }
    // Cross-moduli identity: gamma2*F_{zeta-1,j} - gamma1*F_{zeta,j} = +-sigma_j.
    for (long r = 2; r <= rho_max; ++r)
        for (int K = 1; K <= k_max; ++K) {
            LayeredDesign d = design_layered(Rat(r), K);
            if (!d.zeta) continue;
            for (int j = 1; j <= d.K; ++j) {
                ++cases;
                Int lhs = d.gamma2 * fib_like(*d.zeta - 1, j) - d.gamma1 * fib_like(*d.zeta, j);
                Int want = (j % 2 == 1) ? d.chain.sigma[j - 1] : -d.chain.sigma[j - 1];
                if (lhs != want) {
                    std::cout << "FAIL auxiliary identity rho=" << r << " K=" << K
                              << " j=" << j << ": " << lhs << " != " << want << "\n";
                    return 4;
                }
            }
        }
    std::cout << "identities: " << cases << " cases ok\n";
    return 0;
}

int run_oracle(const OracleArgs& a) {
    if (a.suite == "flat") return oracle_flat(a.rho_max);
    if (a.suite == "layered") return oracle_layered(a.rho_max, a.k_max < 0 ? 2 : a.k_max);
    if (a.suite == "identities")
        return oracle_identities(a.rho_max, a.k_max < 0 ? 10 : a.k_max);
    throw DomainError("unknown suite '" + a.suite + "' (flat, layered, identities)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact moduli design toolkit for robust remainder recovery"};
    app.require_subcommand(1);
    app.add_option("--precision", g_precision, "decimal digits for printed reals")
        ->check(CLI::Range(0, 40));

    FlatArgs fa;
    auto* flat = app.add_subcommand("design-flat", "closed-form full-layer moduli sets");
    flat->add_option("--L", fa.L, "number of moduli")->required()->check(CLI::Range(2, 6));
    auto* f_rho = flat->add_option("--rho", fa.rho_text, "range ratio n_th / m_max");
    auto* f_nth = flat->add_option("--n-th", fa.nth_text, "dynamic range threshold");
    flat->add_option("--m-max", fa.mmax_text, "largest allowed modulus");
    f_rho->excludes(f_nth);
    flat->add_flag("--heuristic", fa.heuristic, "near-optimal construction (L = 4, 5, 6)");
    flat->add_flag("--compare-baselines", fa.baselines,
                   "compare against prime and 2^n-structured triples");
    flat->add_option("--truncate-decimals", fa.truncate,
                     "truncate the channel scale m to this many decimals")
        ->check(CLI::Range(0, 18));
    flat->add_option("--out", fa.out_path, "write the design file here");
    flat->add_option("--format", fa.format, "stdout format")
        ->check(CLI::IsMember({"text", "json"}));

    LayeredArgs la;
    auto* lay = app.add_subcommand("design-layered", "two-moduli designs with K robust layers");
    auto* l_rho = lay->add_option("--rho", la.rho_text, "range ratio n_th / m_max");
    auto* l_nth = lay->add_option("--n-th", la.nth_text, "dynamic range threshold");
    lay->add_option("--m-max", la.mmax_text, "largest allowed modulus");
    l_rho->excludes(l_nth);
    auto* l_K = lay->add_option("--K", la.K, "robust layer count")->check(CLI::Range(0, 90));
    auto* l_d = lay->add_option("--d", la.d_text, "force the F_{d,k} seed family");
    auto* l_g1 = lay->add_option("--gamma1", la.g1_text, "analyze an explicit pair");
    lay->add_option("--gamma2", la.g2_text, "analyze an explicit pair");
    lay->add_option("--m", la.m_text, "channel scale for an explicit pair")->needs(l_g1);
    l_g1->excludes(l_rho)->excludes(l_nth)->excludes(l_K)->excludes(l_d);
    lay->add_option("--emit-staircase", la.staircase_path,
                    "write the tolerance staircase as CSV (x,tolerance)");
    lay->add_flag("--emit-scaling", la.scaling, "print breakpoint/tolerance scaling ratios");
    lay->add_option("--out", la.out_path, "write the design file here");
    lay->add_option("--format", la.format, "stdout format")
        ->check(CLI::IsMember({"text", "json"}));

    PredictArgs pa;
    auto* pred = app.add_subcommand("predict", "analytic success lower bound");
    pred->add_option("--design-file", pa.design_path, "design JSON")->required();
    pred->add_option("--prior", pa.prior_spec, "signal prior kind:param")->required();
    pred->add_option("--noise", pa.noise_spec, "noise kind:param (default none)");
    pred->add_option("--format", pa.format, "stdout format")
        ->check(CLI::IsMember({"text", "json", "csv"}));

    SimulateArgs sa;
    auto* sim = app.add_subcommand("simulate", "Monte Carlo success rate and RRSE");
    sim->add_option("--design-file", sa.design_path, "design JSON")->required();
    sim->add_option("--prior", sa.prior_spec, "signal prior kind:param")->required();
    auto* s_noise = sim->add_option("--noise", sa.noise_spec, "noise kind:param");
    auto* s_sweep = sim->add_option("--sweep", sa.sweep_spec,
                                    "sweep the noise parameter, param:lo:hi:step");
    s_sweep->excludes(s_noise);
    sim->add_option("--trials", sa.trials, "Monte Carlo trials per point")
        ->check(CLI::PositiveNumber);
    auto* s_seed = sim->add_option("--seed", sa.seed, "master seed (default $RCRT_SEED)");
    sim->add_option("--protocol", sa.protocol, "decode at the layer of x, or full-range")
        ->check(CLI::IsMember({"layered", "flat"}));
    sim->add_option("--format", sa.format, "stdout format")
        ->check(CLI::IsMember({"csv", "json"}));

    OracleArgs oa;
    auto* ora = app.add_subcommand("oracle", "exhaustive verification sweeps");
    ora->add_option("--suite", oa.suite, "flat | layered | identities")->required();
    ora->add_option("--rho-max", oa.rho_max, "sweep bound")->check(CLI::PositiveNumber);
    ora->add_option("--K-max", oa.k_max, "layer bound")->check(CLI::Range(1, 40));

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        sa.seed_given = s_seed->count() > 0;
        if (*flat) return run_design_flat(fa);
        if (*lay) return run_design_layered(la);
        if (*pred) return run_predict(pa);
        if (*sim) return run_simulate(sa);
        if (*ora) return run_oracle(oa);
        return 2;
    } catch (const InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 3;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
}
