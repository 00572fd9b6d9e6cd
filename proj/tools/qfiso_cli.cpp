// qfiso: command line front end to the isotropy library.
//
// Every subcommand prints JSON (schema 1) unless --format selects another
// rendering. Exit status: 0 success, 1 usage error, 2 computational error.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qfiso/acceptance.hpp"
#include "qfiso/qfiso.hpp"

using nlohmann::ordered_json;

namespace {

constexpr int kSchema = 1;

/// Bad flag values detected after parsing; reported like CLI11 errors.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Output {
    ordered_json json;
    std::optional<std::string> text;
    int exit_code = 0;
};

ordered_json header(const std::string& command) {
    ordered_json j;
    j["schema"] = kSchema;
    j["command"] = command;
    return j;
}

/// Integers that fit a long become JSON numbers, larger ones strings.
ordered_json integer_json(const qfiso::Integer& z) {
    if (z.fits_slong_p()) return z.get_si();
    return z.get_str();
}

std::string rational_decimal(const qfiso::Rational& q, int digits) {
    return qfiso::pilaurent_to_decimal(qfiso::PiLaurent(qfiso::QSqrt2(q)), digits).text;
}

std::vector<qfiso::Integer> parse_coefficients(const std::string& text) {
    std::vector<qfiso::Integer> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        if (b == std::string::npos) throw UsageError("--coeffs: empty entry");
        qfiso::Integer z;
        if (z.set_str(item.substr(b, e - b + 1), 10) != 0) throw UsageError("--coeffs: not an integer: " + item);
        out.push_back(z);
    }
    return out;
}

void check_prime(const char* flag, unsigned long p) {
    try {
        qfiso::padic::detail::require_prime(p);
    } catch (const qfiso::NotPrime& e) {
        throw UsageError(std::string(flag) + ": " + e.what());
    }
}

qfiso::real::RealModel parse_model(const std::string& s) {
    return s == "goe" ? qfiso::real::RealModel::Goe : qfiso::real::RealModel::Uniform;
}

struct Common {
    std::uint64_t seed = qfiso::kDefaultSeed;
    unsigned threads = qfiso::default_thread_count();
    std::string manifest;
};

struct LocalArgs {
    int n = 0;
    std::optional<unsigned long> prime;
    bool derive = false, closed = false;
    std::string format = "json";
};

Output run_local(const LocalArgs& a) {
    using namespace qfiso;
    if (a.n < 1) throw UsageError("--n: must be at least 1");
    const bool derived = a.derive;
    const RatFunc value = derived ? local::rho_local_derived(a.n) : local::rho_local_closed(a.n);
    Output out;
    out.json = header("local");
    out.json["n"] = a.n;
    out.json["method"] = derived ? "derived" : "closed";
    out.json["rho"] = value.to_string();
    std::string text = derived ? value.to_string() : local::rho_local_closed_form(a.n).display;
    if (!derived) out.json["display"] = text;
    if (a.prime) {
        check_prime("--prime", *a.prime);
        const Rational v = value.eval(Integer(*a.prime));
        out.json["prime"] = *a.prime;
        out.json["value"] = v.get_str();
        out.json["decimal"] = rational_decimal(v, 15);
        text += "\np=" + std::to_string(*a.prime) + ": " + v.get_str() + " = " + rational_decimal(v, 15);
    }
    if (a.format == "text") out.text = text;
    return out;
}

struct DecideArgs {
    int n = 0;
    unsigned long p = 0;
    std::string coeffs;
    std::optional<long> precision;
    std::string format = "json";
};

Output run_padic_decide(const DecideArgs& a) {
    using namespace qfiso;
    if (a.n < 1) throw UsageError("--n: must be at least 1");
    check_prime("--p", a.p);
    const auto c = parse_coefficients(a.coeffs);
    const std::size_t expected = static_cast<std::size_t>(a.n) * static_cast<std::size_t>(a.n + 1) / 2;
    if (c.size() != expected)
        throw UsageError("--coeffs: expected " + std::to_string(expected) + " coefficients, got " +
                         std::to_string(c.size()));
    const padic::QuadForm q(a.n, c);
    padic::DecideOptions opt;
    opt.precision = a.precision;
    const padic::Decision d = padic::decide_isotropic_recursive(q, a.p, opt);
    Output out;
    out.json = header("padic decide");
    out.json["form"] = q.to_string();
    out.json["p"] = a.p;
    out.json["verdict"] = padic::to_string(d.verdict);
    if (d.witness) {
        ordered_json w = ordered_json::array();
        for (const auto& x : *d.witness) w.push_back(integer_json(x));
        out.json["witness"] = w;
    }
    out.json["passes"] = d.passes;
    out.json["steps"] = d.steps;
    out.json["pattern"] = d.pattern;
    if (a.format == "text") {
        std::string t = padic::to_string(d.verdict);
        if (d.witness) {
            t += " witness (";
            for (std::size_t i = 0; i < d.witness->size(); ++i) t += (i ? ", " : "") + (*d.witness)[i].get_str();
            t += ")";
        }
        out.text = t + " passes " + std::to_string(d.passes);
    }
    return out;
}

struct PadicMcArgs {
    int n = 0;
    unsigned long p = 0;
    std::uint64_t samples = 100'000;
    long max_digits = 64;
    std::string format = "json";
};

Output run_padic_mc(const PadicMcArgs& a, const Common& c) {
    using namespace qfiso;
    if (a.n < 1) throw UsageError("--n: must be at least 1");
    check_prime("--p", a.p);
    const auto m = padic::estimate_rho_local_mc(a.n, a.p, a.samples, c.seed, a.max_digits, c.threads);
    Output out;
    out.json = header("padic mc");
    out.json["n"] = a.n;
    out.json["p"] = a.p;
    out.json["seed"] = c.seed;
    out.json["samples"] = m.samples;
    out.json["isotropic"] = m.isotropic;
    out.json["indeterminate"] = m.indeterminate;
    out.json["estimate"] = m.estimate;
    out.json["stderr"] = m.stderr_;
    out.json["exact"] = m.exact.get_str();
    out.json["exact_decimal"] = rational_decimal(m.exact, 15);
    out.json["z_score"] = m.z_score;
    if (a.format == "text") {
        std::ostringstream t;
        t << "estimate " << m.estimate << " +- " << m.stderr_ << ", exact " << m.exact.get_str() << " ("
          << rational_decimal(m.exact, 10) << "), z " << m.z_score << ", indeterminate " << m.indeterminate;
        out.text = t.str();
    }
    return out;
}

struct RealExactArgs {
    int n = 0;
    std::string format = "json";
    int digits = 10;
};

Output run_real_exact(const RealExactArgs& a) {
    using namespace qfiso;
    const PiLaurent v = real::rho_infinity_exact(a.n);
    const DecimalValue dec = pilaurent_to_decimal(v, a.digits);
    Output out;
    out.json = header("real exact");
    out.json["n"] = a.n;
    out.json["value"] = v.pretty();
    out.json["canonical"] = v.to_string();
    out.json["digits"] = a.digits;
    out.json["decimal"] = dec.text;
    if (a.format == "expr") out.text = v.pretty();
    if (a.format == "decimal") out.text = dec.text;
    return out;
}

struct RealMcArgs {
    int n = 0;
    std::string model = "goe";
    std::uint64_t samples = 1'000'000;
    std::string format = "json";
};

Output run_real_mc(const RealMcArgs& a, const Common& c) {
    using namespace qfiso;
    const auto model = parse_model(a.model);
    const auto m = real::estimate_rho_infinity_mc(model, a.n, a.samples, c.seed, c.threads);
    Output out;
    out.json = header("real mc");
    out.json["model"] = a.model;
    out.json["n"] = a.n;
    out.json["seed"] = c.seed;
    out.json["samples"] = m.samples;
    out.json["indefinite"] = m.indefinite;
    out.json["resamples"] = m.resamples;
    out.json["estimate"] = m.estimate;
    out.json["stderr"] = m.stderr_;
    std::ostringstream t;
    t << a.model << " n=" << a.n << ": " << m.estimate << " +- " << m.stderr_;
    if (model == real::RealModel::Goe && a.n <= static_cast<int>(real::kMaxPfaffianSize)) {
        const PiLaurent exact = real::rho_infinity_exact(a.n);
        const double e = exact.to_double();
        out.json["exact"] = pilaurent_to_decimal(exact, 15).text;
        out.json["z_score"] = m.stderr_ > 0 ? (m.estimate - e) / m.stderr_ : 0.0;
        t << " (exact " << pilaurent_to_decimal(exact, 10).text << ")";
    }
    if (a.format == "text") out.text = t.str();
    return out;
}

struct GlobalArgs {
    std::optional<int> n;
    std::string model = "goe";
    int digits = 8;
    long cutoff = 10'000;
    std::uint64_t samples = 1'000'000;
    std::string format = "json";
};

qfiso::global::GlobalOptions global_options(const GlobalArgs& a, const Common& c) {
    qfiso::global::GlobalOptions o;
    o.samples = a.samples;
    o.seed = c.seed;
    o.threads = c.threads;
    o.digits = a.digits;
    o.cutoff = a.cutoff;
    return o;
}

Output run_global(const GlobalArgs& a, const Common& c) {
    using namespace qfiso;
    if (!a.n) throw UsageError("--n is required");
    const auto g = global::rho_global(*a.n, parse_model(a.model), global_options(a, c));
    Output out;
    out.json = header("global");
    out.json["n"] = *a.n;
    out.json["model"] = a.model;
    std::string text;
    if (g.enclosure) {
        const auto [lo, hi] = g.enclosure->bounds_strings(a.digits + 2);
        out.json["value_lower"] = lo;
        out.json["value_upper"] = hi;
        text = "[" + lo + ", " + hi + "]";
    }
    if (g.estimate) {
        out.json["seed"] = c.seed;
        out.json["samples"] = a.samples;
        out.json["estimate"] = *g.estimate;
        out.json["stderr"] = *g.stderr_;
        std::ostringstream t;
        t << *g.estimate << " +- " << *g.stderr_;
        text = t.str();
    }
    if (g.exact) out.json["exact"] = g.exact->pretty();
    if (g.product) {
        const auto [lo, hi] = g.product->enclosure.bounds_strings(a.digits + 2);
        out.json["cutoff_used"] = g.product->cutoff;
        out.json["tail_bound"] = g.product->tail_bound.get_str();
        out.json["euler_product_lower"] = lo;
        out.json["euler_product_upper"] = hi;
    }
    if (a.format == "text") out.text = text;
    return out;
}

Output run_table2(const GlobalArgs& a, const Common& c) {
    Output out;
    out.text = qfiso::global::table2_csv(global_options(a, c));
    out.text->pop_back();
    return out;
}

struct VerifyArgs {
    std::vector<int> only;
    std::string format = "json";
};

Output run_verify(const VerifyArgs& a, const Common& c) {
    using namespace qfiso::acceptance;
    Options opt;
    opt.seed = c.seed;
    opt.threads = c.threads;
    Output out;
    out.json = header("verify");
    ordered_json list = ordered_json::array();
    std::string text;
    bool all = true;
    const auto criteria = all_criteria();
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        if (!a.only.empty() && std::find(a.only.begin(), a.only.end(), id) == a.only.end()) continue;
        const CriterionResult r = run_criterion(criteria[i], opt);
        all = all && r.passed;
        list.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
        text += format_line(r) + "\n";
        if (a.format == "text") std::cout << format_line(r) << std::endl;
    }
    out.json["criteria"] = list;
    out.json["passed"] = all;
    if (a.format == "text") out.text = all ? "all criteria passed" : "some criteria FAILED";
    out.exit_code = all ? 0 : 2;
    return out;
}

void write_manifest(const std::string& path, int argc, char** argv, const Common& c, const Output& out,
                    double seconds) {
    ordered_json m;
    m["schema"] = kSchema;
    std::vector<std::string> args(argv, argv + argc);
    m["command_line"] = args;
    m["seed"] = c.seed;
    m["threads"] = c.threads;
    m["version"] = qfiso::kVersion;
    m["wall_time_seconds"] = seconds;
    if (out.text && out.json.empty())
        m["output"] = *out.text;
    else
        m["output"] = out.json;
    std::ofstream f(path);
    if (!f) throw qfiso::Error("cannot write manifest " + path);
    f << m.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Isotropy probabilities of random quadratic forms", "qfiso"};
    app.set_version_flag("--version", std::string(qfiso::kVersion));
    app.require_subcommand(1);
    Common common;
    app.add_option("--seed", common.seed, "random seed")->capture_default_str();
    app.add_option("--threads", common.threads, "worker threads (default from QFISO_THREADS)")
        ->check(CLI::Range(1u, 1024u))
        ->capture_default_str();
    app.add_option("--manifest", common.manifest, "also write a run manifest to this file");
    app.fallthrough();

    const auto json_text = CLI::IsMember({"json", "text"});

    LocalArgs la;
    auto* local = app.add_subcommand("local", "rho_n(p) as a rational function of p");
    local->add_option("--n", la.n, "number of variables")->required();
    local->add_option("--prime", la.prime, "also evaluate at this prime");
    auto* derive = local->add_flag("--derive", la.derive, "assemble from the recursion tables");
    auto* closed = local->add_flag("--closed", la.closed, "use the closed form (default)");
    derive->excludes(closed);
    local->add_option("--format", la.format)->check(json_text);

    auto* padic = app.add_subcommand("padic", "p-adic isotropy")->require_subcommand(1);
    DecideArgs da;
    auto* decide = padic->add_subcommand("decide", "decide isotropy of one integral form over Z_p");
    decide->add_option("--n", da.n)->required();
    decide->add_option("--p", da.p)->required();
    decide->add_option("--coeffs", da.coeffs, "c11,c12,...,c1n,c22,...,cnn")->required();
    decide->add_option("--precision", da.precision, "coefficients known modulo p^precision only");
    decide->add_option("--format", da.format)->check(json_text);
    PadicMcArgs pm;
    auto* pmc = padic->add_subcommand("mc", "Monte Carlo estimate of rho_n(p)");
    pmc->add_option("--n", pm.n)->required();
    pmc->add_option("--p", pm.p)->required();
    pmc->add_option("--samples", pm.samples)->check(CLI::PositiveNumber)->capture_default_str();
    pmc->add_option("--max-digits", pm.max_digits)->check(CLI::Range(1L, 4096L))->capture_default_str();
    pmc->add_option("--format", pm.format)->check(json_text);

    auto* real = app.add_subcommand("real", "isotropy over R")->require_subcommand(1);
    RealExactArgs re;
    auto* rex = real->add_subcommand("exact", "exact rho_n(infinity) for the GOE model");
    rex->add_option("--n", re.n)->required()->check(CLI::Range(1, 24));
    rex->add_option("--format", re.format)->check(CLI::IsMember({"json", "expr", "decimal"}));
    rex->add_option("--digits", re.digits)->check(CLI::Range(0, 50))->capture_default_str();
    RealMcArgs rm;
    auto* rmc = real->add_subcommand("mc", "Monte Carlo estimate of rho_n(infinity)");
    rmc->add_option("--n", rm.n)->required()->check(CLI::PositiveNumber);
    rmc->add_option("--model", rm.model)->check(CLI::IsMember({"goe", "uniform"}))->capture_default_str();
    rmc->add_option("--samples", rm.samples)->check(CLI::PositiveNumber)->capture_default_str();
    rmc->add_option("--format", rm.format)->check(json_text);

    GlobalArgs ga;
    auto* global = app.add_subcommand("global", "isotropy over Z");
    global->add_option("--n", ga.n)->check(CLI::PositiveNumber);
    global->add_option("--model", ga.model)->check(CLI::IsMember({"goe", "uniform"}))->capture_default_str();
    global->add_option("--digits", ga.digits)->check(CLI::Range(1, 30))->capture_default_str();
    global->add_option("--cutoff", ga.cutoff)->check(CLI::Range(2L, qfiso::global::kMaxCutoff))->capture_default_str();
    global->add_option("--samples", ga.samples)->check(CLI::PositiveNumber)->capture_default_str();
    global->add_option("--format", ga.format)->check(json_text);
    global->fallthrough();
    auto* table2 = global->add_subcommand("table2", "summary table as CSV");

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "run the acceptance suite");
    verify->add_option("--only", va.only, "criterion numbers to run")->delimiter(',')->check(CLI::Range(1, 12));
    verify->add_option("--format", va.format)->check(json_text);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    const auto t0 = std::chrono::steady_clock::now();
    Output out;
    try {
        if (local->parsed())
            out = run_local(la);
        else if (decide->parsed())
            out = run_padic_decide(da);
        else if (pmc->parsed())
            out = run_padic_mc(pm, common);
        else if (rex->parsed())
            out = run_real_exact(re);
        else if (rmc->parsed())
            out = run_real_mc(rm, common);
        else if (table2->parsed())
            out = run_table2(ga, common);
        else if (global->parsed())
            out = run_global(ga, common);
        else if (verify->parsed())
            out = run_verify(va, common);
    } catch (const UsageError& e) {
        std::cerr << e.what() << "\nRun with --help for more information.\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    if (out.text)
        std::cout << *out.text << "\n";
    else
        std::cout << out.json.dump(2) << "\n";

    if (!common.manifest.empty()) {
        try {
            const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            write_manifest(common.manifest, argc, argv, common, out, seconds);
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        }
    }
    return out.exit_code;
}
