#include "ximod/classical.hpp"
#include "ximod/errors.hpp"
#include "ximod/generalized.hpp"
#include "ximod/identities.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

using namespace ximod;

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;
constexpr int kDomain = 3;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Args = std::map<std::string, std::string>;

struct Function {
    std::vector<std::string> params;
    std::string description;
    std::function<Complex(const Args&, const PrecisionConfig&)> eval;
};

Complex cx(const Args& a, const std::string& k) { return parse_complex(a.at(k)); }
Real re(const Args& a, const std::string& k) { return parse_real(a.at(k)); }
long integer(const Args& a, const std::string& k) {
    try {
        std::size_t pos = 0;
        const long v = std::stol(a.at(k), &pos);
        if (pos != a.at(k).size()) throw std::invalid_argument(k);
        return v;
    } catch (const std::logic_error&) {
        throw UsageError("--" + k + " expects an integer");
    }
}

const std::map<std::string, Function>& functions() {
    static const std::map<std::string, Function> table = {
        {"gamma", {{"s"}, "Gamma(s)", [](const Args& a, const PrecisionConfig&) { return gamma_complex(cx(a, "s")); }}},
        {"rgamma", {{"s"}, "1/Gamma(s)", [](const Args& a, const PrecisionConfig&) { return rgamma(cx(a, "s")); }}},
        {"log_gamma", {{"s"}, "log Gamma(s), Re s > 0", [](const Args& a, const PrecisionConfig&) { return log_gamma(cx(a, "s")); }}},
        {"digamma", {{"a"}, "psi(a)", [](const Args& a, const PrecisionConfig&) { return digamma(cx(a, "a")); }}},
        {"erf", {{"w"}, "erf(w)", [](const Args& a, const PrecisionConfig&) { return erf(cx(a, "w")); }}},
        {"erfi", {{"w"}, "erfi(w)", [](const Args& a, const PrecisionConfig&) { return erfi(cx(a, "w")); }}},
        {"hyp1f1", {{"a", "c", "x"}, "1F1(a;c;x)",
                    [](const Args& a, const PrecisionConfig&) { return hyp1f1(cx(a, "a"), cx(a, "c"), cx(a, "x")); }}},
        {"hyp2f1", {{"a", "b", "c", "x"}, "2F1(a,b;c;x)",
                    [](const Args& a, const PrecisionConfig&) {
                        return hyp2f1(cx(a, "a"), cx(a, "b"), cx(a, "c"), cx(a, "x"));
                    }}},
        {"zeta", {{"s"}, "zeta(s)", [](const Args& a, const PrecisionConfig&) { return zeta_complex(cx(a, "s")); }}},
        {"hurwitz_zeta", {{"s", "a"}, "zeta(s,a), a > 0",
                          [](const Args& a, const PrecisionConfig&) { return hurwitz_zeta(cx(a, "s"), re(a, "a")); }}},
        {"xi", {{"s"}, "xi(s)", [](const Args& a, const PrecisionConfig&) { return xi(cx(a, "s")); }}},
        {"Xi", {{"t"}, "Xi(t) = xi(1/2 + it)", [](const Args& a, const PrecisionConfig&) { return Complex(Xi(re(a, "t"))); }}},
        {"bessel_j0", {{"x"}, "J0(x)", [](const Args& a, const PrecisionConfig&) { return Complex(bessel_j0(re(a, "x"))); }}},
        {"bessel_k", {{"nu", "x"}, "K_nu(x), x > 0",
                      [](const Args& a, const PrecisionConfig&) { return bessel_k(cx(a, "nu"), re(a, "x")); }}},
        {"divisor_sigma", {{"z", "n"}, "sigma_{-z}(n)",
                           [](const Args& a, const PrecisionConfig&) { return divisor_sigma(cx(a, "z"), integer(a, "n")); }}},
        {"zeta_w", {{"s", "a", "w"}, "generalized Hurwitz zeta, Re s > 1, a > 0",
                    [](const Args& a, const PrecisionConfig& c) { return zeta_w_direct(cx(a, "s"), re(a, "a"), cx(a, "w"), c); }}},
        {"zeta_w_residue", {{"w"}, "residue of zeta_w at s = 1",
                            [](const Args& a, const PrecisionConfig&) { return zeta_w_residue(cx(a, "w")); }}},
        {"psi_w", {{"a", "w"}, "generalized digamma (triple integral), a > 0",
                   [](const Args& a, const PrecisionConfig& c) { return psi_w_integral(re(a, "a"), cx(a, "w"), c); }}},
        {"psi_w_laurent", {{"a", "w"}, "psi_w(a+1) from the Laurent constant of zeta_w(s, a+1) at s = 1",
                           [](const Args& a, const PrecisionConfig& c) { return psi_w_laurent(re(a, "a"), cx(a, "w"), c); }}},
        {"coefficient_C", {{"w"}, "C(w)", [](const Args& a, const PrecisionConfig&) { return coefficient_C(cx(a, "w")); }}},
        {"coefficient_B", {{"w"}, "B(w)", [](const Args& a, const PrecisionConfig&) { return coefficient_B(cx(a, "w")); }}},
        {"coefficient_A", {{"z", "w"}, "A_w(z)",
                           [](const Args& a, const PrecisionConfig&) { return coefficient_A(cx(a, "z"), cx(a, "w")); }}},
        {"lambda_w", {{"x", "w"}, "lambda_w(x), x > 0",
                      [](const Args& a, const PrecisionConfig& c) { return lambda_w(re(a, "x"), cx(a, "w"), c); }}},
        {"phi", {{"z", "x"}, "phi(z,x), -1 < Re z < 1, z != 0",
                 [](const Args& a, const PrecisionConfig&) { return phi_classical(cx(a, "z"), re(a, "x")); }}},
        {"phi_digamma", {{"x"}, "psi(x) + 1/(2x) - log x",
                         [](const Args& a, const PrecisionConfig&) { return Complex(phi_digamma(re(a, "x"))); }}},
        {"phi_w", {{"z", "x", "w"}, "phi_w(z,x), 0 < Re z < 1",
                   [](const Args& a, const PrecisionConfig& c) { return phi_w(cx(a, "z"), re(a, "x"), cx(a, "w"), c); }}},
        {"zeta_w_asymptotic", {{"s", "a", "w"}, "two-term large-a expansion of zeta_w(s, a+1)",
                               [](const Args& a, const PrecisionConfig&) {
                                   return zeta_w_asymptotic(cx(a, "s"), re(a, "a"), cx(a, "w")).value;
                               }}},
        {"kernel_omega", {{"x", "z", "w", "s"}, "omega(x,z,w,s)",
                          [](const Args& a, const PrecisionConfig&) {
                              return kernel_omega(re(a, "x"), cx(a, "z"), cx(a, "w"), cx(a, "s"));
                          }}},
        {"kernel_delta2", {{"x", "z", "w", "s"}, "Delta_2(x,z,w,s)",
                           [](const Args& a, const PrecisionConfig&) {
                               return kernel_delta2(re(a, "x"), cx(a, "z"), cx(a, "w"), cx(a, "s"));
                           }}},
        {"kernel_rho", {{"x", "w", "s"}, "rho(x,w,s)",
                        [](const Args& a, const PrecisionConfig&) { return kernel_rho(re(a, "x"), cx(a, "w"), cx(a, "s")); }}},
        {"kernel_nabla", {{"x", "w", "s"}, "nabla(x,w,s)",
                          [](const Args& a, const PrecisionConfig&) { return kernel_nabla(re(a, "x"), cx(a, "w"), cx(a, "s")); }}},
        {"k1_bessel", {{"z", "w", "x"}, "1K_{z,w}(x) by its Mellin-Barnes integral",
                       [](const Args& a, const PrecisionConfig& c) { return k1_bessel(cx(a, "z"), cx(a, "w"), re(a, "x"), c); }}},
        {"l1_limit", {{"w", "alpha"}, "(gamma - log 2 pi alpha)C(w)/(2 alpha) + B(w)/(2 alpha)",
                      [](const Args& a, const PrecisionConfig&) { return l1_limit(cx(a, "w"), re(a, "alpha")); }}},
        {"l1_bracket", {{"z", "w", "alpha"}, "zeta(z+1)A_w(z)/(2 alpha^{z+1}) + zeta(z)A_w(-z)/(alpha z)",
                        [](const Args& a, const PrecisionConfig&) {
                            return l1_bracket(cx(a, "z"), cx(a, "w"), re(a, "alpha"));
                        }}},
        {"l2_limit", {{"w", "alpha", "m"}, "C(iw) log(m alpha) + B(iw)/2",
                      [](const Args& a, const PrecisionConfig&) {
                          return l2_limit(cx(a, "w"), re(a, "alpha"), integer(a, "m"));
                      }}},
    };
    return table;
}

std::string function_names() {
    std::string out;
    for (const auto& [name, f] : functions()) out += (out.empty() ? "" : ", ") + name;
    return out;
}

unsigned default_digits() {
    if (const char* env = std::getenv("XIMOD_PREC")) {
        try {
            return static_cast<unsigned>(std::stoul(env));
        } catch (const std::logic_error&) {
            throw ConfigError("XIMOD_PREC must be a positive integer");
        }
    }
    return 30;
}

PrecisionConfig make_config(int prec_flag) {
    const unsigned digits = prec_flag > 0 ? static_cast<unsigned>(prec_flag) : default_digits();
    PrecisionConfig cfg = PrecisionConfig::with_digits(digits);
    cfg.validate();
    return cfg;
}

Complex parse_flag(const std::string& key, const std::string& value) {
    try {
        return parse_complex(value);
    } catch (const DomainError&) {
        throw UsageError("--" + key + " expects a number, got '" + value + "'");
    }
}

Real parse_real_flag(const std::string& key, const std::string& value) {
    const Complex v = parse_flag(key, value);
    if (v.imag() != 0) throw UsageError("--" + key + " expects a real number");
    return v.real();
}

Args parse_extras(const std::vector<std::string>& extras) {
    Args out;
    for (std::size_t i = 0; i < extras.size(); ++i) {
        const std::string& key = extras[i];
        if (key.rfind("--", 0) != 0 || key.size() < 3) throw UsageError("unexpected argument '" + key + "'");
        if (i + 1 >= extras.size()) throw UsageError("missing value for " + key);
        out[key.substr(2)] = extras[++i];
    }
    return out;
}

void write_output(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open output file " + path);
    f << text;
}

int run_eval(const std::string& name, const std::vector<std::string>& extras, int prec) {
    const auto& table = functions();
    auto it = table.find(name);
    if (it == table.end()) {
        std::cerr << "unknown function '" << name << "'; available: " << function_names() << "\n";
        return kUsage;
    }
    const PrecisionConfig cfg = make_config(prec);
    PrecisionScope scope(cfg.working_digits);
    const Args args = parse_extras(extras);
    for (const auto& p : it->second.params)
        if (!args.count(p)) throw UsageError(name + " needs --" + p);
    for (const auto& [k, v] : args)
        if (std::find(it->second.params.begin(), it->second.params.end(), k) == it->second.params.end())
            throw UsageError(name + " does not take --" + k);
    for (const auto& [k, v] : args)
        if (k != "n" && k != "m") parse_flag(k, v);
    const Complex v = it->second.eval(args, cfg);
    std::cout << format_complex(v, cfg.working_digits) << "\n";
    return kOk;
}

struct VerifyOptions {
    std::string identity;
    std::string alpha = "1";
    std::string w = "0";
    std::string z = "0";
    std::string n = "0";
    double tol = 0;
    long terms = 200;
    std::string format = "json";
    std::string out;
};

int run_verify(const VerifyOptions& o, int prec) {
    IdentityCase c;
    try {
        c.name = parse_identity_name(o.identity);
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    c.cfg = make_config(prec);
    PrecisionScope scope(c.cfg.working_digits);
    c.alpha = parse_real_flag("alpha", o.alpha);
    c.w = parse_flag("w", o.w);
    c.z = parse_flag("z", o.z);
    c.n = parse_real_flag("n", o.n);
    c.series_terms = o.terms;
    if (o.tol > 0) c.tolerance = o.tol;
    const ResidualReport r = verify_identity(c);
    write_output(emit_report(r, o.format == "csv" ? ReportFormat::csv : ReportFormat::json), o.out);
    return r.pass ? kOk : kFail;
}

struct ScanOptions {
    std::string z = "0";
    std::string w = "0";
    long m = 1;
    std::string alphas;
    std::string format = "csv";
    std::string out;
};

int run_scan(const ScanOptions& o, int prec) {
    const PrecisionConfig cfg = make_config(prec);
    PrecisionScope scope(cfg.working_digits);
    std::vector<Real> grid;
    std::stringstream ss(o.alphas);
    std::string item;
    while (std::getline(ss, item, ',')) grid.push_back(parse_real_flag("alphas", item));
    const AsymptoticScanReport r = scan_asymptotic(parse_flag("z", o.z), parse_flag("w", o.w), o.m, grid, cfg);
    write_output(emit_report(r, o.format == "json" ? ReportFormat::json : ReportFormat::csv), o.out);
    std::ostringstream summary;
    summary.precision(4);
    summary << std::fixed << "fitted slope " << r.fitted_slope << ", predicted " << r.predicted_slope << "\n";
    if (o.out.empty())
        std::cerr << summary.str();
    else
        std::cout << summary.str();
    return kOk;
}

int run_list() {
    std::cout << "functions:\n";
    for (const auto& [name, f] : functions()) {
        std::string params;
        for (const auto& p : f.params) params += " --" + p;
        std::cout << "  " << name << params << "\n      " << f.description << "\n";
    }
    std::cout << "identities:\n";
    for (const auto& i : identity_registry())
        std::cout << "  " << i.id << " (" << i.parameters << ", tolerance " << i.default_tolerance << ")\n      "
                  << i.summary << "\n";
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"High-precision generalized Hurwitz zeta / digamma library and modular-relation verifier"};
    app.require_subcommand(1);
    int prec = 0;
    app.add_option("--prec", prec, "working precision in decimal digits (default: XIMOD_PREC or 30)");

    auto* eval = app.add_subcommand("eval", "evaluate a function");
    std::string fname;
    eval->add_option("--function", fname, "function name (see list)")->required();
    eval->add_option("--prec", prec, "working precision in decimal digits");
    eval->allow_extras();

    VerifyOptions vo;
    auto* verify = app.add_subcommand("verify", "verify a modular relation");
    verify->add_option("--identity", vo.identity, "identity id (see list)")->required();
    verify->add_option("--alpha", vo.alpha, "alpha > 0; beta = 1/alpha");
    verify->add_option("--w", vo.w, "w, as re+imi");
    verify->add_option("--z", vo.z, "z, as re+imi");
    verify->add_option("--n", vo.n, "cosine frequency for ramanujan-1915");
    verify->add_option("--tol", vo.tol, "relative tolerance (default per identity)");
    verify->add_option("--terms", vo.terms, "direct terms of the m-indexed series");
    verify->add_option("--format", vo.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    verify->add_option("--out", vo.out, "output file");
    verify->add_option("--prec", prec, "working precision in decimal digits");

    ScanOptions so;
    auto* scan = app.add_subcommand("scan", "large-alpha scan of the generalized Xi-integral");
    scan->add_option("--z", so.z, "z with -1 < Re z < 1");
    scan->add_option("--w", so.w, "w");
    scan->add_option("--m", so.m, "expansion order m >= 1");
    scan->add_option("--alphas", so.alphas, "comma-separated alpha grid")->required();
    scan->add_option("--format", so.format, "csv or json")->check(CLI::IsMember({"json", "csv"}));
    scan->add_option("--out", so.out, "output file");
    scan->add_option("--prec", prec, "working precision in decimal digits");

    app.add_subcommand("list", "list functions and identities");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*eval) return run_eval(fname, eval->remaining(), prec);
        if (*verify) return run_verify(vo, prec);
        if (*scan) return run_scan(so, prec);
        return run_list();
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kDomain;
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kDomain;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDomain;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    }
}
