// command-line front end: parameter queries, verification runs, domain
// profiling, CSV emission, and the acceptance suite runner

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "snum/acceptance.hpp"
#include "snum/domain.hpp"
#include "snum/envelope.hpp"
#include "snum/exponents.hpp"
#include "snum/params.hpp"

namespace {

using namespace snum;

std::string g12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, ',')) out.push_back(cur);
    if (out.empty()) out.push_back(s);
    return out;
}

struct OutputSink {
    std::ofstream file;
    std::ostream* os = &std::cout;
    void open(const std::string& path) {
        if (path.empty()) return;
        file.open(path);
        if (!file) throw std::invalid_argument("cannot open output file '" + path + "'");
        os = &file;
    }
    std::ostream& out() { return *os; }
};

SNumberKind parse_kind(const std::string& s) {
    if (s == "weyl") return SNumberKind::Weyl;
    if (s == "approx" || s == "approximation") return SNumberKind::Approximation;
    if (s == "gelfand") return SNumberKind::Gelfand;
    if (s == "kolmogorov") return SNumberKind::Kolmogorov;
    throw std::invalid_argument("unknown kind '" + s + "'");
}

void emit_result_columns(std::ostream& os, const ExponentResult& r) {
    os << "," << r.case_id << ",";
    if (r.is_exact()) os << r.gamma.str() << "," << r.gamma.str();
    else if (r.is_sandwich()) os << r.lower_exp.str() << "," << r.upper_exp.str();
    else os << ",";
    os << "," << status_name(r.status) << "\n";
}

// ---------------------------------------------------------------------------

struct ExponentArgs {
    std::string kind = "all";
    std::string p1, q1 = "1", p2, q2 = "1";
    std::string delta, s1, s2, b;
    int d = 0;
    bool finite_measure = false;
    std::string out;
};

int run_exponent(const ExponentArgs& a) {
    std::vector<SNumberKind> kinds;
    if (a.kind == "all")
        kinds = {SNumberKind::Weyl, SNumberKind::Approximation, SNumberKind::Gelfand,
                 SNumberKind::Kolmogorov};
    else
        kinds = {parse_kind(a.kind)};

    const bool seq_mode = !a.delta.empty();
    if (seq_mode && (!a.s1.empty() || !a.s2.empty() || a.d != 0))
        throw std::invalid_argument("--delta (sequence model) excludes --s1/--s2/--d");
    if (!seq_mode && (a.s1.empty() || a.s2.empty() || a.d == 0))
        throw std::invalid_argument("need either --delta or all of --s1 --s2 --d");
    if (a.finite_measure && (seq_mode || !a.b.empty()))
        throw std::invalid_argument("--finite-measure pins b = d and needs function-space input");
    if (a.b.empty() && !a.finite_measure)
        throw std::invalid_argument("need --b (or --finite-measure with function-space input)");

    OutputSink sink;
    sink.open(a.out);
    std::ostream& os = sink.out();
    os << "p1,q1,s1,p2,q2,s2,d,b,kind,case,gamma_lower,gamma_upper,status\n";

    std::vector<std::string> bs = a.b.empty() ? std::vector<std::string>{""} : split_list(a.b);
    for (const std::string& p1s : split_list(a.p1))
        for (const std::string& q1s : split_list(a.q1))
            for (const std::string& p2s : split_list(a.p2))
                for (const std::string& q2s : split_list(a.q2))
                    for (const std::string& x1s : split_list(seq_mode ? a.delta : a.s1))
                        for (const std::string& x2s : seq_mode ? std::vector<std::string>{""}
                                                                : split_list(a.s2))
                            for (const std::string& bstr : bs) {
                                ExtReal p1 = ExtReal::parse(p1s), q1 = ExtReal::parse(q1s);
                                ExtReal p2 = ExtReal::parse(p2s), q2 = ExtReal::parse(q2s);
                                if (seq_mode) {
                                    SeqSpec spec;
                                    spec.p1 = p1;
                                    spec.q1 = q1;
                                    spec.p2 = p2;
                                    spec.q2 = q2;
                                    spec.delta = Rational::parse(x1s);
                                    spec.b = Rational::parse(bstr);
                                    for (SNumberKind k : kinds) {
                                        // d = 0 marks sequence-model rows; s1 carries delta
                                        os << p1.str() << "," << q1.str() << "," << spec.delta.str()
                                           << "," << p2.str() << "," << q2.str() << ",0,0,"
                                           << spec.b.str() << "," << kind_name(k);
                                        emit_result_columns(os, seq_exponent(spec, k));
                                    }
                                } else {
                                    EmbeddingParams pr;
                                    pr.p1 = p1;
                                    pr.q1 = q1;
                                    pr.p2 = p2;
                                    pr.q2 = q2;
                                    pr.s1 = Rational::parse(x1s);
                                    pr.s2 = Rational::parse(x2s);
                                    pr.d = a.d;
                                    Rational b = a.finite_measure && bstr.empty()
                                                     ? Rational(pr.d)
                                                     : Rational::parse(bstr);
                                    for (SNumberKind k : kinds) {
                                        ExponentResult r = a.finite_measure
                                                               ? finite_measure_exponent(pr, k)
                                                               : func_exponent(pr, b, k);
                                        os << p1.str() << "," << q1.str() << "," << pr.s1.str()
                                           << "," << p2.str() << "," << q2.str() << ","
                                           << pr.s2.str() << "," << pr.d << "," << b.str() << ","
                                           << kind_name(k);
                                        emit_result_columns(os, r);
                                    }
                                }
                            }
    return 0;
}

// ---------------------------------------------------------------------------

struct CompactArgs {
    std::string p1, q1 = "1", p2, q2 = "1";
    std::string delta, s1, s2, b;
    int d = 0;
};

int run_compact(const CompactArgs& a) {
    if (a.b.empty()) throw std::invalid_argument("need --b");
    Rational b = Rational::parse(a.b);
    if (!a.delta.empty()) {
        SeqSpec spec;
        spec.p1 = ExtReal::parse(a.p1);
        spec.q1 = ExtReal::parse(a.q1);
        spec.p2 = ExtReal::parse(a.p2);
        spec.q2 = ExtReal::parse(a.q2);
        spec.delta = Rational::parse(a.delta);
        spec.b = b;
        std::cout << (seq_compact(spec) ? "Compact" : "NotCompact") << "\n";
        return 0;
    }
    if (a.s1.empty() || a.s2.empty() || a.d == 0)
        throw std::invalid_argument("need --delta or all of --s1 --s2 --d");
    EmbeddingParams pr;
    pr.p1 = ExtReal::parse(a.p1);
    pr.q1 = ExtReal::parse(a.q1);
    pr.p2 = ExtReal::parse(a.p2);
    pr.q2 = ExtReal::parse(a.q2);
    pr.s1 = Rational::parse(a.s1);
    pr.s2 = Rational::parse(a.s2);
    pr.d = a.d;
    switch (func_compact(pr, b)) {
        case Compactness::Compact: std::cout << "Compact\n"; break;
        case Compactness::NotCompact: std::cout << "NotCompact\n"; break;
        case Compactness::Indeterminate: std::cout << "Indeterminate\n"; break;
    }
    return 0;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
    std::string kind;
    std::string p1, q1, p2, q2;
    std::string delta = "1", b = "1", eps;
    int Lmin = 4, Lmax = 10;
    double tol = 0.15;
    long long kmax = 4096;
    std::string out;
};

int run_verify(const VerifyArgs& a) {
    OutputSink sink;
    sink.open(a.out);
    std::ostream& os = sink.out();
    if (a.kind == "hilbert-all") {
        for (const std::string* s : {&a.p1, &a.q1, &a.p2, &a.q2})
            if (!s->empty() && ExtReal::parse(*s) != ExtReal(2))
                throw std::invalid_argument("hilbert-all requires p1=q1=p2=q2=2");
        HilbertReport rep =
            verify_hilbert(Rational::parse(a.delta), Rational::parse(a.b), a.kmax, a.tol);
        os << "k,lower,upper\n";
        for (auto& [k, v] : rep.points) os << k << "," << g12(v) << "," << g12(v) << "\n";
        os << (rep.pass ? "PASS" : "FAIL") << " predicted=" << rep.gamma.str()
           << " upper_slope=" << g12(rep.slope) << " lower_slope=" << g12(rep.slope)
           << " tol=" << g12(a.tol) << "\n";
        return rep.pass ? 0 : 1;
    }
    SNumberKind kind = parse_kind(a.kind);
    if (a.p1.empty() || a.p2.empty()) throw std::invalid_argument("need --p1 and --p2");
    SeqSpec spec;
    spec.p1 = ExtReal::parse(a.p1);
    spec.q1 = ExtReal::parse(a.q1.empty() ? "1" : a.q1);
    spec.p2 = ExtReal::parse(a.p2);
    spec.q2 = ExtReal::parse(a.q2.empty() ? "1" : a.q2);
    spec.delta = Rational::parse(a.delta);
    spec.b = Rational::parse(a.b);
    std::optional<Rational> eps;
    if (!a.eps.empty()) eps = Rational::parse(a.eps);
    VerifyReport rep = verify_exponent(spec, kind, a.Lmin, a.Lmax, eps, a.tol);
    os << "k,lower,upper\n";
    for (std::size_t i = 0; i < rep.envelope.points_lower.size(); ++i) {
        auto& lo = rep.envelope.points_lower[i];
        auto& up = rep.envelope.points_upper[i];
        os << lo.first << "," << g12(lo.second) << ",\n";
        os << up.first << ",," << g12(up.second) << "\n";
    }
    std::string predicted = rep.predicted.is_exact()
                                ? rep.predicted.gamma.str()
                                : rep.predicted.lower_exp.str() + ".." + rep.predicted.upper_exp.str();
    os << (rep.pass ? "PASS" : "FAIL") << " predicted=" << predicted
       << " upper_slope=" << g12(rep.upper_fit.slope)
       << " lower_slope=" << g12(rep.lower_fit.slope) << " tol=" << g12(a.tol) << "\n";
    return rep.pass ? 0 : 1;
}

// ---------------------------------------------------------------------------

struct DomainArgs {
    std::string file;
    int jmax = 10;
    std::string out;
};

int run_domain(const DomainArgs& a) {
    std::ifstream in(a.file);
    if (!in) throw std::invalid_argument("cannot open domain file '" + a.file + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    DyadicDomain dom = parse_domain_text(buf.str());
    int jmax = a.jmax;
    // beyond the last generation the declared growth no longer governs
    if (auto* c = std::get_if<CubeChain>(&dom.shape)) jmax = std::min(jmax, c->generations);
    if (jmax < 4) {
        std::cerr << "domain: too few levels to fit a growth exponent (need >= 4)\n";
        return 3;
    }
    PackingProfile prof = packing_profile(dom, jmax);
    OutputSink sink;
    sink.open(a.out);
    std::ostream& os = sink.out();
    os << "j,b_j,log2_bj,ratio\n";
    for (auto& [j, b_j] : prof.entries) {
        os << j << "," << b_j << ",";
        if (b_j > 0)
            os << g12(std::log2((double)b_j)) << ","
               << g12(std::exp2(std::log2((double)b_j) - prof.b_hat * j));
        else
            os << ",";
        os << "\n";
    }
    os << "b_hat=" << g12(prof.b_hat) << " bj_condition=" << (prof.bj_condition ? "true" : "false")
       << " ratio_min=" << g12(prof.ratio_range.first) << " ratio_max="
       << g12(prof.ratio_range.second) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"s-number asymptotics of weighted block-sequence embeddings and dyadic box packing"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "key = value file; entries override flags");

    ExponentArgs ea;
    CompactArgs ca;
    VerifyArgs va;
    DomainArgs da;
    unsigned seed = 12345;

    CLI::App* cmd_exponent = app.add_subcommand("exponent", "decay-exponent table lookup, CSV output");
    cmd_exponent->fallthrough();
    cmd_exponent->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    cmd_exponent->add_option("--kind", ea.kind, "weyl|approx|gelfand|kolmogorov|all");
    cmd_exponent->add_option("--p1", ea.p1, "source integrability (rational or inf; comma list sweeps)")->required();
    cmd_exponent->add_option("--q1", ea.q1, "source fine index");
    cmd_exponent->add_option("--p2", ea.p2, "target integrability")->required();
    cmd_exponent->add_option("--q2", ea.q2, "target fine index");
    cmd_exponent->add_option("--delta", ea.delta, "weight exponent (sequence model)");
    cmd_exponent->add_option("--s1", ea.s1, "source smoothness (function-space model)");
    cmd_exponent->add_option("--s2", ea.s2, "target smoothness");
    cmd_exponent->add_option("--d", ea.d, "ambient dimension");
    cmd_exponent->add_option("--b", ea.b, "box-packing growth exponent");
    cmd_exponent->add_flag("--finite-measure", ea.finite_measure, "finite-measure domain (b = d)");
    cmd_exponent->add_option("--out", ea.out, "CSV output path (default stdout)");

    CLI::App* cmd_compact = app.add_subcommand("compact", "compactness status of one embedding");
    cmd_compact->fallthrough();
    cmd_compact->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    cmd_compact->add_option("--p1", ca.p1)->required();
    cmd_compact->add_option("--q1", ca.q1);
    cmd_compact->add_option("--p2", ca.p2)->required();
    cmd_compact->add_option("--q2", ca.q2);
    cmd_compact->add_option("--delta", ca.delta, "sequence model weight exponent");
    cmd_compact->add_option("--s1", ca.s1);
    cmd_compact->add_option("--s2", ca.s2);
    cmd_compact->add_option("--d", ca.d);
    cmd_compact->add_option("--b", ca.b)->required();

    CLI::App* cmd_verify = app.add_subcommand("verify", "envelope slope verification of a predicted exponent");
    cmd_verify->fallthrough();
    cmd_verify->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    cmd_verify->add_option("--kind", va.kind, "weyl|gelfand|hilbert-all")->required();
    cmd_verify->add_option("--p1", va.p1);
    cmd_verify->add_option("--q1", va.q1);
    cmd_verify->add_option("--p2", va.p2);
    cmd_verify->add_option("--q2", va.q2);
    cmd_verify->add_option("--delta", va.delta);
    cmd_verify->add_option("--b", va.b);
    cmd_verify->add_option("--eps", va.eps, "allocation parameter (default: window midpoint)");
    cmd_verify->add_option("--Lmin", va.Lmin, "lowest cut level");
    cmd_verify->add_option("--Lmax", va.Lmax, "highest cut level");
    cmd_verify->add_option("--tol", va.tol, "slope tolerance");
    cmd_verify->add_option("--kmax", va.kmax, "largest index (hilbert-all)");
    cmd_verify->add_option("--out", va.out, "CSV output path (default stdout)");

    CLI::App* cmd_domain = app.add_subcommand("domain", "box-packing profile of a described domain");
    cmd_domain->fallthrough();
    cmd_domain->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    cmd_domain->add_option("--file", da.file, "domain description file")->required();
    cmd_domain->add_option("--jmax", da.jmax, "deepest level to count");
    cmd_domain->add_option("--out", da.out, "CSV output path (default stdout)");

    CLI::App* cmd_suite = app.add_subcommand("suite", "run the acceptance suite");
    cmd_suite->fallthrough();
    cmd_suite->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    cmd_suite->add_option("--seed", seed, "seed for the randomized sweeps");

    // config file entries are appended after the user's flags; with the
    // take-last policy they override them
    std::vector<std::string> args(argv + 1, argv + argc);
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) config_path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0) config_path = args[i].substr(9);
    }
    if (!config_path.empty()) {
        std::ifstream cf(config_path);
        if (!cf) {
            std::cerr << "cannot open config file '" << config_path << "'\n";
            return 2;
        }
        std::string line;
        auto trim = [](std::string s) {
            std::size_t a = s.find_first_not_of(" \t\r");
            std::size_t b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        int lineno = 0;
        while (std::getline(cf, line)) {
            ++lineno;
            std::string t = trim(line);
            if (t.empty() || t[0] == '#') continue;
            std::size_t eq = t.find('=');
            std::string key = eq == std::string::npos ? "" : trim(t.substr(0, eq));
            if (key.empty()) {
                std::cerr << config_path << ":" << lineno << ": expected key = value\n";
                return 2;
            }
            args.push_back("--" + key + "=" + trim(t.substr(eq + 1)));
        }
    }

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(cmd_exponent)) return run_exponent(ea);
        if (app.got_subcommand(cmd_compact)) return run_compact(ca);
        if (app.got_subcommand(cmd_verify)) return run_verify(va);
        if (app.got_subcommand(cmd_domain)) return run_domain(da);
        if (app.got_subcommand(cmd_suite))
            return snum::run_acceptance_suite(std::cout, seed) == 0 ? 0 : 1;
    } catch (const untestable_error& e) {
        std::cerr << "untestable: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
