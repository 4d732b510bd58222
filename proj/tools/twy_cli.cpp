// twy: run the verification suites or dump computed images as JSON / CSV.
//
// exit codes: 0 all checks pass, 1 some check failed, 2 usage error,
// 3 genericity violation, 4 any other error

#include "twy/report.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

using namespace twy;
using nlohmann::json;

namespace {

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kGenericity = 3, kError = 4 };

struct Options {
    std::string case_name = "both";
    int m = 1, n = 1, l = 1, K = 0;
    std::string mu = "generic:1", nu, sigma, out;
    int samples = 20, cutoff = 3, nu_max = 2, kmax = 1;
    std::string suite = "all";
    // dump
    std::string what = "beta", format = "json";
    int i = 1, j = 1, k = 1;
};

void add_common(CLI::App* c, Options& o) {
    c->add_option("--case", o.case_name, "sp, so or both")->check(CLI::IsMember({"sp", "so", "both"}));
    c->add_option("--m", o.m, "rank of f_m");
    c->add_option("--n", o.n, "dimension of C^n");
    c->add_option("--l", o.l, "rank of gl_l");
    c->add_option("--K", o.K, std::string("truncation order (default from ") + kDefaultKEnv + ", else 4)");
    c->add_option("--mu", o.mu, "labels: generic:<seed> or a list like 1/3,2/7");
    c->add_option("--nu", o.nu, "row degrees, e.g. 1,2");
    c->add_option("--sigma", o.sigma, "signed permutation in one-line form, e.g. -1,2");
    c->add_option("--out", o.out, "output file");
}

RunConfig make_config(const Options& o) {
    RunConfig c;
    if (o.case_name == "sp") c.cases = {CaseTag::SpSo};
    else if (o.case_name == "so") c.cases = {CaseTag::SoSp};
    c.case_explicit = o.case_name != "both";
    c.m = o.m;
    c.n = o.n;
    c.l = o.l;
    c.K = o.K > 0 ? o.K : default_K();
    c.mu = o.mu;
    if (!o.nu.empty()) c.nu = parse_int_list(o.nu);
    c.nu_max = o.nu_max;
    c.sigma = o.sigma;
    c.samples = o.samples;
    c.cutoff = o.cutoff;
    c.kmax = o.kmax;
    return c;
}

void write_text(const std::string& path, std::string text) {
    if (text.empty() || text.back() != '\n') text += '\n';
    if (path.empty()) {
        std::cout << text << std::flush;
        return;
    }
    std::ofstream f(path);
    if (!f) throw ConfigError("cannot write " + path);
    f << text;
}

int do_run(const Options& o) {
    RunConfig c = make_config(o);
    std::vector<std::string> suites;
    if (o.suite == "all") suites = suite_names();
    else suites = {o.suite};
    for (const auto& s : suites) validate(c, s);
    Report rep(c);
    for (const auto& s : suites) {
        auto t0 = std::chrono::steady_clock::now();
        run_suite(s, c, rep);
        double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::cerr << "suite " << s << " done in " << dt << " s" << std::endl;
    }
    std::string dump = o.out.empty() ? "" : o.out + ".witness.txt";
    json j = rep.to_json(2000, dump);
    write_text(o.out, j.dump(2));
    for (const auto& e : rep.entries())
        if (e.status == "fail") std::cerr << "FAIL " << e.suite << ": " << e.check << std::endl;
    std::cerr << rep.count("pass") << " pass, " << rep.count("fail") << " fail, " << rep.count("skipped")
              << " skipped" << std::endl;
    return rep.all_pass() ? kPass : kFail;
}

json series_json(const Series& s) {
    json arr = json::array();
    for (int e = Series::kMinExp; e <= s.prec(); ++e)
        if (!s[e].is_zero()) arr.push_back({{"exponent", e}, {"value", s[e].dump()}});
    return arr;
}

json matrix_series_json(const SeriesMatrix& M) {
    json arr = json::array();
    for (size_t i = 0; i < M.size(); ++i)
        for (size_t j = 0; j < M.size(); ++j)
            arr.push_back({{"i", i + 1}, {"j", j + 1}, {"coefficients", series_json(M(i, j))}});
    return arr;
}

CaseTag single_case(const RunConfig& c) {
    if (c.cases.size() != 1) throw ConfigError("dump needs --case sp or --case so");
    return c.cases[0];
}

int do_dump(const Options& o) {
    RunConfig c = make_config(o);
    json j{{"schema", kReportSchema}, {"tool_version", kToolVersion}, {"what", o.what}, {"config", config_json(c)}};
    if (o.what == "alpha") {
        j["images"] = matrix_series_json(alpha_images(c.l, c.n, c.K).T);
    } else if (o.what == "beta" || o.what == "beta-tilde") {
        CaseTag cs = single_case(c);
        validate(c, "relations");
        const BetaImage& b = beta_cached(cs, c.m, c.n, c.K);
        j["images"] = matrix_series_json(o.what == "beta" ? b.S : tilde_beta_images(b, c.K));
    } else if (o.what == "action" || o.what == "intertwiner") {
        CaseTag cs = single_case(c);
        validate(c, "verma");
        auto mu = resolve_mu(c, cs, c.m);
        std::vector<int> nu = c.nu.empty() ? std::vector<int>(size_t(c.m), 1) : c.nu;
        FModuleParams p{cs, c.m, c.n, mu, delta_plus(c.m)};
        QMatrix M;
        if (o.what == "action") {
            ModuleEngine eng = coinvariant_engine(p);
            auto space = coinvariant_space(eng, nu);
            M = S_action_matrix(eng, o.i, o.j, o.k, space, c.K);
            j["basis"] = json::array();
            for (const auto& key : space.basis) j["basis"].push_back(pmono_str(key.second, c.n));
        } else {
            if (c.sigma.empty()) throw ConfigError("intertwiner needs --sigma");
            Zhelobenko Z(cs, c.m, c.n);
            SignedPerm s = parse_sigma(c.sigma);
            auto src = coinvariant_space(Z.engine(p), nu);
            std::vector<Poly> imgs;
            FModuleParams tp;
            for (const auto& key : src.basis) imgs.push_back(Z.xicheck_sigma(s, p, Poly{{key.second, Q(1)}}, &tp));
            // the image basis: monomials that occur, in order
            std::map<PMono, size_t> idx;
            for (const auto& im : imgs)
                for (const auto& kv : im) idx.emplace(kv.first, 0);
            size_t r = 0;
            for (auto& kv : idx) kv.second = r++;
            M = QMatrix(idx.size(), src.dim());
            for (size_t col = 0; col < imgs.size(); ++col)
                for (const auto& [e, cf] : imgs[col]) M(idx[e], col) = cf;
            j["word"] = word_str(canonical_reduced_word(s, cs));
            j["source"] = params_str(p);
            j["target"] = params_str(tp);
            j["target_basis"] = json::array();
            for (const auto& kv : idx) j["target_basis"].push_back(pmono_str(kv.first, c.n));
        }
        if (o.format == "csv") {
            write_text(o.out, matrix_csv(M));
            return kPass;
        }
        j["matrix"] = json::parse(matrix_json(M));
    } else {
        throw ConfigError("unknown dump target " + o.what);
    }
    write_text(o.out, j.dump(2));
    return kPass;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verification of Yangian images and Zhelobenko operators"};
    app.require_subcommand(1);
    Options o;

    auto* run = app.add_subcommand("run", "run verification suites and write a JSON report");
    add_common(run, o);
    std::vector<std::string> suites = suite_names();
    suites.push_back("all");
    run->add_option("--suite", o.suite, "suite to run")->check(CLI::IsMember(suites));
    run->add_option("--samples", o.samples, "samples per property");
    run->add_option("--cutoff", o.cutoff, "degree cutoff for the induced modules");
    run->add_option("--nu-max", o.nu_max, "largest row degree when --nu is not given");
    run->add_option("--kmax", o.kmax, "Yangian coefficients used by the intertwining checks");

    auto* dump = app.add_subcommand("dump", "dump images or matrices");
    add_common(dump, o);
    dump->add_option("--what", o.what, "alpha, beta, beta-tilde, action or intertwiner")
        ->check(CLI::IsMember({"alpha", "beta", "beta-tilde", "action", "intertwiner"}));
    dump->add_option("--format", o.format, "json or csv (matrices only)")->check(CLI::IsMember({"json", "csv"}));
    dump->add_option("--i", o.i, "row index of S_ij^(k)");
    dump->add_option("--j", o.j, "column index of S_ij^(k)");
    dump->add_option("--k", o.k, "coefficient k of S_ij^(k)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kPass : kUsage;
    }
    try {
        return run->parsed() ? do_run(o) : do_dump(o);
    } catch (const GenericityError& e) {
        std::cerr << "genericity violation: " << e.what() << std::endl;
        return kGenericity;
    } catch (const ConfigError& e) {
        std::cerr << "usage error: " << e.what() << std::endl;
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return kError;
    }
}
