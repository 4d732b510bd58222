#pragma once
// Verification suites behind the command line tool, and the JSON report they
// fill.  Every suite appends entries in a fixed order, so two runs with the
// same configuration produce byte-identical reports.

#include "twy/zhelobenko.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace twy {

inline constexpr const char* kReportSchema = "twy-report/1";
inline constexpr const char* kToolVersion = "1.0.0";
// environment variable consulted for the default truncation order
inline constexpr const char* kDefaultKEnv = "TWY_K";

struct RunConfig {
    std::vector<CaseTag> cases{CaseTag::SpSo, CaseTag::SoSp};
    bool case_explicit = false;
    int m = 1, n = 1, l = 1, K = 4;
    std::string mu = "generic:1"; // "generic:<seed>" or a comma separated list of rationals
    std::vector<int> nu;          // empty: every nu with entries <= nu_max
    int nu_max = 2;
    std::string sigma;            // one-line signed permutation; empty: all of H_m
    int samples = 20;
    int cutoff = 3;
    int kmax = 1;                 // Yangian coefficients in the intertwining checks
};

int default_K();
nlohmann::json config_json(const RunConfig& c);

std::vector<Q> parse_q_list(const std::string& s);
std::vector<int> parse_int_list(const std::string& s);
SignedPerm parse_sigma(const std::string& s);
// labels for the case; throws GenericityError when explicit labels are not generic
std::vector<Q> resolve_mu(const RunConfig& c, CaseTag cs, int m);

struct Entry {
    std::string suite;
    nlohmann::json params;
    std::string check;
    std::string status; // pass, fail, skipped
    std::string witness;
    nlohmann::json data; // exact values worth keeping (multipliers, boxes, dimensions)
};

class Report {
public:
    explicit Report(RunConfig cfg) : cfg_(std::move(cfg)) {}
    void add(Entry e) { entries_.push_back(std::move(e)); }
    const std::vector<Entry>& entries() const { return entries_; }
    size_t count(const std::string& status) const;
    bool all_pass() const { return count("fail") == 0; }
    // witnesses longer than `cap` are cut; the full text goes to `dump_path`
    // when one is given
    nlohmann::json to_json(size_t cap = 2000, const std::string& dump_path = "") const;

private:
    RunConfig cfg_;
    std::vector<Entry> entries_;
};

const std::vector<std::string>& suite_names(); // without "all"
// throws ConfigError when the configuration cannot run the suite at all
void validate(const RunConfig& c, const std::string& suite);
void run_suite(const std::string& suite, const RunConfig& c, Report& rep);

} // namespace twy
