#pragma once

#include <string>
#include <vector>

#include "hmx/semifree.hpp"

namespace hmx {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

bool all_pass(const std::vector<CheckResult>& checks);

// Identity suites shared by the CLI `verify` command and the acceptance run.
std::vector<CheckResult> suite_masser(mpfr_prec_t prec, unsigned long seed);
std::vector<CheckResult> suite_feq(mpfr_prec_t prec, unsigned long seed);
std::vector<CheckResult> suite_kernel(mpfr_prec_t prec, unsigned long seed, long trials);
std::vector<CheckResult> suite_gauss(mpfr_prec_t prec);
std::vector<CheckResult> suite_vandermonde();
std::vector<CheckResult> suite_hecke(mpfr_prec_t prec, unsigned long seed);
std::vector<CheckResult> suite_structure();

// Dispatch by suite name ("all" runs everything); throws InputError on an
// unknown name.
std::vector<CheckResult> run_suite(const std::string& name, mpfr_prec_t prec, unsigned long seed,
                                   long trials);

// Deterministic sample of a numeric point inside the requested domain, with
// small exact rational coordinates.
NumericPoint sample_domain_point(const QuadNum& w, DomainTag tag, mpfr_prec_t prec,
                                 unsigned long& state);

} // namespace hmx
