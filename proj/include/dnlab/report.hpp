#pragma once

#include <string>
#include <vector>

namespace dnlab {

// One verified identity: measured left/right values, error, tolerance and
// where each constant came from. Exact checks set exact=true and carry the
// values as strings.
struct CheckEntry {
    std::string identity;
    std::string lhs;
    std::string rhs;
    double abs_error = 0.0;
    double relative_error = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    bool exact = false;
    bool warning_only = false;
    std::vector<std::string> provenance;
};

struct VerificationReport {
    std::string name;
    std::vector<CheckEntry> entries;
    std::vector<std::string> notes;
    bool partial = false;

    void add(CheckEntry e) { entries.push_back(std::move(e)); }
    void note(const std::string& s) { notes.push_back(s); }

    bool all_pass() const {
        for (auto& e : entries)
            if (!e.pass && !e.warning_only) return false;
        return true;
    }
    size_t failure_count() const {
        size_t n = 0;
        for (auto& e : entries)
            if (!e.pass && !e.warning_only) ++n;
        return n;
    }

    std::string to_json(int schema_version = 1) const;
    std::string to_csv() const;
};

// Numeric check helper: fills errors and pass from values.
CheckEntry make_check(const std::string& identity, double lhs, double rhs, double tolerance,
                      std::vector<std::string> provenance = {});
// Measured quantity against an absolute bound (max deviations and the like).
CheckEntry make_bound_check(const std::string& identity, double measured, double bound,
                            std::vector<std::string> provenance = {});
// Exact check helper: pass must be decided by the caller.
CheckEntry make_exact_check(const std::string& identity, const std::string& lhs, const std::string& rhs,
                            bool pass, std::vector<std::string> provenance = {});

// Deterministic 64-bit generator (splitmix64); used wherever "seeded
// sample points" are required so reports are reproducible.
struct SplitMix64 {
    unsigned long long state;
    explicit SplitMix64(unsigned long long seed = 0) : state(seed) {}
    unsigned long long next() {
        unsigned long long z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    // uniform in [0,1)
    double next_double() { return double(next() >> 11) * 0x1.0p-53; }
    // uniform integer in [0, n)
    unsigned long long next_below(unsigned long long n) { return next() % n; }
};

} // namespace dnlab
