#include "dnlab/report.hpp"

#include <cmath>
#include <sstream>

#include "json.hpp"

namespace dnlab {

static std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

CheckEntry make_check(const std::string& identity, double lhs, double rhs, double tolerance,
                      std::vector<std::string> provenance) {
    CheckEntry e;
    e.identity = identity;
    e.lhs = fmt_double(lhs);
    e.rhs = fmt_double(rhs);
    e.abs_error = std::abs(lhs - rhs);
    double scale = std::max(std::abs(lhs), std::abs(rhs));
    e.relative_error = scale > 0 ? e.abs_error / scale : e.abs_error;
    e.tolerance = tolerance;
    e.pass = std::isfinite(lhs) && std::isfinite(rhs) && e.relative_error <= tolerance;
    e.provenance = std::move(provenance);
    return e;
}

CheckEntry make_bound_check(const std::string& identity, double measured, double bound,
                            std::vector<std::string> provenance) {
    CheckEntry e;
    e.identity = identity;
    e.lhs = fmt_double(measured);
    e.rhs = "<= " + fmt_double(bound);
    e.abs_error = measured;
    e.relative_error = measured;
    e.tolerance = bound;
    e.pass = std::isfinite(measured) && measured <= bound;
    e.provenance = std::move(provenance);
    return e;
}

CheckEntry make_exact_check(const std::string& identity, const std::string& lhs, const std::string& rhs,
                            bool pass, std::vector<std::string> provenance) {
    CheckEntry e;
    e.identity = identity;
    e.lhs = lhs;
    e.rhs = rhs;
    e.exact = true;
    e.pass = pass;
    e.provenance = std::move(provenance);
    return e;
}

std::string VerificationReport::to_json(int schema_version) const {
    nlohmann::ordered_json j;
    j["schema_version"] = schema_version;
    j["report"] = name;
    j["pass"] = all_pass();
    j["partial"] = partial;
    j["identities"] = nlohmann::ordered_json::array();
    for (auto& e : entries) {
        nlohmann::ordered_json ej;
        ej["identity"] = e.identity;
        ej["lhs"] = e.lhs;
        ej["rhs"] = e.rhs;
        if (!e.exact) {
            ej["abs_error"] = fmt_double(e.abs_error);
            ej["relative_error"] = fmt_double(e.relative_error);
            ej["tolerance"] = fmt_double(e.tolerance);
        } else {
            ej["exact"] = true;
        }
        ej["pass"] = e.pass;
        if (e.warning_only) ej["warning_only"] = true;
        ej["provenance"] = e.provenance;
        j["identities"].push_back(ej);
    }
    j["notes"] = notes;
    return j.dump(2);
}

std::string VerificationReport::to_csv() const {
    std::ostringstream os;
    os << "report,identity,lhs,rhs,abs_error,relative_error,tolerance,exact,pass,warning_only\n";
    auto esc = [](const std::string& s) {
        std::string out = "\"";
        for (char c : s) {
            if (c == '"') out += "\"\"";
            else out += c;
        }
        return out + "\"";
    };
    for (auto& e : entries) {
        os << esc(name) << ',' << esc(e.identity) << ',' << esc(e.lhs) << ',' << esc(e.rhs) << ','
           << fmt_double(e.abs_error) << ',' << fmt_double(e.relative_error) << ',' << fmt_double(e.tolerance)
           << ',' << (e.exact ? 1 : 0) << ',' << (e.pass ? 1 : 0) << ',' << (e.warning_only ? 1 : 0) << '\n';
    }
    return os.str();
}

} // namespace dnlab
