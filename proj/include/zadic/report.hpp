#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zadic/descriptor.hpp"
#include "zadic/zariski.hpp"

namespace zadic::report {

using json = descriptor::json;

inline constexpr int schema_version = 1;
inline constexpr const char* tool_version = "0.1.0";

enum class Status { Pass, Fail, Undecidable };
std::string to_string(Status s);

struct Check {
    std::string name;
    Status status = Status::Pass;
    std::string detail;
};

struct Report {
    std::string subcommand;
    json config = json::object();
    std::vector<Check> checks;
    json result = json::object();
    std::optional<double> seconds; // only with --timing; reports are otherwise byte-stable

    void check(const std::string& name, bool ok, const std::string& detail = "");
    void undecidable(const std::string& name, const std::string& reason);
    Status status() const;
    // 0 pass, 1 some check failed, 3 undecidable (and nothing failed).
    int exit_code() const;
    json to_json() const;
};

json element_json(const zariski::LocElement& x);

// JSON schema (draft-07) of Report::to_json.
json schema();

} // namespace zadic::report
