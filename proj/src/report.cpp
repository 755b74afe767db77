#include "zadic/report.hpp"

namespace zadic::report {

std::string to_string(Status s)
{
    switch (s) {
    case Status::Pass:
        return "pass";
    case Status::Fail:
        return "fail";
    case Status::Undecidable:
        return "undecidable";
    }
    return "fail";
}

void Report::check(const std::string& name, bool ok, const std::string& detail)
{
    checks.push_back({name, ok ? Status::Pass : Status::Fail, detail});
}

void Report::undecidable(const std::string& name, const std::string& reason)
{
    checks.push_back({name, Status::Undecidable, reason});
}

Status Report::status() const
{
    bool undecided = false;
    for (const auto& c : checks) {
        if (c.status == Status::Fail)
            return Status::Fail;
        undecided = undecided || c.status == Status::Undecidable;
    }
    return undecided ? Status::Undecidable : Status::Pass;
}

int Report::exit_code() const
{
    switch (status()) {
    case Status::Pass:
        return 0;
    case Status::Fail:
        return 1;
    case Status::Undecidable:
        return 3;
    }
    return 1;
}

json Report::to_json() const
{
    json j;
    j["schema_version"] = schema_version;
    j["tool"] = "zadic";
    j["version"] = tool_version;
    j["subcommand"] = subcommand;
    j["config"] = config;
    j["status"] = to_string(status());
    j["checks"] = json::array();
    for (const auto& c : checks)
        j["checks"].push_back({{"name", c.name}, {"status", to_string(c.status)}, {"detail", c.detail}});
    j["result"] = result;
    if (seconds)
        j["timing"] = {{"seconds", *seconds}};
    return j;
}

json element_json(const zariski::LocElement& x)
{
    json j;
    j["num"] = x.num().to_string();
    j["inv_power"] = x.inv_power();
    j["cert"] = x.cert().to_string();
    j["value"] = x.value().to_string();
    return j;
}

json schema()
{
    json status = {{"type", "string"}, {"enum", {"pass", "fail", "undecidable"}}};
    json check = {{"type", "object"},
                  {"required", {"name", "status", "detail"}},
                  {"additionalProperties", false},
                  {"properties",
                   {{"name", {{"type", "string"}}}, {"status", status}, {"detail", {{"type", "string"}}}}}};
    json s;
    s["$schema"] = "http://json-schema.org/draft-07/schema#";
    s["title"] = "zadic report";
    s["type"] = "object";
    s["required"] = {"schema_version", "tool", "version", "subcommand", "config", "status", "checks", "result"};
    s["additionalProperties"] = false;
    s["properties"] = {
        {"schema_version", {{"const", schema_version}}},
        {"tool", {{"const", "zadic"}}},
        {"version", {{"type", "string"}}},
        {"subcommand", {{"type", "string"}, {"enum", {"zar", "spa", "cech", "cex", "tensor", "quotient"}}}},
        {"config", {{"type", "object"}}},
        {"status", status},
        {"checks", {{"type", "array"}, {"items", check}}},
        {"result", {{"type", "object"}}},
        {"timing",
         {{"type", "object"},
          {"required", {"seconds"}},
          {"properties", {{"seconds", {{"type", "number"}, {"minimum", 0}}}}}}},
    };
    return s;
}

} // namespace zadic::report
