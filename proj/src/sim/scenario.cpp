/*
 * Copyright (C) 2026 The Permdrift Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "permdrift/errors.hpp"
#include "permdrift/io/jsonl.hpp"
#include "permdrift/sim/grant.hpp"
#include "permdrift/util/text.hpp"

namespace permdrift {

namespace {

ApkFacts app_from_scenario_json(const Json& j) {
    ApkFacts facts;
    facts.package_name = j.at("package_name").get<std::string>();
    facts.version_code = j.value("version_code", 0LL);
    for (const auto& p : j.value("requested_permissions", Json::array())) {
        facts.requested_permissions.insert(p.get<std::string>());
    }
    for (const auto& d : j.value("permission_defs", Json::array())) {
        PermissionDef def;
        def.name = d.at("name").get<std::string>();
        std::string level = d.value("protection_level", "normal");
        def.explicit_level = d.contains("protection_level");
        def.protection_level = parse_protection_level(level);
        facts.permission_defs.push_back(std::move(def));
    }
    return facts;
}

} // namespace

ScenarioResult run_scenario(std::string_view jsonl_text, const GroupCatalog& catalog,
                            int year) {
    GrantSimulator sim(catalog, year);
    for (const auto& raw_line : split(jsonl_text, '\n')) {
        std::string_view line = trim(raw_line);
        if (line.empty()) continue;
        Json j = Json::parse(line);
        std::string event = j.at("event").get<std::string>();
        if (event == "install") {
            sim.install(app_from_scenario_json(j.at("app")));
        } else if (event == "update") {
            sim.update(app_from_scenario_json(j.at("app")));
        } else if (event == "user_grant") {
            sim.user_grant(j.at("package").get<std::string>(),
                           j.at("permission").get<std::string>());
        } else if (event == "revoke_group") {
            sim.revoke_group(j.at("package").get<std::string>(),
                             j.at("group").get<std::string>());
        } else {
            throw Error("unknown scenario event: " + event);
        }
    }
    return {sim.state()};
}

} // namespace permdrift
