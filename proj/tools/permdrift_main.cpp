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

#include <atomic>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "permdrift/apk/manifest.hpp"
#include "permdrift/apk/zip.hpp"
#include "permdrift/dex/attribution.hpp"
#include "permdrift/dex/callsites.hpp"
#include "permdrift/dex/providers.hpp"
#include "permdrift/errors.hpp"
#include "permdrift/expansion/expansion.hpp"
#include "permdrift/groups/catalog.hpp"
#include "permdrift/io/jsonl.hpp"
#include "permdrift/io/metadata.hpp"
#include "permdrift/links/links.hpp"
#include "permdrift/report/report.hpp"
#include "permdrift/sim/grant.hpp"
#include "permdrift/sim/monitor.hpp"
#include "permdrift/stats/stats.hpp"
#include "permdrift/util/sha256.hpp"
#include "permdrift/util/text.hpp"

namespace fs = std::filesystem;
using namespace permdrift;

namespace {

constexpr int kExitInternal = 1;
constexpr int kExitBadInput = 2;

struct CommonPaths {
    std::string out_dir = "out";
    std::string catalog_path; // empty: built-in catalog
    std::string sdk_prefixes; // empty: built-in list
    std::string keywords;     // empty: built-in map
    std::string aosp_list;    // empty: built-in list
    unsigned workers = 1;
};

GroupCatalog load_catalog_or_builtin(const std::string& path) {
    return path.empty() ? builtin_group_catalog() : GroupCatalog::load(path);
}

void write_text(const fs::path& path, const std::string& text) {
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path.string());
    out << text;
}

void parallel_for(size_t count, unsigned workers, const std::function<void(size_t)>& fn) {
    workers = std::max(1u, workers);
    if (workers == 1 || count < 2) {
        for (size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (size_t w = 0; w < std::min<size_t>(workers, count); ++w) {
        pool.emplace_back([&] {
            while (true) {
                size_t i = next.fetch_add(1);
                if (i >= count) return;
                fn(i);
            }
        });
    }
    for (auto& t : pool) t.join();
}

Bytes read_file_bytes(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MissingInput("cannot open " + path.string());
    return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

std::vector<fs::path> list_apks(const std::string& dir) {
    std::vector<fs::path> files;
    if (!fs::is_directory(dir)) throw MissingInput("not a directory: " + dir);
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file()) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    return files;
}

std::vector<ApkFacts> load_facts(const std::string& out_dir) {
    std::vector<ApkFacts> facts;
    for (const auto& j : read_jsonl((fs::path(out_dir) / "facts.jsonl").string())) {
        facts.push_back(apk_facts_from_json(j));
    }
    return facts;
}

std::vector<ExpansionEvent> load_events(const std::string& out_dir) {
    std::vector<ExpansionEvent> events;
    for (const auto& j : read_jsonl((fs::path(out_dir) / "events.jsonl").string())) {
        events.push_back(expansion_event_from_json(j));
    }
    return events;
}

// --- scan -------------------------------------------------------------

int cmd_scan(const CommonPaths& paths, const std::string& input_dir,
             const std::string& metadata_csv) {
    MetadataIndex metadata;
    if (!metadata_csv.empty()) metadata = MetadataIndex::load(metadata_csv);

    auto files = list_apks(input_dir);
    std::vector<std::optional<Json>> parsed(files.size());
    std::vector<std::string> errors(files.size());

    parallel_for(files.size(), paths.workers, [&](size_t i) {
        try {
            Bytes bytes = read_file_bytes(files[i]);
            std::string sha = sha256_hex(ByteView(bytes));
            const MetaRow* row = metadata.find(sha);
            std::optional<MetaRow> meta;
            if (row) meta = *row;
            parsed[i] = to_json(parse_apk(ByteView(bytes), meta));
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    });

    std::vector<Json> lines;
    std::string error_log;
    for (size_t i = 0; i < files.size(); ++i) {
        if (parsed[i]) {
            lines.push_back(std::move(*parsed[i]));
        } else {
            error_log += files[i].filename().string() + "\t" + errors[i] + "\n";
        }
    }

    fs::create_directories(paths.out_dir);
    write_jsonl((fs::path(paths.out_dir) / "facts.jsonl").string(), lines);
    write_text(fs::path(paths.out_dir) / "scan_errors.log", error_log);

    std::cout << "scan: " << lines.size() << " parsed, " << files.size() - lines.size()
              << " failed\n";
    return lines.empty() ? kExitBadInput : 0;
}

// --- expand -----------------------------------------------------------

int cmd_expand(const CommonPaths& paths) {
    GroupCatalog catalog = load_catalog_or_builtin(paths.catalog_path);
    auto chains = build_chains(load_facts(paths.out_dir));

    std::vector<std::vector<ExpansionEvent>> per_chain(chains.chains.size());
    parallel_for(chains.chains.size(), paths.workers,
                 [&](size_t i) { per_chain[i] = detect_expansions(chains.chains[i], catalog); });

    std::vector<ExpansionEvent> events;
    for (auto& chunk : per_chain) {
        events.insert(events.end(), chunk.begin(), chunk.end());
    }

    std::vector<Json> lines;
    lines.reserve(events.size());
    for (const auto& event : events) lines.push_back(to_json(event));
    write_jsonl((fs::path(paths.out_dir) / "events.jsonl").string(), lines);
    write_text(fs::path(paths.out_dir) / "expand_summary.json",
               to_json(aggregate(events, chains)).dump(2) + "\n");

    std::cout << "expand: " << chains.chains.size() << " chains, " << events.size()
              << " events\n";
    return 0;
}

// --- stats ------------------------------------------------------------

int cmd_stats(const CommonPaths& paths, int threshold, std::vector<int> sweep) {
    VtLabelConfig config;
    config.threshold = threshold;
    if (!sweep.empty()) config.sweep = std::move(sweep);
    validate(config);

    auto chains = build_chains(load_facts(paths.out_dir));
    auto events = load_events(paths.out_dir);
    auto labels = label_apps(chains, events);

    StratificationConfig strat;
    std::vector<int> all = config.sweep;
    if (std::find(all.begin(), all.end(), config.threshold) == all.end()) {
        all.push_back(config.threshold);
    }
    auto entries = threshold_sweep(labels, all, strat);

    Json primary;
    for (const auto& entry : entries) {
        if (entry.threshold == config.threshold) primary = to_json(entry);
    }
    write_text(fs::path(paths.out_dir) / "stats.json", primary.dump(2) + "\n");
    write_text(fs::path(paths.out_dir) / "sweep.csv", render_sweep_csv(entries));
    write_text(fs::path(paths.out_dir) / "strata.csv",
               render_stratified_csv(stratify(labels, config.threshold, strat), strat));

    std::cout << "stats: " << entries.size() << " thresholds\n";
    return 0;
}

// --- custom -----------------------------------------------------------

Json custom_summary_json(const CustomClassification& classification) {
    Json j;
    j["total_records"] = classification.records.size();
    j["level_histogram"] = classification.level_histogram;
    j["normal_component_breakdown"] = classification.normal_component_breakdown;
    return j;
}

int cmd_custom(const CommonPaths& paths) {
    AospPermissionList aosp = paths.aosp_list.empty() ? builtin_aosp_permissions()
                                                      : AospPermissionList::load(paths.aosp_list);
    auto facts = load_facts(paths.out_dir);
    auto classification = classify_custom(facts, aosp);

    std::vector<Json> lines;
    for (const auto& record : classification.records) {
        Json j;
        j["name"] = record.name;
        j["protection_level"] = to_string(record.protection_level);
        j["explicit_level"] = record.explicit_level;
        j["defining_package"] = record.defining_package;
        j["cert_digest"] = record.cert_digest ? Json(*record.cert_digest) : Json(nullptr);
        j["attached"] = record.attached();
        Json components = Json::array();
        for (const auto& c : record.guarded_components) {
            Json cj;
            cj["kind"] = to_string(c.kind);
            cj["class_name"] = c.class_name;
            cj["authorities"] = c.authorities;
            components.push_back(std::move(cj));
        }
        j["guarded_components"] = std::move(components);
        lines.push_back(std::move(j));
    }
    write_jsonl((fs::path(paths.out_dir) / "custom_permissions.jsonl").string(), lines);
    write_text(fs::path(paths.out_dir) / "custom_summary.json",
               custom_summary_json(classification).dump(2) + "\n");

    std::cout << "custom: " << classification.records.size() << " records\n";
    return 0;
}

// --- pairs ------------------------------------------------------------

std::vector<Bytes> dex_entries(const Bytes& apk_bytes) {
    ZipReader zip((ByteView(apk_bytes)));
    std::vector<std::string> names;
    for (const auto& entry : zip.entries()) {
        if (entry.name.starts_with("classes") && entry.name.ends_with(".dex")) {
            names.push_back(entry.name);
        }
    }
    std::sort(names.begin(), names.end());
    std::vector<Bytes> out;
    for (const auto& name : names) {
        if (auto bytes = zip.read(name)) out.push_back(std::move(*bytes));
    }
    return out;
}

int cmd_pairs(const CommonPaths& paths, const std::string& input_dir) {
    AospPermissionList aosp = paths.aosp_list.empty() ? builtin_aosp_permissions()
                                                      : AospPermissionList::load(paths.aosp_list);
    SdkPrefixList prefixes = paths.sdk_prefixes.empty() ? builtin_sdk_prefixes()
                                                        : SdkPrefixList::load(paths.sdk_prefixes);
    KeywordMap keywords =
        paths.keywords.empty() ? builtin_keyword_map() : KeywordMap::load(paths.keywords);

    auto facts = load_facts(paths.out_dir);
    auto classification = classify_custom(facts, aosp);
    auto eligible = eligible_providers(classification);

    // Index APK files by content digest so DEX code can be pulled for
    // exactly the packages that need it.
    std::map<std::string, fs::path> by_sha;
    for (const auto& path : list_apks(input_dir)) {
        by_sha[sha256_hex(ByteView(read_file_bytes(path)))] = path;
    }
    auto latest_apk_for = [&](const std::string& package) -> const ApkFacts* {
        const ApkFacts* best = nullptr;
        for (const auto& f : facts) {
            if (f.package_name != package) continue;
            if (!best || f.version_code > best->version_code ||
                (f.version_code == best->version_code && f.sha256 > best->sha256)) {
                best = &f;
            }
        }
        return best;
    };

    // Requesting side: packages that declare an eligible permission name.
    std::set<std::string> wanted_permissions;
    for (const auto& e : eligible) wanted_permissions.insert(e.permission_name);
    std::set<std::string> requester_packages;
    for (const auto& f : facts) {
        for (const auto& p : f.requested_permissions) {
            if (wanted_permissions.count(p)) requester_packages.insert(f.package_name);
        }
    }

    std::map<std::string, std::vector<CallSite>> call_sites;
    std::vector<std::string> requester_list(requester_packages.begin(),
                                            requester_packages.end());
    std::vector<std::vector<CallSite>> per_requester(requester_list.size());
    parallel_for(requester_list.size(), paths.workers, [&](size_t i) {
        const ApkFacts* apk = latest_apk_for(requester_list[i]);
        if (!apk) return;
        auto file = by_sha.find(apk->sha256);
        if (file == by_sha.end()) return;
        auto result = scan_call_sites(dex_entries(read_file_bytes(file->second)));
        for (auto& site : result.call_sites) {
            site.attribution =
                attribute_call_site(site.declaring_class, requester_list[i], prefixes);
        }
        per_requester[i] = std::move(result.call_sites);
    });
    for (size_t i = 0; i < requester_list.size(); ++i) {
        if (!per_requester[i].empty()) call_sites[requester_list[i]] = per_requester[i];
    }

    auto pairs = link_pairs(eligible, facts, call_sites);

    // Declaring side: recover column constants for each linked provider.
    std::map<std::string, ProviderSensitivity> sensitivity_cache;
    for (auto& pair : pairs) {
        const std::string& provider_class = pair.exploitable.sensitivity.provider_class;
        std::string cache_key = pair.exploitable.package + "/" + provider_class;
        auto cached = sensitivity_cache.find(cache_key);
        if (cached == sensitivity_cache.end()) {
            ProviderSensitivity sensitivity;
            sensitivity.provider_class = provider_class;
            const ApkFacts* apk = latest_apk_for(pair.exploitable.package);
            if (apk) {
                auto file = by_sha.find(apk->sha256);
                if (file != by_sha.end()) {
                    try {
                        sensitivity = extract_provider_columns(
                            dex_entries(read_file_bytes(file->second)), provider_class);
                    } catch (const Error&) {
                        // missing class or undecodable DEX: keep the empty record
                    }
                }
            }
            cached = sensitivity_cache.emplace(cache_key, std::move(sensitivity)).first;
        }
        categorize_pair(pair, cached->second, keywords);
    }

    std::vector<Json> lines;
    for (const auto& pair : pairs) lines.push_back(to_json(pair));
    write_jsonl((fs::path(paths.out_dir) / "pairs.jsonl").string(), lines);

    auto roles = role_counts(pairs);
    Json summary;
    summary["pairs"] = pairs.size();
    summary["exploitable_only"] = roles.exploitable_only;
    summary["exploiting_only"] = roles.exploiting_only;
    summary["both_roles"] = roles.both_roles;
    write_text(fs::path(paths.out_dir) / "pairs_summary.json", summary.dump(2) + "\n");

    std::cout << "pairs: " << pairs.size() << " linked\n";
    return 0;
}

// --- simulate / monitor -------------------------------------------------

int cmd_simulate(const CommonPaths& paths, const std::string& scenario_path, int year) {
    GroupCatalog catalog = load_catalog_or_builtin(paths.catalog_path);
    std::ifstream in(scenario_path, std::ios::binary);
    if (!in) throw MissingInput("cannot open scenario: " + scenario_path);
    std::ostringstream buf;
    buf << in.rdbuf();
    auto result = run_scenario(buf.str(), catalog, year);
    write_text(fs::path(paths.out_dir) / "simulation.json",
               to_json(result.state).dump(2) + "\n");
    std::cout << "simulate: " << result.state.prompt_log.size() << " prompt events\n";
    return 0;
}

int cmd_monitor(const CommonPaths& paths, const std::string& log_path,
                const std::string& labels_path) {
    GroupCatalog catalog = load_catalog_or_builtin(paths.catalog_path);
    PermissionLabels labels =
        labels_path.empty() ? builtin_permission_labels() : PermissionLabels::load(labels_path);
    std::vector<PackageEvent> events;
    for (const auto& j : read_jsonl(log_path)) events.push_back(package_event_from_json(j));

    UpdateMonitor monitor(catalog, labels);
    MonitorState state;
    auto summary = monitor.replay_log(state, events);

    std::vector<Json> lines;
    for (const auto& record : state.notifications) lines.push_back(to_json(record));
    write_jsonl((fs::path(paths.out_dir) / "notifications.jsonl").string(), lines);
    write_text(fs::path(paths.out_dir) / "notifications.txt",
               render_notifications(state.notifications));
    write_text(fs::path(paths.out_dir) / "monitor_summary.json",
               to_json(summary).dump(2) + "\n");

    std::cout << "monitor: " << summary.notification_count << " notifications\n";
    return 0;
}

// --- report -------------------------------------------------------------

int cmd_report(const CommonPaths& paths, int threshold) {
    fs::path out(paths.out_dir);
    fs::path report = out / "report";
    for (const char* required : {"facts.jsonl", "events.jsonl"}) {
        if (!fs::exists(out / required)) {
            throw MissingInput("report input missing: " + (out / required).string());
        }
    }

    PermissionLabels labels = builtin_permission_labels();
    auto facts = load_facts(paths.out_dir);
    auto events = load_events(paths.out_dir);

    AospPermissionList aosp = paths.aosp_list.empty() ? builtin_aosp_permissions()
                                                      : AospPermissionList::load(paths.aosp_list);
    auto classification = classify_custom(facts, aosp);

    auto chains = build_chains(std::move(facts));
    auto summary = aggregate(events, chains);
    auto flows = flow_table(events);

    write_text(report / "flows.txt", render_flow_tables(flows, labels));
    write_text(report / "flows.csv", render_flow_csv(flows));
    write_text(report / "group_volume.txt", render_group_volume(summary));
    write_text(report / "group_volume.csv", render_group_volume_csv(summary));
    write_text(report / "yearly_trend.csv", render_yearly_trend_csv(summary));

    auto app_labels = label_apps(chains, events);
    StratificationConfig strat;
    VtLabelConfig config;
    config.threshold = threshold;
    std::vector<int> all = config.sweep;
    if (std::find(all.begin(), all.end(), threshold) == all.end()) all.push_back(threshold);
    auto entries = threshold_sweep(app_labels, all, strat);
    write_text(report / "threshold_sweep.csv", render_sweep_csv(entries));
    write_text(report / "stats.txt", render_stats_text(entries, threshold));
    auto strata = stratify(app_labels, threshold, strat);
    write_text(report / "stratified_or.txt", render_stratified(strata, strat));
    write_text(report / "stratified_or.csv", render_stratified_csv(strata, strat));

    write_text(report / "custom_permissions.txt", render_custom_panels(classification));
    write_text(report / "custom_permissions.csv", render_custom_csv(classification));

    if (fs::exists(out / "pairs.jsonl")) {
        std::vector<CrossDevPair> pairs;
        for (const auto& j : read_jsonl((out / "pairs.jsonl").string())) {
            CrossDevPair pair;
            pair.permission_name = j.value("permission_name", "");
            std::string category = j.value("category", "uncategorized");
            for (int c = 0; c <= static_cast<int>(Category::settings); ++c) {
                if (category == to_string(static_cast<Category>(c))) {
                    pair.category = static_cast<Category>(c);
                }
            }
            if (j.contains("type") && !j["type"].is_null()) {
                pair.type = j["type"] == "A" ? PairType::A : PairType::B;
            }
            if (j.contains("aosp_gate") && !j["aosp_gate"].is_null()) {
                pair.aosp_gate = j["aosp_gate"].get<std::string>();
            }
            pairs.push_back(std::move(pair));
        }
        write_text(report / "categories.txt", render_category_table(pairs));
        write_text(report / "categories.csv", render_category_csv(pairs));
    }

    if (fs::exists(out / "monitor_summary.json")) {
        std::ifstream in(out / "monitor_summary.json");
        Json j = Json::parse(in);
        ReplaySummary monitor_summary;
        monitor_summary.notification_count = j.value("notification_count", size_t{0});
        monitor_summary.distinct_packages = j.value("distinct_packages", size_t{0});
        monitor_summary.span_days = j.value("span_days", 0.0);
        if (j.contains("mean_gap_days") && !j["mean_gap_days"].is_null()) {
            monitor_summary.mean_gap_days = j["mean_gap_days"].get<double>();
        }
        write_text(report / "monitor_summary.txt", render_monitor_summary(monitor_summary));
    }

    std::cout << "report: written to " << report.string() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Android permission-group expansion and custom-permission analysis"};
    app.require_subcommand(1);

    CommonPaths paths;
    std::string input_dir;
    std::string metadata_csv;
    std::string scenario_path;
    std::string log_path;
    std::string labels_path;
    int threshold = 20;
    int year = 2025;
    std::vector<int> sweep;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--out", paths.out_dir, "Output directory")->capture_default_str();
        cmd->add_option("--catalog", paths.catalog_path, "Permission-group catalog TSV");
        cmd->add_option("--workers", paths.workers, "Worker thread count")
            ->check(CLI::PositiveNumber);
    };

    auto* scan = app.add_subcommand("scan", "Parse an APK directory into facts JSONL");
    scan->add_option("--input", input_dir, "APK directory")->required();
    scan->add_option("--metadata", metadata_csv, "Corpus metadata CSV");
    add_common(scan);

    auto* expand = app.add_subcommand("expand", "Detect silent within-group expansions");
    add_common(expand);

    auto* stats = app.add_subcommand("stats", "Malware-association statistics");
    stats->add_option("--threshold", threshold, "Primary detection threshold")
        ->capture_default_str();
    stats->add_option("--sweep", sweep, "Sweep thresholds");
    add_common(stats);

    auto* custom = app.add_subcommand("custom", "Classify custom permission definitions");
    custom->add_option("--aosp-list", paths.aosp_list, "AOSP permission list TSV");
    add_common(custom);

    auto* pairs = app.add_subcommand("pairs", "Link cross-developer permission pairs");
    pairs->add_option("--input", input_dir, "APK directory")->required();
    pairs->add_option("--sdk-prefixes", paths.sdk_prefixes, "SDK prefix list");
    pairs->add_option("--keywords", paths.keywords, "Column keyword map TSV");
    pairs->add_option("--aosp-list", paths.aosp_list, "AOSP permission list TSV");
    add_common(pairs);

    auto* simulate = app.add_subcommand("simulate", "Replay a grant-semantics scenario");
    simulate->add_option("--scenario", scenario_path, "Scenario JSONL")->required();
    simulate->add_option("--year", year, "Catalog year")->capture_default_str();
    add_common(simulate);

    auto* monitor = app.add_subcommand("monitor", "Replay a package-event log");
    monitor->add_option("--log", log_path, "Event log JSONL")->required();
    monitor->add_option("--labels", labels_path, "Permission label map TSV");
    add_common(monitor);

    auto* report = app.add_subcommand("report", "Render result tables from artifacts");
    report->add_option("--threshold", threshold, "Primary detection threshold")
        ->capture_default_str();
    report->add_option("--aosp-list", paths.aosp_list, "AOSP permission list TSV");
    add_common(report);

    CLI11_PARSE(app, argc, argv);

    try {
        if (scan->parsed()) return cmd_scan(paths, input_dir, metadata_csv);
        if (expand->parsed()) return cmd_expand(paths);
        if (stats->parsed()) return cmd_stats(paths, threshold, sweep);
        if (custom->parsed()) return cmd_custom(paths);
        if (pairs->parsed()) return cmd_pairs(paths, input_dir);
        if (simulate->parsed()) return cmd_simulate(paths, scenario_path, year);
        if (monitor->parsed()) return cmd_monitor(paths, log_path, labels_path);
        if (report->parsed()) return cmd_report(paths, threshold);
    } catch (const MissingInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInternal;
    }
    return 0;
}
