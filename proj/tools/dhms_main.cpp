// dhms command line: every subcommand talks to the engine through the C API
// in dhms/dhms.h; file layout and exit codes are documented in the README.

#include <cinttypes>
#include <cstdio>
#include <cstring>

#include "CLI11.hpp"
#include "cli_helpers.hpp"

namespace {

using cli::check;
using cli::CliError;
using cli::Config;
using cli::EngineString;
using cli::json;
using cli::Paths;

struct Global {
    std::string config_path;
    std::string data_dir = ".";
    std::uint64_t seed = 0;
    unsigned jobs = 1;

    Config cfg;
    Paths paths;

    void finish_setup() {
        cfg = cli::load_config(config_path);
        if (data_dir == "." && cfg.has("io.data_dir")) data_dir = cfg.get("io.data_dir", ".");
        paths.data_dir = data_dir;
        std::filesystem::create_directories(paths.data_dir);
    }

    std::string lexicon_path() const { return cfg.get("io.lexicon", "data/sentiment_lexicon.tsv"); }
    std::string stopwords_path() const { return cfg.get("io.stopwords", "data/stopwords.tsv"); }
};

// Days since epoch for staleness checks; mirrors the engine's calendar rule.
long long days_from_iso_date(const std::string& iso) {
    int y = 0, m = 0, d = 0;
    if (std::sscanf(iso.c_str(), "%d-%d-%d", &y, &m, &d) != 3)
        throw CliError("bad date: " + iso, 1);
    y -= m <= 2;
    const long long era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u +
                         static_cast<unsigned>(d) - 1u;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<long long>(doe) - 719468;
}

void print_metrics_row(const char* name, const json& metrics, double solve_time) {
    std::printf("%-8s top_two_rate=%.4f group_satisfaction=%.4f jain=%.4f unassigned=%" PRIu64
                " solve_time=%.3fs\n",
                name, metrics.at("top_two_rate").get<double>(),
                metrics.at("group_satisfaction_rate").get<double>(),
                metrics.at("jain_index").get<double>(),
                metrics.at("unassigned_count").get<std::uint64_t>(), solve_time);
}

// ---------------------------------------------------------------- gen ----

void cmd_gen_alloc(Global& g, const std::string& spec_path, const std::string& out_path) {
    EngineString instance;
    check(dhms_gen_allocation(cli::read_file(spec_path).c_str(), instance.out()));
    std::string out = g.paths.out(out_path);
    cli::write_file(out, instance.str());
    std::printf("wrote %s\n", out.c_str());
}

void cmd_gen_complaints(Global& g, const std::string& spec_path, const std::string& out_path,
                        const std::string& labels_path) {
    EngineString complaints, labels;
    check(dhms_gen_complaints(cli::read_file(spec_path).c_str(), complaints.out(), labels.out()));
    std::string out = g.paths.out(out_path);
    cli::write_file(out, complaints.str());
    std::printf("wrote %s\n", out.c_str());
    if (!labels_path.empty()) {
        std::string lout = g.paths.out(labels_path);
        cli::write_file(lout, labels.str());
        std::printf("wrote %s (ground truth; keep away from detector inputs)\n", lout.c_str());
    }
}

// ----------------------------------------------------------- allocate ----

void cmd_allocate(Global& g, const std::string& in_path, bool baseline,
                  const std::string& out_path, const std::string& csv_path) {
    std::string instance = cli::read_file(in_path);

    EngineString engine_result;
    check(dhms_allocate(instance.c_str(), 0, g.jobs, engine_result.out()));
    json payload = cli::parse_json_or_die(engine_result.str(), "result");
    print_metrics_row("engine", payload.at("result").at("metrics"),
                      payload.at("solve_time_seconds").get<double>());

    if (baseline) {
        EngineString base_result;
        check(dhms_allocate(instance.c_str(), 1, g.jobs, base_result.out()));
        json base = cli::parse_json_or_die(base_result.str(), "baseline result");
        print_metrics_row("baseline", base.at("result").at("metrics"),
                          base.at("solve_time_seconds").get<double>());
    }

    if (!out_path.empty()) {
        std::string out = g.paths.out(out_path);
        cli::write_file(out, payload.at("result").dump(2) + "\n");
        std::printf("wrote %s\n", out.c_str());
    }
    if (!csv_path.empty()) {
        EngineString csv;
        check(dhms_allocation_result_csv(instance.c_str(), engine_result.str().c_str(),
                                         csv.out()));
        std::string out = g.paths.out(csv_path);
        cli::write_file(out, csv.str());
        std::printf("wrote %s\n", out.c_str());
    }
}

// ------------------------------------------------------------- triage ----

bool is_jsonl(const std::string& path) {
    return path.size() >= 6 && path.rfind(".jsonl") == path.size() - 6;
}

// Complaints arrive either as a JSON array file or as a JSON-lines event
// log that gets replayed.
std::string load_complaints(const std::string& in_path) {
    if (!is_jsonl(in_path)) return cli::read_file(in_path);
    EngineString replayed;
    check(dhms_complaint_log_replay(in_path.c_str(), replayed.out()));
    return replayed.str();
}

void cmd_triage_score(Global& g, const std::string& in_path, const std::string& now,
                      const std::string& out_path) {
    json complaints = cli::parse_json_or_die(load_complaints(in_path), in_path);
    std::string weights = cli::weights_json_from_config(g.cfg);
    std::string csv = "id,score\n";
    for (const json& c : complaints) {
        double score = 0.0;
        check(dhms_priority_score(c.dump().c_str(), weights.empty() ? nullptr : weights.c_str(),
                                  now.c_str(), &score));
        char row[160];
        std::snprintf(row, sizeof(row), "%s,%.6f\n", c.at("id").get<std::string>().c_str(),
                      score);
        csv += row;
    }
    if (out_path.empty()) {
        std::fputs(csv.c_str(), stdout);
    } else {
        std::string out = g.paths.out(out_path);
        cli::write_file(out, csv);
        std::printf("wrote %s\n", out.c_str());
    }
}

void cmd_triage_queue(Global& g, const std::string& in_path, const std::string& now,
                      const std::string& out_path) {
    std::string weights = cli::weights_json_from_config(g.cfg);
    EngineString queue;
    check(dhms_triage_queue(load_complaints(in_path).c_str(),
                            weights.empty() ? nullptr : weights.c_str(), now.c_str(),
                            queue.out()));
    if (out_path.empty()) {
        std::printf("%s\n", queue.str().c_str());
    } else {
        std::string out = g.paths.out(out_path);
        cli::write_file(out, queue.str() + "\n");
        std::printf("wrote %s\n", out.c_str());
    }
}

void cmd_triage_kpi(Global& g, const std::string& in_path, const std::string& from,
                    const std::string& to, const std::string& out_path,
                    const std::string& csv_path) {
    EngineString report, csv;
    check(dhms_kpi_report(load_complaints(in_path).c_str(), from.c_str(), to.c_str(),
                          report.out(), csv.out()));
    json r = cli::parse_json_or_die(report.str(), "kpi");
    std::printf("complaints=%zu resolved=%zu mean_resolution_hours=%.2f open_over_24h=%.4f\n",
                r.at("total").get<std::size_t>(), r.at("resolved").get<std::size_t>(),
                r.at("mean_resolution_hours").get<double>(),
                r.at("open_over_24h_fraction").get<double>());
    if (!out_path.empty()) {
        std::string out = g.paths.out(out_path);
        cli::write_file(out, report.str() + "\n");
        std::printf("wrote %s\n", out.c_str());
    }
    if (!csv_path.empty()) {
        std::string out = g.paths.out(csv_path);
        cli::write_file(out, csv.str());
        std::printf("wrote %s\n", out.c_str());
    }
}

// Array inputs are rewritten to --out; .jsonl logs get the event appended.
void cmd_triage_transition(Global& g, const std::string& in_path, const std::string& id,
                           const std::string& to, const std::string& note, const std::string& at,
                           const std::string& out_path) {
    if (is_jsonl(in_path)) {
        std::string log = g.paths.out(in_path);
        check(dhms_complaint_log_append_transition(log.c_str(), id.c_str(), to.c_str(),
                                                   note.c_str(), at.c_str()));
        std::printf("appended transition to %s\n", log.c_str());
        return;
    }
    json complaints = cli::parse_json_or_die(cli::read_file(in_path), in_path);
    if (!complaints.is_array()) throw CliError("expected a JSON array of complaints", 2);
    bool found = false;
    for (json& c : complaints) {
        if (c.at("id").get<std::string>() != id) continue;
        EngineString updated;
        check(dhms_complaint_transition(c.dump().c_str(), to.c_str(), note.c_str(), at.c_str(),
                                        updated.out()));
        c = cli::parse_json_or_die(updated.str(), "updated complaint");
        found = true;
        break;
    }
    if (!found) throw CliError("no complaint with id " + id + " in " + in_path, 2);
    if (out_path.empty()) throw CliError("--out is required for JSON array inputs", 1);
    std::string out = g.paths.out(out_path);
    cli::write_file(out, complaints.dump(2) + "\n");
    std::printf("wrote %s\n", out.c_str());
}

void cmd_triage_log(Global& g, const std::string& in_path, const std::string& log_path) {
    json complaints = cli::parse_json_or_die(cli::read_file(in_path), in_path);
    std::string log = g.paths.out(log_path);
    std::remove(log.c_str());
    for (const json& c : complaints)
        check(dhms_complaint_log_append_created(log.c_str(), c.dump().c_str()));
    std::printf("wrote %zu created events to %s\n", complaints.size(), log.c_str());
}

// ------------------------------------------------------------- detect ----

std::string featurize_from_config(Global& g, const std::string& complaints_text) {
    std::string keywords = g.cfg.get("anomaly.keywords", "");
    EngineString features;
    check(dhms_featurize(complaints_text.c_str(), g.lexicon_path().c_str(),
                         g.stopwords_path().c_str(), keywords.empty() ? nullptr : keywords.c_str(),
                         g.cfg.get_int("anomaly.window_days", 7), features.out()));
    return features.str();
}

void cmd_detect_fit(Global& g, const std::string& in_path, const std::string& model_path,
                    const std::string& features_path) {
    std::string features = featurize_from_config(g, load_complaints(in_path));
    std::uint64_t seed = g.seed ? g.seed : static_cast<std::uint64_t>(
                                               g.cfg.get_int("anomaly.seed", 0));
    dhms_forest* forest = nullptr;
    check(dhms_forest_fit(features.c_str(),
                          static_cast<uint32_t>(g.cfg.get_int("anomaly.subsample", 256)),
                          static_cast<uint32_t>(g.cfg.get_int("anomaly.trees", 100)), seed,
                          g.cfg.get_double("anomaly.threshold_percentile", 95.0), g.jobs,
                          &forest));
    EngineString doc;
    dhms_status s = dhms_forest_save(forest, doc.out());
    double threshold = 0.0;
    if (s == DHMS_OK) s = dhms_forest_threshold(forest, &threshold);
    dhms_forest_destroy(forest);
    check(s);
    std::string out = g.paths.out(model_path);
    cli::write_file(out, doc.str() + "\n");
    std::printf("fitted forest: threshold=%.6f\nwrote %s\n", threshold, out.c_str());
    if (!features_path.empty()) {
        std::string fout = g.paths.out(features_path);
        cli::write_file(fout, features + "\n");
        std::printf("wrote %s\n", fout.c_str());
    }
}

void cmd_detect_score(Global& g, const std::string& model_path, const std::string& in_path,
                      const std::string& out_path) {
    dhms_forest* forest = nullptr;
    check(dhms_forest_load(cli::read_file(model_path).c_str(), &forest));
    std::string features_text = featurize_from_config(g, load_complaints(in_path));
    json rows = cli::parse_json_or_die(features_text, "features");
    std::string csv = "complaint_id,score\n";
    dhms_status status = DHMS_OK;
    for (const json& row : rows) {
        double score = 0.0;
        status = dhms_forest_score(forest, row.dump().c_str(), &score);
        if (status != DHMS_OK) break;
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%s,%.6f\n",
                      row.at("complaint_id").get<std::string>().c_str(), score);
        csv += buf;
    }
    dhms_forest_destroy(forest);
    check(status);
    if (out_path.empty()) {
        std::fputs(csv.c_str(), stdout);
    } else {
        std::string out = g.paths.out(out_path);
        cli::write_file(out, csv);
        std::printf("wrote %s\n", out.c_str());
    }
}

void cmd_detect_flag(Global& g, const std::string& model_path, const std::string& in_path,
                     double threshold, const std::string& out_path) {
    dhms_forest* forest = nullptr;
    check(dhms_forest_load(cli::read_file(model_path).c_str(), &forest));
    std::string features_text = featurize_from_config(g, load_complaints(in_path));
    EngineString cases;
    dhms_status status = dhms_forest_flag(forest, features_text.c_str(), threshold, cases.out());
    dhms_forest_destroy(forest);
    check(status);
    json arr = cli::parse_json_or_die(cases.str(), "cases");
    std::printf("flagged %zu complaints for review\n", arr.size());
    std::string out = g.paths.out(out_path);
    std::string lines;
    for (const json& c : arr) lines += c.dump() + "\n";
    cli::write_file(out, lines);
    std::printf("wrote %s\n", out.c_str());
}

// The case log is JSON-lines; the decided case's line is replaced in place.
void cmd_detect_review(Global& g, const std::string& cases_path, const std::string& id,
                       const std::string& decision, const std::string& note,
                       const std::string& out_path) {
    std::istringstream lines(cli::read_file(cases_path));
    std::string line, rewritten;
    bool found = false;
    int lineno = 0;
    while (std::getline(lines, line)) {
        ++lineno;
        if (line.empty()) continue;
        json c = cli::parse_json_or_die(line, cases_path + ":" + std::to_string(lineno));
        if (!found && c.at("complaint_id").get<std::string>() == id) {
            EngineString updated;
            check(dhms_review_case(c.dump().c_str(), decision.c_str(), note.c_str(),
                                   updated.out()));
            c = cli::parse_json_or_die(updated.str(), "updated case");
            found = true;
        }
        rewritten += c.dump() + "\n";
    }
    if (!found) throw CliError("no review case for complaint " + id, 2);
    std::string out = g.paths.out(out_path.empty() ? cases_path : out_path);
    cli::write_file(out, rewritten);
    std::printf("wrote %s\n", out.c_str());
}

// ----------------------------------------------------------- forecast ----

void cmd_forecast_fit(Global& g, const std::string& in_path, const std::string& category,
                      const std::string& block, const std::string& model_path) {
    EngineString series;
    check(dhms_aggregate_weekly(load_complaints(in_path).c_str(),
                                category.empty() ? nullptr : category.c_str(),
                                block.empty() ? nullptr : block.c_str(), series.out()));
    EngineString model;
    check(dhms_forecast_fit(series.str().c_str(),
                            static_cast<uint32_t>(g.cfg.get_int("forecast.harmonics", 3)),
                            model.out()));
    std::string out = g.paths.out(model_path);
    cli::write_file(out, model.str() + "\n");
    json m = cli::parse_json_or_die(model.str(), "model");
    if (m.at("low_confidence").get<bool>())
        std::fprintf(stderr,
                     "warning: sparse series (mostly zero weeks); intervals are unreliable\n");
    std::printf("wrote %s\n", out.c_str());
}

void cmd_forecast_predict(Global& g, const std::string& model_path, std::uint32_t steps,
                          const std::string& now, const std::string& out_path) {
    std::string model_text = cli::read_file(model_path);
    json m = cli::parse_json_or_die(model_text, model_path);
    if (!now.empty()) {
        long long now_days = days_from_iso_date(now.substr(0, 10));
        long long train_end = days_from_iso_date(m.at("train_end_week").get<std::string>());
        long long stale_days = g.cfg.get_int("forecast.stale_days", 35);
        if (now_days - train_end > stale_days)
            std::fprintf(stderr,
                         "warning: model trained through %s is older than %lld days; retrain\n",
                         m.at("train_end_week").get<std::string>().c_str(), stale_days);
    }
    EngineString csv;
    check(dhms_forecast_predict(model_text.c_str(), steps,
                                g.cfg.get_double("forecast.interval_z", 1.282), csv.out()));
    std::string out = g.paths.out(out_path);
    cli::write_file(out, csv.str());
    std::printf("wrote %s\n", out.c_str());
}

void cmd_forecast_heatmap(Global& g, const std::vector<std::string>& model_paths,
                          std::uint32_t steps, const std::string& out_path) {
    json entries = json::array();
    for (const std::string& path : model_paths) {
        json m = cli::parse_json_or_die(cli::read_file(path), path);
        entries.push_back(
            {{"block", m.value("block", "")}, {"category", m.value("category", "")}, {"model", m}});
    }
    EngineString csv;
    check(dhms_risk_heatmap(entries.dump().c_str(), steps,
                            g.cfg.get_double("forecast.interval_z", 1.282),
                            g.cfg.get_double("forecast.heat_medium", 5.0),
                            g.cfg.get_double("forecast.heat_high", 10.0), csv.out()));
    std::string out = g.paths.out(out_path);
    cli::write_file(out, csv.str());
    std::printf("wrote %s\n", out.c_str());
}

void cmd_forecast_retrain(Global& g, const std::string& in_path, const std::string& model_path,
                          const std::string& out_path) {
    json old_model = cli::parse_json_or_die(cli::read_file(model_path), model_path);
    std::string category = old_model.value("category", "");
    std::string block = old_model.value("block", "");
    cmd_forecast_fit(g, in_path, category, block, out_path.empty() ? model_path : out_path);
}

// --------------------------------------------------------------- pass ----

struct StoreHandle {
    dhms_pass_store* ptr = nullptr;
    ~StoreHandle() { dhms_pass_store_destroy(ptr); }
};

void open_store(Global& g, const std::string& store_path, StoreHandle& store,
                std::string& resolved) {
    auto key = cli::gatepass_key(g.cfg);
    int64_t grace = g.cfg.get_int("gatepass.grace_minutes", 30) * 60;
    resolved = g.paths.out(store_path);
    if (std::filesystem::exists(resolved))
        store.ptr = dhms_pass_store_load(resolved.c_str(), key.data(), key.size(), grace, g.seed);
    else
        store.ptr = dhms_pass_store_create(key.data(), key.size(), grace, g.seed);
    if (!store.ptr) throw CliError(dhms_last_error(), 1);
}

void cmd_pass_request(Global& g, const std::string& store_path, const json& request,
                      const std::string& at) {
    StoreHandle store;
    std::string resolved;
    open_store(g, store_path, store, resolved);
    EngineString pass;
    check(dhms_pass_request(store.ptr, request.dump().c_str(), at.c_str(), pass.out()));
    check(dhms_pass_store_save(store.ptr, resolved.c_str()));
    json p = cli::parse_json_or_die(pass.str(), "pass");
    std::printf("requested %s (status %s)\n", p.at("id").get<std::string>().c_str(),
                p.at("status").get<std::string>().c_str());
}

void cmd_pass_decide(Global& g, const std::string& store_path, const std::string& id,
                     bool approve, const std::string& remarks, const std::string& at) {
    StoreHandle store;
    std::string resolved;
    open_store(g, store_path, store, resolved);
    EngineString pass;
    check(dhms_pass_decide(store.ptr, id.c_str(), approve ? 1 : 0, remarks.c_str(), at.c_str(),
                           pass.out()));
    check(dhms_pass_store_save(store.ptr, resolved.c_str()));
    json p = cli::parse_json_or_die(pass.str(), "pass");
    std::printf("%s -> %s\n", id.c_str(), p.at("status").get<std::string>().c_str());
    if (approve) std::printf("token: %s\n", p.at("token").get<std::string>().c_str());
}

void cmd_pass_scan(Global& g, const std::string& store_path, std::string token,
                   const std::string& token_file, const std::string& direction,
                   const std::string& at) {
    if (!token_file.empty()) token = cli::trim(cli::read_file(token_file));
    StoreHandle store;
    std::string resolved;
    open_store(g, store_path, store, resolved);
    EngineString event;
    check(dhms_pass_scan(store.ptr, token.c_str(), direction.c_str(), at.c_str(), event.out()));
    check(dhms_pass_store_save(store.ptr, resolved.c_str()));
    json e = cli::parse_json_or_die(event.str(), "event");
    std::printf("%s scan at %s: %s\n", direction.c_str(), at.c_str(),
                e.at("result").get<std::string>().c_str());
}

void cmd_pass_stats(Global& g, const std::string& store_path, const std::string& now,
                    const std::string& out_path, const std::string& csv_path) {
    StoreHandle store;
    std::string resolved;
    open_store(g, store_path, store, resolved);
    EngineString stats, csv;
    check(dhms_pass_stats(store.ptr, now.empty() ? nullptr : now.c_str(), stats.out(),
                          csv.out()));
    json s = cli::parse_json_or_die(stats.str(), "stats");
    std::printf("requests=%zu rejected=%zu rejection_rate=%.4f reuse=%zu tamper=%zu\n",
                s.at("total_requests").get<std::size_t>(), s.at("rejected").get<std::size_t>(),
                s.at("rejection_rate").get<double>(), s.at("reuse_incidents").get<std::size_t>(),
                s.at("tamper_incidents").get<std::size_t>());
    if (!out_path.empty()) {
        std::string out = g.paths.out(out_path);
        cli::write_file(out, stats.str() + "\n");
        std::printf("wrote %s\n", out.c_str());
    }
    if (!csv_path.empty()) {
        std::string out = g.paths.out(csv_path);
        cli::write_file(out, csv.str());
        std::printf("wrote %s\n", out.c_str());
    }
}

// ------------------------------------------------------------- report ----

void cmd_report(Global& g, const std::string& alloc_path, const std::string& kpi_path,
                const std::string& stats_path, const std::string& cases_path,
                const std::string& out_path, const std::string& csv_path) {
    json report{{"schema_version", 1}};
    std::string csv = "section,metric,value\n";
    auto add_csv = [&](const std::string& section, const json& obj) {
        for (auto& [k, v] : obj.items())
            if (v.is_number() || v.is_boolean()) csv += section + "," + k + "," + v.dump() + "\n";
    };
    if (!alloc_path.empty()) {
        json r = cli::parse_json_or_die(cli::read_file(alloc_path), alloc_path);
        report["allocation"] = r.contains("metrics") ? r.at("metrics") : r;
        add_csv("allocation", report["allocation"]);
    }
    if (!kpi_path.empty()) {
        report["kpi"] = cli::parse_json_or_die(cli::read_file(kpi_path), kpi_path);
        add_csv("kpi", report["kpi"]);
    }
    if (!stats_path.empty()) {
        report["pass_stats"] = cli::parse_json_or_die(cli::read_file(stats_path), stats_path);
        add_csv("pass_stats", report["pass_stats"]);
    }
    if (!cases_path.empty()) {
        // review cases are stored as JSON-lines
        std::istringstream lines(cli::read_file(cases_path));
        std::string line;
        std::size_t flagged = 0, confirmed = 0, dismissed = 0;
        int lineno = 0;
        while (std::getline(lines, line)) {
            ++lineno;
            if (line.empty()) continue;
            json c = cli::parse_json_or_die(line, cases_path + ":" + std::to_string(lineno));
            ++flagged;
            std::string state = c.at("state").get<std::string>();
            if (state == "Confirmed") ++confirmed;
            if (state == "Dismissed") ++dismissed;
        }
        report["review"] = {{"flagged", flagged},
                            {"confirmed", confirmed},
                            {"dismissed", dismissed}};
        add_csv("review", report["review"]);
    }
    std::string out = g.paths.out(out_path);
    cli::write_file(out, report.dump(2) + "\n");
    std::printf("wrote %s\n", out.c_str());
    if (!csv_path.empty()) {
        std::string cout_path = g.paths.out(csv_path);
        cli::write_file(cout_path, csv);
        std::printf("wrote %s\n", cout_path.c_str());
    }
}

}  // namespace

int main(int argc, char** argv) {
    Global g;
    CLI::App app{"dhms: hostel operations engine (allocation, triage, anomaly detection, "
                 "forecasting, gate passes)"};
    app.require_subcommand(1);
    app.add_option("--config", g.config_path, "INI config file (strict keys)");
    app.add_option("--data-dir", g.data_dir, "directory all outputs are confined to")
        ->capture_default_str();
    app.add_option("--seed", g.seed, "seed for every random draw")->capture_default_str();
    app.add_option("--jobs", g.jobs, "worker threads for per-block solves and tree fits")
        ->capture_default_str();

    // gen
    auto* gen = app.add_subcommand("gen", "generate synthetic workloads");
    gen->require_subcommand(1);
    std::string gen_spec, gen_out = "instance.json", gen_labels;
    auto* gen_alloc = gen->add_subcommand("alloc", "generate an allocation instance");
    gen_alloc->add_option("--spec", gen_spec, "workload spec JSON")->required();
    gen_alloc->add_option("--out", gen_out, "output instance file")->capture_default_str();
    gen_alloc->callback([&] {
        g.finish_setup();
        cmd_gen_alloc(g, gen_spec, gen_out); });
    std::string genc_spec, genc_out = "complaints.json", genc_labels = "labels.json";
    auto* gen_compl = gen->add_subcommand("complaints", "generate a complaint stream");
    gen_compl->add_option("--spec", genc_spec, "workload spec JSON")->required();
    gen_compl->add_option("--out", genc_out, "output complaints file")->capture_default_str();
    gen_compl->add_option("--labels", genc_labels, "ground-truth labels file")
        ->capture_default_str();
    gen_compl->callback([&] {
        g.finish_setup(); cmd_gen_complaints(g, genc_spec, genc_out, genc_labels); });

    // allocate
    std::string alloc_in, alloc_out, alloc_csv;
    bool alloc_baseline = false;
    auto* alloc_cmd = app.add_subcommand("allocate", "solve a room allocation instance");
    alloc_cmd->add_option("--in", alloc_in, "instance JSON")->required();
    alloc_cmd->add_flag("--baseline", alloc_baseline,
                        "also run the greedy seniority baseline and print both metric rows");
    alloc_cmd->add_option("--out", alloc_out, "write result JSON");
    alloc_cmd->add_option("--csv", alloc_csv, "write per-student CSV summary");
    alloc_cmd->callback([&] {
        g.finish_setup(); cmd_allocate(g, alloc_in, alloc_baseline, alloc_out, alloc_csv); });

    // triage
    auto* triage = app.add_subcommand("triage", "complaint scoring, queueing, KPIs");
    triage->require_subcommand(1);
    std::string tr_in, tr_now, tr_out, tr_csv, tr_from, tr_to, tr_id, tr_note, tr_status, tr_at;
    auto* tr_score = triage->add_subcommand("score", "priority scores for all complaints");
    tr_score->add_option("--in", tr_in, "complaints JSON")->required();
    tr_score->add_option("--now", tr_now, "evaluation time (ISO-8601)")->required();
    tr_score->add_option("--out", tr_out, "write CSV instead of stdout");
    tr_score->callback([&] {
        g.finish_setup(); cmd_triage_score(g, tr_in, tr_now, tr_out); });
    auto* tr_queue = triage->add_subcommand("queue", "open complaints by descending priority");
    tr_queue->add_option("--in", tr_in, "complaints JSON")->required();
    tr_queue->add_option("--now", tr_now, "evaluation time (ISO-8601)")->required();
    tr_queue->add_option("--out", tr_out, "write queue JSON instead of stdout");
    tr_queue->callback([&] {
        g.finish_setup(); cmd_triage_queue(g, tr_in, tr_now, tr_out); });
    auto* tr_kpi = triage->add_subcommand("kpi", "resolution-time KPIs over a window");
    tr_kpi->add_option("--in", tr_in, "complaints JSON")->required();
    tr_kpi->add_option("--from", tr_from, "window start (ISO-8601)")->required();
    tr_kpi->add_option("--to", tr_to, "window end (ISO-8601)")->required();
    tr_kpi->add_option("--out", tr_out, "write KPI JSON");
    tr_kpi->add_option("--csv", tr_csv, "write KPI CSV");
    tr_kpi->callback([&] {
        g.finish_setup(); cmd_triage_kpi(g, tr_in, tr_from, tr_to, tr_out, tr_csv); });
    auto* tr_move = triage->add_subcommand("transition", "advance one complaint's lifecycle");
    tr_move->add_option("--in", tr_in, "complaints JSON array or .jsonl event log")->required();
    tr_move->add_option("--id", tr_id, "complaint id")->required();
    tr_move->add_option("--to", tr_status, "next status")->required();
    tr_move->add_option("--note", tr_note, "audit note");
    tr_move->add_option("--at", tr_at, "transition time (ISO-8601)")->required();
    tr_move->add_option("--out", tr_out, "output file (array inputs only)");
    tr_move->callback([&] {
        g.finish_setup();
        cmd_triage_transition(g, tr_in, tr_id, tr_status, tr_note, tr_at, tr_out);
    });
    std::string tr_log;
    auto* tr_mklog = triage->add_subcommand("log", "convert a complaint array to an event log");
    tr_mklog->add_option("--in", tr_in, "complaints JSON array")->required();
    tr_mklog->add_option("--log", tr_log, "output .jsonl event log")->required();
    tr_mklog->callback([&] {
        g.finish_setup();
        cmd_triage_log(g, tr_in, tr_log);
    });

    // detect
    auto* detect = app.add_subcommand("detect", "isolation-forest anomaly detection");
    detect->require_subcommand(1);
    std::string dt_in, dt_model = "forest.json", dt_features, dt_out, dt_cases, dt_id, dt_note;
    std::string dt_decision;
    double dt_threshold = -1.0;
    auto* dt_fit = detect->add_subcommand("fit", "fit a forest on a complaint stream");
    dt_fit->add_option("--in", dt_in, "complaints JSON")->required();
    dt_fit->add_option("--model", dt_model, "output forest file")->capture_default_str();
    dt_fit->add_option("--features", dt_features, "also write the computed feature vectors");
    dt_fit->callback([&] {
        g.finish_setup(); cmd_detect_fit(g, dt_in, dt_model, dt_features); });
    auto* dt_score = detect->add_subcommand("score", "score complaints against a forest");
    dt_score->add_option("--model", dt_model, "forest file")->required();
    dt_score->add_option("--in", dt_in, "complaints JSON")->required();
    dt_score->add_option("--out", dt_out, "write CSV instead of stdout");
    dt_score->callback([&] {
        g.finish_setup(); cmd_detect_score(g, dt_model, dt_in, dt_out); });
    auto* dt_flag = detect->add_subcommand("flag", "open review cases for outliers");
    dt_flag->add_option("--model", dt_model, "forest file")->required();
    dt_flag->add_option("--in", dt_in, "complaints JSON")->required();
    dt_flag->add_option("--threshold", dt_threshold,
                        "score cutoff; negative uses the fitted training percentile")
        ->capture_default_str();
    dt_flag->add_option("--out", dt_out, "review cases file")->required();
    dt_flag->callback([&] {
        g.finish_setup(); cmd_detect_flag(g, dt_model, dt_in, dt_threshold, dt_out); });
    auto* dt_review = detect->add_subcommand("review", "confirm or dismiss a flagged case");
    dt_review->add_option("--cases", dt_cases, "review cases file")->required();
    dt_review->add_option("--id", dt_id, "complaint id")->required();
    dt_review->add_option("--decision", dt_decision, "Confirmed or Dismissed")->required();
    dt_review->add_option("--note", dt_note, "reviewer note");
    dt_review->add_option("--out", dt_out, "output file (defaults to --cases)");
    dt_review->callback([&] {
        g.finish_setup(); cmd_detect_review(g, dt_cases, dt_id, dt_decision, dt_note, dt_out); });

    // forecast
    auto* forecast = app.add_subcommand("forecast", "weekly complaint forecasting");
    forecast->require_subcommand(1);
    std::string fc_in, fc_category, fc_block, fc_model = "model.json", fc_out, fc_now;
    std::vector<std::string> fc_models;
    std::uint32_t fc_steps = 8;
    auto* fc_fit = forecast->add_subcommand("fit", "fit a trend+seasonality model");
    fc_fit->add_option("--in", fc_in, "complaints JSON")->required();
    fc_fit->add_option("--category", fc_category, "restrict to one category");
    fc_fit->add_option("--block", fc_block, "restrict to one block");
    fc_fit->add_option("--model", fc_model, "output model file")->capture_default_str();
    fc_fit->callback([&] {
        g.finish_setup(); cmd_forecast_fit(g, fc_in, fc_category, fc_block, fc_model); });
    auto* fc_predict = forecast->add_subcommand("predict", "forecast future weeks");
    fc_predict->add_option("--model", fc_model, "model file")->required();
    fc_predict->add_option("--steps", fc_steps, "horizon length in weeks")->capture_default_str();
    fc_predict->add_option("--now", fc_now, "current date for the staleness warning");
    fc_predict->add_option("--out", fc_out, "forecast CSV")->required();
    fc_predict->callback([&] {
        g.finish_setup(); cmd_forecast_predict(g, fc_model, fc_steps, fc_now, fc_out); });
    auto* fc_heat = forecast->add_subcommand("heatmap", "block x category risk grid");
    fc_heat->add_option("--models", fc_models, "model files")->required()->expected(-1);
    fc_heat->add_option("--steps", fc_steps, "horizon length in weeks")->capture_default_str();
    fc_heat->add_option("--out", fc_out, "heatmap CSV")->required();
    fc_heat->callback([&] {
        g.finish_setup(); cmd_forecast_heatmap(g, fc_models, fc_steps, fc_out); });
    auto* fc_retrain = forecast->add_subcommand("retrain", "refit an existing model file");
    fc_retrain->add_option("--in", fc_in, "complaints JSON")->required();
    fc_retrain->add_option("--model", fc_model, "existing model file")->required();
    fc_retrain->add_option("--out", fc_out, "output file (defaults to --model)");
    fc_retrain->callback([&] {
        g.finish_setup(); cmd_forecast_retrain(g, fc_in, fc_model, fc_out); });

    // pass
    auto* pass = app.add_subcommand("pass", "gate pass requests, decisions, scans");
    pass->require_subcommand(1);
    std::string ps_store = "passes.jsonl", ps_student, ps_reason, ps_dest, ps_exit, ps_return;
    std::string ps_contact, ps_id, ps_remarks, ps_at, ps_token, ps_token_file, ps_direction;
    std::string ps_out, ps_csv;
    bool ps_approve = false, ps_reject = false;
    auto* ps_request = pass->add_subcommand("request", "file a new gate pass request");
    ps_request->add_option("--store", ps_store, "pass store (JSON-lines)")->capture_default_str();
    ps_request->add_option("--student", ps_student, "student id")->required();
    ps_request->add_option("--reason", ps_reason, "reason for leave")->required();
    ps_request->add_option("--destination", ps_dest, "destination");
    ps_request->add_option("--exit", ps_exit, "exit time (ISO-8601)")->required();
    ps_request->add_option("--return", ps_return, "return deadline (ISO-8601)")->required();
    ps_request->add_option("--contact", ps_contact, "emergency contact");
    ps_request->add_option("--at", ps_at, "request time (ISO-8601)")->required();
    ps_request->callback([&] {
        g.finish_setup();
        json req{{"student_id", ps_student}, {"reason", ps_reason},
                 {"destination", ps_dest},   {"exit_at", ps_exit},
                 {"return_by", ps_return},   {"emergency_contact", ps_contact}};
        cmd_pass_request(g, ps_store, req, ps_at);
    });
    auto* ps_decide = pass->add_subcommand("decide", "approve or reject a request");
    ps_decide->add_option("--store", ps_store, "pass store (JSON-lines)")->capture_default_str();
    ps_decide->add_option("--id", ps_id, "pass id")->required();
    ps_decide->add_flag("--approve", ps_approve, "approve and mint the signed token");
    ps_decide->add_flag("--reject", ps_reject, "reject (remarks required)");
    ps_decide->add_option("--remarks", ps_remarks, "remarks returned to the student");
    ps_decide->add_option("--at", ps_at, "decision time (ISO-8601)")->required();
    ps_decide->callback([&] {
        g.finish_setup();
        if (ps_approve == ps_reject)
            throw CliError("pass decide needs exactly one of --approve / --reject", 1);
        cmd_pass_decide(g, ps_store, ps_id, ps_approve, ps_remarks, ps_at);
    });
    auto* ps_scan = pass->add_subcommand("scan", "verify a token at the gate");
    ps_scan->add_option("--store", ps_store, "pass store (JSON-lines)")->capture_default_str();
    ps_scan->add_option("--token", ps_token, "token text (QR payload)");
    ps_scan->add_option("--token-file", ps_token_file, "read token text from a file");
    ps_scan->add_option("--direction", ps_direction, "exit or entry")->required();
    ps_scan->add_option("--at", ps_at, "scan time (ISO-8601)")->required();
    ps_scan->callback([&] {
        g.finish_setup();
        if (ps_token.empty() && ps_token_file.empty())
            throw CliError("pass scan needs --token or --token-file", 1);
        cmd_pass_scan(g, ps_store, ps_token, ps_token_file, ps_direction, ps_at);
    });
    std::string ps_now;
    auto* ps_stats = pass->add_subcommand("stats", "rejection and incident statistics");
    ps_stats->add_option("--store", ps_store, "pass store (JSON-lines)")->capture_default_str();
    ps_stats->add_option("--now", ps_now, "count overdue passes as of this time (lazy expiry)");
    ps_stats->add_option("--out", ps_out, "write stats JSON");
    ps_stats->add_option("--csv", ps_csv, "write stats CSV");
    ps_stats->callback([&] {
        g.finish_setup(); cmd_pass_stats(g, ps_store, ps_now, ps_out, ps_csv); });

    // report
    std::string rp_alloc, rp_kpi, rp_stats, rp_cases, rp_out = "report.json", rp_csv;
    auto* report = app.add_subcommand("report", "aggregate module outputs into one summary");
    report->add_option("--alloc", rp_alloc, "allocation result JSON");
    report->add_option("--kpi", rp_kpi, "triage KPI JSON");
    report->add_option("--pass-stats", rp_stats, "gate pass stats JSON");
    report->add_option("--cases", rp_cases, "review cases JSON");
    report->add_option("--out", rp_out, "report JSON")->capture_default_str();
    report->add_option("--csv", rp_csv, "report CSV");
    report->callback([&] {
        g.finish_setup(); cmd_report(g, rp_alloc, rp_kpi, rp_stats, rp_cases, rp_out, rp_csv); });

    try {
        try {
            app.parse(argc, argv);
        } catch (const CLI::CallForHelp& e) {
            return app.exit(e);
        } catch (const CLI::ParseError& e) {
            app.exit(e);
            return 2;  // unknown subcommand/flag or malformed invocation
        }
    } catch (const CliError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return e.exit_code;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
