#include "dhms/dhms.h"

#include <cstring>
#include <memory>
#include <optional>
#include <string>

#include "core/alloc/alloc_io.hpp"
#include "core/alloc/engine.hpp"
#include "core/anomaly/features.hpp"
#include "core/anomaly/forest.hpp"
#include "core/anomaly/review.hpp"
#include "core/flow/flow_network.hpp"
#include "core/forecast/heatmap.hpp"
#include "core/forecast/model.hpp"
#include "core/forecast/weekly.hpp"
#include "core/gatepass/pass.hpp"
#include "core/gatepass/stats.hpp"
#include "core/sentiment/lexicon.hpp"
#include "core/triage/complaint.hpp"
#include "core/triage/complaint_log.hpp"
#include "core/triage/kpi.hpp"
#include "core/triage/priority.hpp"
#include "core/util/errors.hpp"
#include "core/util/jsonu.hpp"
#include "core/workload/generate.hpp"
#include "core/workload/spec.hpp"

using dhms::util::json;

namespace {

thread_local std::string g_last_error = "ok";

char* dup_cstring(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) return nullptr;
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <typename Fn>
dhms_status wrap(Fn&& fn) noexcept {
    try {
        fn();
        return DHMS_OK;
    } catch (const dhms::SpecError& e) {
        g_last_error = e.what();
        return DHMS_ERR_VALIDATION;
    } catch (const dhms::ValidationError& e) {
        g_last_error = e.what();
        return DHMS_ERR_VALIDATION;
    } catch (const dhms::TransitionError& e) {
        g_last_error = e.what();
        return DHMS_ERR_TRANSITION;
    } catch (const dhms::FitError& e) {
        g_last_error = e.what();
        return DHMS_ERR_FIT;
    } catch (const dhms::IoError& e) {
        g_last_error = e.what();
        return DHMS_ERR_IO;
    } catch (const dhms::StructuralError& e) {
        g_last_error = e.what();
        return DHMS_ERR_STRUCTURAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return DHMS_ERR_UNKNOWN;
    } catch (...) {
        g_last_error = "unknown error";
        return DHMS_ERR_UNKNOWN;
    }
}

void require_arg(const void* p, const char* name) {
    if (!p) throw dhms::ValidationError(std::string(name) + " must not be NULL");
}

json parse_doc(const char* text, const char* what) {
    require_arg(text, what);
    return dhms::util::parse_json_text(text, what);
}

dhms::triage::PriorityWeights parse_weights(const char* weights_json) {
    auto w = dhms::triage::PriorityWeights::defaults();
    if (!weights_json) return w;
    json j = dhms::util::parse_json_text(weights_json, "weights");
    if (j.contains("type_weights")) {
        for (auto& [key, value] : j.at("type_weights").items()) {
            auto cat = dhms::triage::category_from_string(key);
            if (!cat) throw dhms::ValidationError("unknown category in type_weights: " + key);
            w.type_weights[*cat] = value.get<double>();
        }
    }
    if (j.contains("age_saturation_hours"))
        w.age_saturation =
            static_cast<dhms::util::Duration>(j.at("age_saturation_hours").get<double>() * 3600.0);
    if (j.contains("impact_saturation"))
        w.impact_saturation = j.at("impact_saturation").get<std::uint32_t>();
    w.validate();
    return w;
}

json feature_to_json(const dhms::anomaly::FeatureVector& f) {
    return json{{"category_code", f.category_code},
                {"sentiment_score", f.sentiment_score},
                {"hour_of_day", f.hour_of_day},
                {"day_of_week", f.day_of_week},
                {"text_length", f.text_length},
                {"keyword_hits", f.keyword_hits},
                {"recurrence_count", f.recurrence_count}};
}

dhms::anomaly::FeatureVector feature_from_json(const json& j) {
    dhms::anomaly::FeatureVector f;
    f.category_code = dhms::util::require<double>(j, "category_code");
    f.sentiment_score = dhms::util::require<double>(j, "sentiment_score");
    f.hour_of_day = dhms::util::require<double>(j, "hour_of_day");
    f.day_of_week = dhms::util::require<double>(j, "day_of_week");
    f.text_length = dhms::util::require<double>(j, "text_length");
    f.keyword_hits = dhms::util::require<double>(j, "keyword_hits");
    f.recurrence_count = dhms::util::require<double>(j, "recurrence_count");
    return f;
}

std::vector<dhms::anomaly::ScoredComplaint> scored_from_json(const json& arr) {
    std::vector<dhms::anomaly::ScoredComplaint> out;
    for (const json& row : arr) {
        dhms::anomaly::ScoredComplaint sc;
        sc.complaint_id = dhms::util::get_or<std::string>(row, "complaint_id", "");
        sc.features = feature_from_json(row.contains("features") ? row.at("features") : row);
        out.push_back(std::move(sc));
    }
    return out;
}

void emit(char** out, const std::string& text) {
    require_arg(out, "output pointer");
    *out = dup_cstring(text);
    if (!*out) throw dhms::IoError("out of memory");
}

}  // namespace

struct dhms_flow_network {
    dhms::flow::FlowNetwork net;
    std::optional<dhms::flow::FlowResult> result;
};

struct dhms_lexicon {
    dhms::sentiment::Lexicon lex;
};

struct dhms_forest {
    dhms::anomaly::IsolationForest forest;
};

struct dhms_pass_store {
    std::unique_ptr<dhms::gatepass::PassStore> store;
};

extern "C" {

const char* dhms_version(void) { return "1.0.0"; }

const char* dhms_last_error(void) { return g_last_error.c_str(); }

void dhms_string_free(char* s) { std::free(s); }

/* ---- flow ---- */

dhms_flow_network* dhms_flow_create(uint32_t node_count, uint32_t source, uint32_t sink) {
    dhms_flow_network* handle = nullptr;
    wrap([&] {
        handle = new dhms_flow_network{dhms::flow::FlowNetwork(node_count, source, sink), {}};
    });
    return handle;
}

dhms_status dhms_flow_add_edge(dhms_flow_network* net, uint32_t from, uint32_t to,
                               uint64_t capacity) {
    return wrap([&] {
        require_arg(net, "net");
        net->net.add_edge(from, to, capacity);
        net->result.reset();
    });
}

dhms_status dhms_flow_solve(dhms_flow_network* net, uint64_t* max_flow_value,
                            uint64_t* augmentations) {
    return wrap([&] {
        require_arg(net, "net");
        if (!net->result) net->result = dhms::flow::max_flow(net->net);
        if (max_flow_value) *max_flow_value = net->result->max_flow_value;
        if (augmentations) *augmentations = net->result->augmentation_count;
    });
}

dhms_status dhms_flow_edge_flow(dhms_flow_network* net, size_t edge_index, uint64_t* flow) {
    return wrap([&] {
        require_arg(net, "net");
        require_arg(flow, "flow");
        if (!net->result) throw dhms::StructuralError("network is not solved yet");
        if (edge_index >= net->result->edge_flows.size())
            throw dhms::StructuralError("edge index out of range");
        *flow = net->result->edge_flows[edge_index];
    });
}

dhms_status dhms_flow_min_cut(dhms_flow_network* net, uint32_t* out_nodes, size_t out_capacity,
                              size_t* out_count) {
    return wrap([&] {
        require_arg(net, "net");
        require_arg(out_count, "out_count");
        if (!net->result) throw dhms::StructuralError("network is not solved yet");
        auto side = dhms::flow::min_cut(net->net, *net->result);
        *out_count = side.size();
        if (out_nodes) {
            if (out_capacity < side.size())
                throw dhms::ValidationError("output buffer too small for min cut");
            std::copy(side.begin(), side.end(), out_nodes);
        }
    });
}

dhms_status dhms_flow_dump(dhms_flow_network* net, char** out_text) {
    return wrap([&] {
        require_arg(net, "net");
        if (!net->result) throw dhms::StructuralError("network is not solved yet");
        emit(out_text, dhms::flow::dump_flow(net->net, *net->result));
    });
}

void dhms_flow_destroy(dhms_flow_network* net) { delete net; }

/* ---- allocation ---- */

dhms_status dhms_allocate(const char* instance_json, int baseline, unsigned jobs,
                          char** result_json) {
    return wrap([&] {
        auto inst = dhms::alloc::instance_from_json(parse_doc(instance_json, "instance"));
        dhms::alloc::AllocationResult result =
            baseline ? dhms::alloc::allocate_baseline(inst) : dhms::alloc::allocate(inst, jobs);
        json payload{{"result", dhms::alloc::result_to_json(inst, result)},
                     {"solve_time_seconds", result.metrics.solve_time_seconds}};
        emit(result_json, payload.dump(2));
    });
}

dhms_status dhms_allocation_result_csv(const char* instance_json, const char* result_json,
                                       char** csv_text) {
    return wrap([&] {
        auto inst = dhms::alloc::instance_from_json(parse_doc(instance_json, "instance"));
        json jr = parse_doc(result_json, "result");
        auto result = dhms::alloc::result_from_json(jr.contains("result") ? jr.at("result") : jr);
        emit(csv_text, dhms::alloc::result_to_csv(inst, result));
    });
}

dhms_status dhms_jain_index(const double* values, size_t count, double* out_index) {
    return wrap([&] {
        require_arg(values, "values");
        require_arg(out_index, "out_index");
        *out_index = dhms::alloc::jain_index(std::vector<double>(values, values + count));
    });
}

/* ---- triage ---- */

dhms_status dhms_priority_score(const char* complaint_json, const char* weights_json,
                                const char* now_iso8601, double* out_score) {
    return wrap([&] {
        require_arg(out_score, "out_score");
        require_arg(now_iso8601, "now");
        auto c = dhms::triage::complaint_from_json(parse_doc(complaint_json, "complaint"));
        auto w = parse_weights(weights_json);
        *out_score = dhms::triage::priority_score(c, w, dhms::util::parse_iso8601(now_iso8601));
    });
}

dhms_status dhms_triage_queue(const char* complaints_json, const char* weights_json,
                              const char* now_iso8601, char** queue_json) {
    return wrap([&] {
        require_arg(now_iso8601, "now");
        auto cs = dhms::triage::complaints_from_json(parse_doc(complaints_json, "complaints"));
        auto w = parse_weights(weights_json);
        auto queue = dhms::triage::triage_queue(cs, w, dhms::util::parse_iso8601(now_iso8601));
        json arr = json::array();
        for (const auto& entry : queue)
            arr.push_back({{"id", entry.complaint.id},
                           {"score", entry.score},
                           {"category", dhms::triage::to_string(entry.complaint.category)},
                           {"status", dhms::triage::to_string(entry.complaint.status)},
                           {"created_at", dhms::util::format_iso8601(entry.complaint.created_at)}});
        emit(queue_json, arr.dump(2));
    });
}

dhms_status dhms_complaint_transition(const char* complaint_json, const char* next_status,
                                      const char* note, const char* at_iso8601,
                                      char** updated_json) {
    return wrap([&] {
        require_arg(next_status, "next_status");
        require_arg(at_iso8601, "at");
        auto c = dhms::triage::complaint_from_json(parse_doc(complaint_json, "complaint"));
        auto next = dhms::triage::lifecycle_from_string(next_status);
        if (!next)
            throw dhms::ValidationError(std::string("unknown lifecycle status: ") + next_status);
        auto updated = dhms::triage::transition(c, *next, note ? note : "",
                                                dhms::util::parse_iso8601(at_iso8601));
        emit(updated_json, dhms::triage::complaint_to_json(updated).dump(2));
    });
}

dhms_status dhms_kpi_report(const char* complaints_json, const char* window_start_iso,
                            const char* window_end_iso, char** report_json, char** report_csv) {
    return wrap([&] {
        require_arg(window_start_iso, "window_start");
        require_arg(window_end_iso, "window_end");
        auto cs = dhms::triage::complaints_from_json(parse_doc(complaints_json, "complaints"));
        auto report = dhms::triage::kpi_report(cs, dhms::util::parse_iso8601(window_start_iso),
                                               dhms::util::parse_iso8601(window_end_iso));
        emit(report_json, dhms::triage::kpi_to_json(report).dump(2));
        if (report_csv) emit(report_csv, dhms::triage::kpi_to_csv(report));
    });
}

dhms_status dhms_complaint_log_append_created(const char* log_path, const char* complaint_json) {
    return wrap([&] {
        require_arg(log_path, "log_path");
        auto c = dhms::triage::complaint_from_json(parse_doc(complaint_json, "complaint"));
        dhms::triage::append_event(log_path, dhms::triage::created_event(c));
    });
}

dhms_status dhms_complaint_log_append_transition(const char* log_path, const char* id,
                                                 const char* next_status, const char* note,
                                                 const char* at_iso8601) {
    return wrap([&] {
        require_arg(log_path, "log_path");
        require_arg(id, "id");
        require_arg(next_status, "next_status");
        require_arg(at_iso8601, "at");
        auto next = dhms::triage::lifecycle_from_string(next_status);
        if (!next)
            throw dhms::ValidationError(std::string("unknown lifecycle status: ") + next_status);
        // replay first so an illegal move is rejected before the append
        auto complaints = dhms::triage::replay_log(log_path);
        bool found = false;
        for (const auto& c : complaints) {
            if (c.id != id) continue;
            dhms::triage::transition(c, *next, note ? note : "",
                                     dhms::util::parse_iso8601(at_iso8601));
            found = true;
            break;
        }
        if (!found)
            throw dhms::StructuralError(std::string("no complaint ") + id + " in log");
        dhms::triage::append_event(
            log_path, dhms::triage::transition_event(id, *next, note ? note : "",
                                                     dhms::util::parse_iso8601(at_iso8601)));
    });
}

dhms_status dhms_complaint_log_replay(const char* log_path, char** complaints_json) {
    return wrap([&] {
        require_arg(log_path, "log_path");
        auto complaints = dhms::triage::replay_log(log_path);
        emit(complaints_json, dhms::triage::complaints_to_json(complaints).dump(2));
    });
}

/* ---- sentiment ---- */

dhms_lexicon* dhms_lexicon_load(const char* lexicon_path, const char* stopwords_path) {
    dhms_lexicon* handle = nullptr;
    wrap([&] {
        require_arg(lexicon_path, "lexicon_path");
        require_arg(stopwords_path, "stopwords_path");
        handle = new dhms_lexicon{dhms::sentiment::Lexicon::load(lexicon_path, stopwords_path)};
    });
    return handle;
}

dhms_status dhms_sentiment_score(const dhms_lexicon* lexicon, const char* text, double* out_score,
                                 double* out_confidence, char* label_buf, size_t label_capacity) {
    return wrap([&] {
        require_arg(lexicon, "lexicon");
        require_arg(text, "text");
        auto r = lexicon->lex.score_text(text);
        if (out_score) *out_score = r.score;
        if (out_confidence) *out_confidence = r.confidence;
        if (label_buf && label_capacity > 0) {
            std::string label = dhms::sentiment::to_string(r.label);
            if (label.size() + 1 > label_capacity)
                throw dhms::ValidationError("label buffer too small");
            std::memcpy(label_buf, label.c_str(), label.size() + 1);
        }
    });
}

void dhms_lexicon_destroy(dhms_lexicon* lexicon) { delete lexicon; }

/* ---- anomaly ---- */

dhms_status dhms_featurize(const char* complaints_json, const char* lexicon_path,
                           const char* stopwords_path, const char* keywords_csv,
                           int64_t window_days, char** features_json) {
    return wrap([&] {
        require_arg(lexicon_path, "lexicon_path");
        require_arg(stopwords_path, "stopwords_path");
        auto cs = dhms::triage::complaints_from_json(parse_doc(complaints_json, "complaints"));
        auto lex = dhms::sentiment::Lexicon::load(lexicon_path, stopwords_path);
        std::vector<std::string> keywords = dhms::anomaly::default_keywords();
        if (keywords_csv) {
            keywords.clear();
            std::string csv = keywords_csv;
            std::size_t pos = 0;
            while (pos <= csv.size()) {
                std::size_t comma = csv.find(',', pos);
                std::string term = csv.substr(pos, comma == std::string::npos ? std::string::npos
                                                                              : comma - pos);
                if (!term.empty()) keywords.push_back(term);
                if (comma == std::string::npos) break;
                pos = comma + 1;
            }
        }
        if (window_days < 0) throw dhms::ValidationError("window_days must be >= 0");
        json arr = json::array();
        for (const auto& c : cs) {
            auto sentiment = lex.score_text(c.description);
            auto features = dhms::anomaly::featurize(c, sentiment, cs, keywords,
                                                     window_days * dhms::util::kDay);
            arr.push_back({{"complaint_id", c.id}, {"features", feature_to_json(features)}});
        }
        emit(features_json, arr.dump(2));
    });
}

dhms_status dhms_forest_fit(const char* features_json, uint32_t subsample, uint32_t tree_count,
                            uint64_t seed, double threshold_percentile, unsigned jobs,
                            dhms_forest** out_forest) {
    return wrap([&] {
        require_arg(out_forest, "out_forest");
        auto scored = scored_from_json(parse_doc(features_json, "features"));
        std::vector<dhms::anomaly::FeatureVector> data;
        data.reserve(scored.size());
        for (const auto& sc : scored) data.push_back(sc.features);
        dhms::anomaly::IsolationForest::Params params;
        params.subsample = subsample;
        params.tree_count = tree_count;
        params.seed = seed;
        params.threshold_percentile = threshold_percentile;
        *out_forest =
            new dhms_forest{dhms::anomaly::IsolationForest::fit(data, params, jobs)};
    });
}

dhms_status dhms_forest_score(const dhms_forest* forest, const char* feature_json,
                              double* out_score) {
    return wrap([&] {
        require_arg(forest, "forest");
        require_arg(out_score, "out_score");
        json j = parse_doc(feature_json, "feature");
        auto f = feature_from_json(j.contains("features") ? j.at("features") : j);
        *out_score = forest->forest.score(f);
    });
}

dhms_status dhms_forest_threshold(const dhms_forest* forest, double* out_threshold) {
    return wrap([&] {
        require_arg(forest, "forest");
        require_arg(out_threshold, "out_threshold");
        *out_threshold = forest->forest.threshold();
    });
}

dhms_status dhms_forest_flag(const dhms_forest* forest, const char* features_json,
                             double threshold, char** cases_json) {
    return wrap([&] {
        require_arg(forest, "forest");
        auto scored = scored_from_json(parse_doc(features_json, "features"));
        double cutoff = threshold < 0.0 ? forest->forest.threshold() : threshold;
        auto cases = dhms::anomaly::flag(forest->forest, scored, cutoff);
        json arr = json::array();
        for (const auto& c : cases) arr.push_back(dhms::anomaly::review_case_to_json(c));
        emit(cases_json, arr.dump(2));
    });
}

dhms_status dhms_forest_save(const dhms_forest* forest, char** forest_json) {
    return wrap([&] {
        require_arg(forest, "forest");
        emit(forest_json, forest->forest.to_json().dump());
    });
}

dhms_status dhms_forest_load(const char* forest_json, dhms_forest** out_forest) {
    return wrap([&] {
        require_arg(out_forest, "out_forest");
        *out_forest = new dhms_forest{
            dhms::anomaly::IsolationForest::from_json(parse_doc(forest_json, "forest"))};
    });
}

void dhms_forest_destroy(dhms_forest* forest) { delete forest; }

dhms_status dhms_review_case(const char* case_json, const char* decision, const char* note,
                             char** updated_json) {
    return wrap([&] {
        require_arg(decision, "decision");
        auto c = dhms::anomaly::review_case_from_json(parse_doc(case_json, "case"));
        auto d = dhms::anomaly::review_state_from_string(decision);
        if (!d) throw dhms::ValidationError(std::string("unknown review decision: ") + decision);
        auto updated = dhms::anomaly::review(c, *d, note ? note : "");
        emit(updated_json, dhms::anomaly::review_case_to_json(updated).dump(2));
    });
}

/* ---- forecast ---- */

dhms_status dhms_aggregate_weekly(const char* complaints_json, const char* category,
                                  const char* block, char** series_json) {
    return wrap([&] {
        auto cs = dhms::triage::complaints_from_json(parse_doc(complaints_json, "complaints"));
        std::optional<dhms::triage::Category> cat;
        if (category && *category) {
            auto parsed = dhms::triage::category_from_string(category);
            if (!parsed)
                throw dhms::ValidationError(std::string("unknown category: ") + category);
            cat = *parsed;
        }
        std::optional<std::string> blk;
        if (block && *block) blk = block;
        auto series = dhms::forecast::aggregate_weekly(cs, cat, blk);
        emit(series_json, dhms::forecast::series_to_json(series).dump(2));
    });
}

dhms_status dhms_forecast_fit(const char* series_json, uint32_t harmonics, char** model_json) {
    return wrap([&] {
        auto series = dhms::forecast::series_from_json(parse_doc(series_json, "series"));
        auto model = dhms::forecast::fit_model(series, harmonics);
        emit(model_json, dhms::forecast::model_to_json(model).dump(2));
    });
}

dhms_status dhms_forecast_predict(const char* model_json, uint32_t steps, double z,
                                  char** forecast_csv) {
    return wrap([&] {
        auto model = dhms::forecast::model_from_json(parse_doc(model_json, "model"));
        auto forecast = dhms::forecast::predict(model, steps, z);
        emit(forecast_csv, dhms::forecast::forecast_to_csv(forecast));
    });
}

dhms_status dhms_risk_heatmap(const char* forecasts_json, uint32_t steps, double z,
                              double medium_at, double high_at, char** heatmap_csv) {
    return wrap([&] {
        json arr = parse_doc(forecasts_json, "forecasts");
        std::vector<dhms::forecast::ForecastEntry> entries;
        for (const json& row : arr) {
            dhms::forecast::ForecastEntry e;
            e.block = dhms::util::get_or<std::string>(row, "block", "");
            e.category = dhms::util::get_or<std::string>(row, "category", "");
            auto model =
                dhms::forecast::model_from_json(dhms::util::require<json>(row, "model"));
            e.forecast = dhms::forecast::predict(model, steps, z);
            entries.push_back(std::move(e));
        }
        auto cells = dhms::forecast::risk_heatmap(entries, medium_at, high_at);
        emit(heatmap_csv, dhms::forecast::heatmap_to_csv(cells));
    });
}

/* ---- gate passes ---- */

dhms_pass_store* dhms_pass_store_create(const uint8_t* key, size_t key_len,
                                        int64_t exit_grace_seconds, uint64_t nonce_seed) {
    dhms_pass_store* handle = nullptr;
    wrap([&] {
        require_arg(key, "key");
        handle = new dhms_pass_store{std::make_unique<dhms::gatepass::PassStore>(
            std::vector<std::uint8_t>(key, key + key_len), exit_grace_seconds, nonce_seed)};
    });
    return handle;
}

dhms_pass_store* dhms_pass_store_load(const char* path, const uint8_t* key, size_t key_len,
                                      int64_t exit_grace_seconds, uint64_t nonce_seed) {
    dhms_pass_store* handle = nullptr;
    wrap([&] {
        require_arg(path, "path");
        require_arg(key, "key");
        handle = new dhms_pass_store{dhms::gatepass::PassStore::load(
            path, std::vector<std::uint8_t>(key, key + key_len), exit_grace_seconds,
            nonce_seed)};
    });
    return handle;
}

dhms_status dhms_pass_store_save(dhms_pass_store* store, const char* path) {
    return wrap([&] {
        require_arg(store, "store");
        require_arg(path, "path");
        store->store->save(path);
    });
}

dhms_status dhms_pass_request(dhms_pass_store* store, const char* request_json,
                              const char* at_iso8601, char** pass_json) {
    return wrap([&] {
        require_arg(store, "store");
        require_arg(at_iso8601, "at");
        json j = parse_doc(request_json, "request");
        dhms::gatepass::PassRequest req;
        req.student_id = dhms::util::require<std::string>(j, "student_id");
        req.reason = dhms::util::get_or<std::string>(j, "reason", "");
        req.destination = dhms::util::get_or<std::string>(j, "destination", "");
        req.exit_at = dhms::util::parse_iso8601(dhms::util::require<std::string>(j, "exit_at"));
        req.return_by =
            dhms::util::parse_iso8601(dhms::util::require<std::string>(j, "return_by"));
        req.emergency_contact = dhms::util::get_or<std::string>(j, "emergency_contact", "");
        auto pass = store->store->request_pass(req, dhms::util::parse_iso8601(at_iso8601));
        emit(pass_json, dhms::gatepass::pass_to_json(pass).dump(2));
    });
}

dhms_status dhms_pass_decide(dhms_pass_store* store, const char* pass_id, int approve,
                             const char* remarks, const char* at_iso8601, char** pass_json) {
    return wrap([&] {
        require_arg(store, "store");
        require_arg(pass_id, "pass_id");
        require_arg(at_iso8601, "at");
        auto pass = store->store->decide(pass_id, approve != 0, remarks ? remarks : "",
                                        dhms::util::parse_iso8601(at_iso8601));
        emit(pass_json, dhms::gatepass::pass_to_json(pass).dump(2));
    });
}

dhms_status dhms_pass_scan(dhms_pass_store* store, const char* token_text, const char* direction,
                           const char* at_iso8601, char** event_json) {
    return wrap([&] {
        require_arg(store, "store");
        require_arg(token_text, "token");
        require_arg(direction, "direction");
        require_arg(at_iso8601, "at");
        auto dir = dhms::gatepass::scan_direction_from_string(direction);
        if (!dir)
            throw dhms::ValidationError(std::string("direction must be exit or entry, got ") +
                                        direction);
        auto event =
            store->store->scan(token_text, *dir, dhms::util::parse_iso8601(at_iso8601));
        json j{{"at", dhms::util::format_iso8601(event.at)},
               {"direction", dhms::gatepass::to_string(event.direction)},
               {"result", dhms::gatepass::to_string(event.result)}};
        emit(event_json, j.dump(2));
    });
}

dhms_status dhms_pass_get(dhms_pass_store* store, const char* pass_id, char** pass_json) {
    return wrap([&] {
        require_arg(store, "store");
        require_arg(pass_id, "pass_id");
        emit(pass_json, dhms::gatepass::pass_to_json(store->store->get(pass_id)).dump(2));
    });
}

dhms_status dhms_pass_stats(dhms_pass_store* store, const char* now_iso8601, char** stats_json,
                            char** stats_csv) {
    return wrap([&] {
        require_arg(store, "store");
        std::optional<dhms::util::Timestamp> now;
        if (now_iso8601) now = dhms::util::parse_iso8601(now_iso8601);
        auto stats = dhms::gatepass::pass_stats(*store->store, now);
        emit(stats_json, dhms::gatepass::stats_to_json(stats).dump(2));
        if (stats_csv) emit(stats_csv, dhms::gatepass::stats_to_csv(stats));
    });
}

void dhms_pass_store_destroy(dhms_pass_store* store) { delete store; }

/* ---- workloads ---- */

dhms_status dhms_gen_allocation(const char* spec_json, char** instance_json) {
    return wrap([&] {
        auto spec = dhms::workload::spec_from_json(parse_doc(spec_json, "spec"));
        auto inst = dhms::workload::gen_allocation(spec);
        emit(instance_json, dhms::alloc::instance_to_json(inst).dump(2));
    });
}

dhms_status dhms_gen_complaints(const char* spec_json, char** complaints_json,
                                char** labels_json) {
    return wrap([&] {
        auto spec = dhms::workload::spec_from_json(parse_doc(spec_json, "spec"));
        auto stream = dhms::workload::gen_complaints(spec);
        emit(complaints_json, dhms::triage::complaints_to_json(stream.complaints).dump(2));
        if (labels_json) emit(labels_json, dhms::workload::labels_to_json(stream).dump(2));
    });
}

}  // extern "C"
