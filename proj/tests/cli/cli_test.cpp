// End-to-end checks of the dhms binary: exit codes, output confinement,
// help coverage, and byte-identical reruns.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

#ifndef DHMS_CLI_PATH
#define DHMS_CLI_PATH "dhms"
#endif

struct RunResult {
    int exit_code = -1;
    std::string output;  // stdout + stderr
};

fs::path sandbox_root() {
    static fs::path root = [] {
        fs::path p = fs::temp_directory_path() / "dhms_cli_tests";
        fs::remove_all(p);
        fs::create_directories(p);
        return p;
    }();
    return root;
}

RunResult run(const std::string& args) {
    static int counter = 0;
    fs::path log = sandbox_root() / ("out" + std::to_string(counter++) + ".log");
    std::string cmd = std::string(DHMS_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
    int rc = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = rc == -1 ? -1 : WEXITSTATUS(rc);
    std::ifstream f(log);
    std::stringstream buf;
    buf << f.rdbuf();
    r.output = buf.str();
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p);
    REQUIRE(f.good());
    std::stringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

void write(const fs::path& p, const std::string& content) {
    std::ofstream f(p);
    f << content;
}

const char* kSpec = R"({
  "seed": 42,
  "allocation": {"student_count": 30, "room_count": 20, "room_capacity": 2,
                 "preference_length": 3, "group_fraction": 0.2},
  "complaints": {"duration_weeks": 16, "weekly_rates": {"water": 3.0, "electrical": 2.0},
                 "anomaly_contamination": 0.05}
})";

}  // namespace

TEST_CASE("allocate happy path writes a result and prints metrics") {
    fs::path dir = sandbox_root() / "happy";
    fs::create_directories(dir);
    write(dir / "spec.json", kSpec);

    auto gen = run("--data-dir " + dir.string() + " gen alloc --spec " +
                   (dir / "spec.json").string() + " --out instance.json");
    REQUIRE(gen.exit_code == 0);
    REQUIRE(fs::exists(dir / "instance.json"));

    auto alloc = run("--data-dir " + dir.string() + " allocate --in " +
                     (dir / "instance.json").string() + " --out result.json --csv result.csv");
    CHECK(alloc.exit_code == 0);
    CHECK(alloc.output.find("engine") != std::string::npos);
    CHECK(alloc.output.find("top_two_rate=") != std::string::npos);
    CHECK(fs::exists(dir / "result.json"));
    CHECK(slurp(dir / "result.csv").rfind("student_id,room_id,rank_received\n", 0) == 0);
}

TEST_CASE("allocate --baseline prints engine and baseline rows") {
    fs::path dir = sandbox_root() / "baseline";
    fs::create_directories(dir);
    write(dir / "spec.json", kSpec);
    run("--data-dir " + dir.string() + " gen alloc --spec " + (dir / "spec.json").string() +
        " --out instance.json");

    auto out = run("--data-dir " + dir.string() + " allocate --in " +
                   (dir / "instance.json").string() + " --baseline");
    CHECK(out.exit_code == 0);
    CHECK(out.output.find("engine") != std::string::npos);
    CHECK(out.output.find("baseline") != std::string::npos);
}

TEST_CASE("malformed JSON exits 2 and reports line and column") {
    fs::path dir = sandbox_root() / "badjson";
    fs::create_directories(dir);
    write(dir / "broken.json", "{\n  \"students\": [,]\n}\n");
    auto out = run("--data-dir " + dir.string() + " allocate --in " +
                   (dir / "broken.json").string());
    CHECK(out.exit_code == 2);
    CHECK(out.output.find(":2:") != std::string::npos);  // line 2 named
}

TEST_CASE("unknown flags and subcommands exit 2 with usage text") {
    auto bad_flag = run("allocate --frobnicate x");
    CHECK(bad_flag.exit_code == 2);
    auto bad_cmd = run("defragment");
    CHECK(bad_cmd.exit_code == 2);
    auto no_cmd = run("");
    CHECK(no_cmd.exit_code == 2);
}

TEST_CASE("every subcommand lists its flags in --help") {
    struct Probe {
        const char* cmd;
        std::vector<const char*> flags;
    };
    const Probe probes[] = {
        {"gen alloc --help", {"--spec", "--out"}},
        {"gen complaints --help", {"--spec", "--out", "--labels"}},
        {"allocate --help", {"--in", "--baseline", "--out", "--csv"}},
        {"triage score --help", {"--in", "--now", "--out"}},
        {"triage queue --help", {"--in", "--now", "--out"}},
        {"triage kpi --help", {"--in", "--from", "--to", "--out", "--csv"}},
        {"triage transition --help", {"--in", "--id", "--to", "--note", "--at", "--out"}},
        {"detect fit --help", {"--in", "--model", "--features"}},
        {"detect score --help", {"--model", "--in", "--out"}},
        {"detect flag --help", {"--model", "--in", "--threshold", "--out"}},
        {"detect review --help", {"--cases", "--id", "--decision", "--note", "--out"}},
        {"forecast fit --help", {"--in", "--category", "--block", "--model"}},
        {"forecast predict --help", {"--model", "--steps", "--now", "--out"}},
        {"forecast heatmap --help", {"--models", "--steps", "--out"}},
        {"forecast retrain --help", {"--in", "--model", "--out"}},
        {"pass request --help",
         {"--store", "--student", "--reason", "--destination", "--exit", "--return", "--contact",
          "--at"}},
        {"pass decide --help", {"--store", "--id", "--approve", "--reject", "--remarks", "--at"}},
        {"pass scan --help", {"--store", "--token", "--token-file", "--direction", "--at"}},
        {"pass stats --help", {"--store", "--out", "--csv"}},
        {"report --help", {"--alloc", "--kpi", "--pass-stats", "--cases", "--out", "--csv"}},
    };
    for (const Probe& probe : probes) {
        auto out = run(probe.cmd);
        CHECK(out.exit_code == 0);
        for (const char* flag : probe.flags) {
            INFO(probe.cmd << " missing " << flag);
            CHECK(out.output.find(flag) != std::string::npos);
        }
    }
}

TEST_CASE("outputs are confined to the data directory") {
    fs::path dir = sandbox_root() / "confine";
    fs::create_directories(dir);
    write(dir / "spec.json", kSpec);
    auto escape = run("--data-dir " + dir.string() + " gen alloc --spec " +
                      (dir / "spec.json").string() + " --out ../escaped.json");
    CHECK(escape.exit_code == 1);
    CHECK(escape.output.find("outside data directory") != std::string::npos);
    CHECK_FALSE(fs::exists(sandbox_root() / "escaped.json"));

    auto nested = run("--data-dir " + dir.string() + " gen alloc --spec " +
                      (dir / "spec.json").string() + " --out sub/dir/instance.json");
    CHECK(nested.exit_code == 0);
    CHECK(fs::exists(dir / "sub/dir/instance.json"));
}

TEST_CASE("unknown config keys are rejected by name") {
    fs::path dir = sandbox_root() / "config";
    fs::create_directories(dir);
    write(dir / "bad.ini", "[triage]\nwarp_speed = 9\n");
    write(dir / "spec.json", kSpec);
    auto out = run("--config " + (dir / "bad.ini").string() + " --data-dir " + dir.string() +
                   " gen alloc --spec " + (dir / "spec.json").string() + " --out i.json");
    CHECK(out.exit_code == 1);
    CHECK(out.output.find("triage.warp_speed") != std::string::npos);

    write(dir / "good.ini", "[triage]\nelectrical = 0.9\n\n[forecast]\nharmonics = 2\n");
    auto ok = run("--config " + (dir / "good.ini").string() + " --data-dir " + dir.string() +
                  " gen alloc --spec " + (dir / "spec.json").string() + " --out i.json");
    CHECK(ok.exit_code == 0);
}

TEST_CASE("full pipeline reruns are byte-identical") {
    fs::path a = sandbox_root() / "rerun_a";
    fs::path b = sandbox_root() / "rerun_b";
    fs::create_directories(a);
    fs::create_directories(b);
    write(a / "spec.json", kSpec);
    write(b / "spec.json", kSpec);

    auto pipeline = [&](const fs::path& dir) {
        write(dir / "cfg.ini", std::string("[io]\nlexicon = ") + DHMS_DATA_DIR +
                                   "/sentiment_lexicon.tsv\nstopwords = " + DHMS_DATA_DIR +
                                   "/stopwords.tsv\n");
        std::string base = "--seed 42 --config " + (dir / "cfg.ini").string() + " --data-dir " +
                           dir.string() + " ";
        REQUIRE(run(base + "gen alloc --spec " + (dir / "spec.json").string() +
                    " --out instance.json")
                    .exit_code == 0);
        REQUIRE(run(base + "gen complaints --spec " + (dir / "spec.json").string() +
                    " --out complaints.json --labels labels.json")
                    .exit_code == 0);
        REQUIRE(run(base + "allocate --in " + (dir / "instance.json").string() +
                    " --out result.json --csv result.csv")
                    .exit_code == 0);
        REQUIRE(run(base + "triage queue --in " + (dir / "complaints.json").string() +
                    " --now 2026-01-01T00:00:00Z --out queue.json")
                    .exit_code == 0);
        REQUIRE(run(base + "detect fit --in " + (dir / "complaints.json").string() +
                    " --model forest.json")
                    .exit_code == 0);
        REQUIRE(run(base + "detect flag --model " + (dir / "forest.json").string() + " --in " +
                    (dir / "complaints.json").string() + " --out cases.jsonl")
                    .exit_code == 0);
        REQUIRE(run(base + "forecast fit --in " + (dir / "complaints.json").string() +
                    " --category water --model model.json")
                    .exit_code == 0);
        REQUIRE(run(base + "forecast predict --model " + (dir / "model.json").string() +
                    " --out forecast.csv")
                    .exit_code == 0);
    };
    pipeline(a);
    pipeline(b);

    for (const char* name : {"instance.json", "complaints.json", "labels.json", "result.json",
                             "result.csv", "queue.json", "forest.json", "cases.jsonl",
                             "model.json", "forecast.csv"}) {
        INFO(name);
        CHECK(slurp(a / name) == slurp(b / name));
    }
}

TEST_CASE("pass lifecycle through the CLI") {
    fs::path dir = sandbox_root() / "passes";
    fs::create_directories(dir);
    std::string base = "--seed 7 --data-dir " + dir.string() + " ";

    auto req = run(base + "pass request --store store.jsonl --student S1 "
                          "--reason \"family visit\" --destination home "
                          "--exit 2024-05-02T09:00:00Z --return 2024-05-02T20:00:00Z "
                          "--at 2024-05-01T10:00:00Z");
    REQUIRE(req.exit_code == 0);
    // id is printed as "requested <id> ..."
    std::string id = req.output.substr(req.output.find("requested ") + 10);
    id = id.substr(0, id.find(' '));

    auto dec = run(base + "pass decide --store store.jsonl --id " + id +
                   " --approve --at 2024-05-01T11:00:00Z");
    REQUIRE(dec.exit_code == 0);
    std::string token = dec.output.substr(dec.output.find("token: ") + 7);
    token = token.substr(0, token.find('\n'));

    auto scan1 = run(base + "pass scan --store store.jsonl --token " + token +
                     " --direction exit --at 2024-05-02T09:10:00Z");
    CHECK(scan1.exit_code == 0);
    CHECK(scan1.output.find("Accepted") != std::string::npos);

    auto scan2 = run(base + "pass scan --store store.jsonl --token " + token +
                     " --direction exit --at 2024-05-02T09:20:00Z");
    CHECK(scan2.exit_code == 0);
    CHECK(scan2.output.find("RejectedReused") != std::string::npos);

    auto stats = run(base + "pass stats --store store.jsonl --out stats.json");
    CHECK(stats.exit_code == 0);
    CHECK(stats.output.find("reuse=1") != std::string::npos);
    CHECK(fs::exists(dir / "stats.json"));

    auto wrong = run(base + "pass decide --store store.jsonl --id " + id +
                     " --approve --reject --at 2024-05-01T11:00:00Z");
    CHECK(wrong.exit_code == 1);
}

TEST_CASE("report merges module outputs") {
    fs::path dir = sandbox_root() / "report";
    fs::create_directories(dir);
    write(dir / "spec.json", kSpec);
    std::string base = "--seed 42 --data-dir " + dir.string() + " ";
    REQUIRE(run(base + "gen complaints --spec " + (dir / "spec.json").string() +
                " --out complaints.json --labels labels.json")
                .exit_code == 0);
    REQUIRE(run(base + "triage kpi --in " + (dir / "complaints.json").string() +
                " --from 2020-01-01T00:00:00Z --to 2030-01-01T00:00:00Z --out kpi.json")
                .exit_code == 0);
    auto rep = run(base + "report --kpi " + (dir / "kpi.json").string() +
                   " --out report.json --csv report.csv");
    CHECK(rep.exit_code == 0);
    std::string body = slurp(dir / "report.json");
    CHECK(body.find("\"kpi\"") != std::string::npos);
    CHECK(slurp(dir / "report.csv").rfind("section,metric,value\n", 0) == 0);
}

TEST_CASE("triage event log and review flow through the CLI") {
    fs::path dir = sandbox_root() / "logflow";
    fs::create_directories(dir);
    write(dir / "spec.json", kSpec);
    write(dir / "cfg.ini", std::string("[io]\nlexicon = ") + DHMS_DATA_DIR +
                               "/sentiment_lexicon.tsv\nstopwords = " + DHMS_DATA_DIR +
                               "/stopwords.tsv\n");
    std::string base =
        "--seed 42 --config " + (dir / "cfg.ini").string() + " --data-dir " + dir.string() + " ";
    REQUIRE(run(base + "gen complaints --spec " + (dir / "spec.json").string() +
                " --out complaints.json --labels labels.json")
                .exit_code == 0);

    // array -> event log -> transition appends -> queue reads the log
    REQUIRE(run(base + "triage log --in " + (dir / "complaints.json").string() +
                " --log complaints.jsonl")
                .exit_code == 0);
    auto queue_before = run(base + "triage queue --in " + (dir / "complaints.jsonl").string() +
                            " --now 2026-01-01T00:00:00Z");
    REQUIRE(queue_before.exit_code == 0);
    // pick a still-Pending complaint so Pending -> InProgress is legal
    const std::string id_pat = "\"id\": \"";
    auto pending_pos = queue_before.output.find("\"status\": \"Pending\"");
    REQUIRE(pending_pos != std::string::npos);
    auto id_pos = queue_before.output.rfind(id_pat, pending_pos);
    REQUIRE(id_pos != std::string::npos);
    std::string some_id = queue_before.output.substr(id_pos + id_pat.size());
    some_id = some_id.substr(0, some_id.find('"'));
    auto moved = run(base + "triage transition --in " + (dir / "complaints.jsonl").string() +
                     " --id " + some_id + " --to InProgress --note probe --at 2026-01-02T00:00:00Z");
    CHECK(moved.exit_code == 0);
    auto illegal = run(base + "triage transition --in " + (dir / "complaints.jsonl").string() +
                       " --id " + some_id + " --to Verified --at 2026-01-03T00:00:00Z");
    CHECK(illegal.exit_code == 1);

    // detect flag writes JSON-lines; review decides a case in place
    REQUIRE(run(base + "detect fit --in " + (dir / "complaints.jsonl").string() +
                " --model forest.json")
                .exit_code == 0);
    REQUIRE(run(base + "detect flag --model " + (dir / "forest.json").string() + " --in " +
                (dir / "complaints.jsonl").string() + " --out cases.jsonl")
                .exit_code == 0);
    std::string first_case = slurp(dir / "cases.jsonl");
    REQUIRE_FALSE(first_case.empty());
    const std::string case_pat = "\"complaint_id\":\"";
    auto case_pos = first_case.find(case_pat);
    REQUIRE(case_pos != std::string::npos);
    std::string case_id = first_case.substr(case_pos + case_pat.size());
    case_id = case_id.substr(0, case_id.find('"'));
    auto review = run(base + "detect review --cases " + (dir / "cases.jsonl").string() +
                      " --id " + case_id + " --decision Confirmed --note checked");
    CHECK(review.exit_code == 0);
    CHECK(slurp(dir / "cases.jsonl").find("Confirmed") != std::string::npos);
    auto twice = run(base + "detect review --cases " + (dir / "cases.jsonl").string() + " --id " +
                     case_id + " --decision Dismissed");
    CHECK(twice.exit_code == 1);
}

TEST_CASE("forecast retrain refits an existing model in place") {
    fs::path dir = sandbox_root() / "retrain";
    fs::create_directories(dir);
    write(dir / "spec.json", kSpec);
    std::string base = "--seed 42 --data-dir " + dir.string() + " ";
    REQUIRE(run(base + "gen complaints --spec " + (dir / "spec.json").string() +
                " --out complaints.json --labels labels.json")
                .exit_code == 0);
    REQUIRE(run(base + "forecast fit --in " + (dir / "complaints.json").string() +
                " --category water --model model.json")
                .exit_code == 0);
    std::string before = slurp(dir / "model.json");
    auto retrain = run(base + "forecast retrain --in " + (dir / "complaints.json").string() +
                       " --model " + (dir / "model.json").string());
    CHECK(retrain.exit_code == 0);
    CHECK(slurp(dir / "model.json") == before);  // same data, same fit

    // staleness warning fires when the model is old relative to --now
    REQUIRE(run(base + "forecast predict --model " + (dir / "model.json").string() +
                " --out f.csv")
                .exit_code == 0);
    auto stale = run(base + "forecast predict --model " + (dir / "model.json").string() +
                     " --now 2030-01-01 --out f2.csv");
    CHECK(stale.exit_code == 0);
    CHECK(stale.output.find("retrain") != std::string::npos);
}
