// Acceptance runner: one PASS/FAIL line per criterion.

#include <cstdio>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "pcg/diagnostics.hpp"
#include "support/checks.hpp"

namespace {

struct Criterion {
    const char* name;
    std::function<checks::Outcome()> run;
};

checks::Outcome all_of(std::initializer_list<checks::Outcome (*)()> parts) {
    checks::Outcome total;
    for (auto part : parts) total.merge(part());
    return total;
}

}  // namespace

int main(int argc, char** argv) {
    const std::filesystem::path workdir =
        argc > 1 ? std::filesystem::path(argv[1]) : std::filesystem::temp_directory_path() / "pcg_acceptance";
    std::vector<std::string> warnings;
    pcg::set_warning_sink([&](const std::string& w) { warnings.push_back(w); });

    const std::vector<Criterion> criteria{
        {"synthetic end-to-end HSMM (S1 F1 >= 0.95, MAE <= 15 ms, < 60 s)", checks::hsmm_end_to_end},
        {"naive/adaptive detectors on clean synthetic", checks::detectors_on_clean},
        {"oracle equivalence suites",
         [] {
             return all_of({checks::sampen_vs_bruteforce, [] { return checks::features_vs_definitions(100); },
                            checks::match_vs_optimal, checks::katz_vs_transcription, checks::stats_vs_sorted});
         }},
        {"numerical identities",
         [] {
             return all_of({checks::dwt_round_trip, checks::hilbert_unit_tone, checks::kurtosis_dense_sine,
                            checks::katz_straight_line, checks::logistic_gradient, checks::f1_monotone_in_tolerance});
         }},
        {"determinism and serialization",
         [&] {
             auto o = all_of({checks::training_determinism, checks::model_round_trip_decode});
             o.merge(checks::cli_reruns(PCG_CLI_PATH, workdir));
             return o;
         }},
        {"metric arithmetic (TP/FP/M -> PPV 0.970, TPR 0.972, F1 0.971)", checks::count_arithmetic},
    };

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        checks::Outcome o;
        try {
            o = criteria[i].run();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        std::string detail = o.ok() ? o.summary : o.failures.front();
        if (o.failures.size() > 1) detail += " (+" + std::to_string(o.failures.size() - 1) + " more)";
        std::printf("%s %zu %s%s%s\n", o.ok() ? "PASS" : "FAIL", i + 1, criteria[i].name, detail.empty() ? "" : ": ",
                    detail.c_str());
        std::fflush(stdout);
        failed += o.ok() ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}
