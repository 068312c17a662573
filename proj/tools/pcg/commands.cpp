#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <thread>

#include "pcg/error.hpp"
#include "pcg/io.hpp"
#include "pcg/sqi.hpp"
#include "pcg/stats.hpp"
#include "pcg/validate.hpp"

namespace pcgcli {
namespace fs = std::filesystem;

namespace {

// Runs fn(i) for i in [0, n) on up to `threads` workers. Errors are collected
// per index so reporting stays in input order.
template <class F>
std::vector<std::string> for_each_file(std::size_t n, unsigned threads, F&& fn) {
    std::vector<std::string> errors(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                fn(i);
            } catch (const std::exception& e) {
                errors[i] = e.what();
                if (errors[i].empty()) errors[i] = "unknown error";
            }
        }
    };
    const unsigned count = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < count; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return errors;
}

int report(const std::vector<std::string>& names, const std::vector<std::string>& errors) {
    int status = 0;
    for (std::size_t i = 0; i < errors.size(); ++i) {
        if (errors[i].empty()) continue;
        std::cerr << "error: " << names[i] << ": " << errors[i] << '\n';
        status = 1;
    }
    return status;
}

pcg::Signal load(const Context& ctx, const std::string& path) {
    return ctx.config.build_pipeline().run(pcg::load_signal(path, ctx.config.raw));
}

void emit(const std::string& out, const pcg::Table& table) {
    if (out.empty() || out == "-") {
        std::cout << pcg::format_csv(table);
    } else {
        pcg::write_table(out, table);
    }
}

fs::path output_for(const std::string& dir, const std::string& input, const std::string& suffix) {
    fs::path base = dir.empty() ? fs::path(".") : fs::path(dir);
    return base / (fs::path(input).stem().string() + suffix);
}

std::optional<pcg::HsmmModel> model_for(const Context& ctx) {
    if (ctx.config.method != pcg::SegmentMethod::hsmm) return std::nullopt;
    if (!ctx.config.model) throw pcg::Error("--method hsmm needs --model");
    return pcg::load_model(*ctx.config.model);
}

void make_dir(const std::string& dir) {
    if (!dir.empty()) fs::create_directories(dir);
}

}  // namespace

unsigned default_threads() {
    if (const char* env = std::getenv("PCG_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
        std::cerr << "warning: ignoring invalid PCG_THREADS='" << env << "'\n";
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

int cmd_sqi(const Context& ctx, const std::vector<std::string>& inputs, const std::string& out) {
    std::vector<pcg::SqiReport> reports(inputs.size());
    const auto errors = for_each_file(inputs.size(), ctx.threads, [&](std::size_t i) {
        reports[i] = pcg::compute_sqi(load(ctx, inputs[i]));
    });
    std::vector<std::string> files;
    std::vector<double> kurt, env_std, ac, lag, sampen, dop;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        if (!errors[i].empty()) continue;
        files.push_back(inputs[i]);
        kurt.push_back(reports[i].kurtosis);
        env_std.push_back(reports[i].env_std);
        ac.push_back(reports[i].autocorr_max);
        lag.push_back(reports[i].autocorr_lag_s);
        sampen.push_back(reports[i].samp_en);
        dop.push_back(reports[i].degree_of_periodicity);
    }
    pcg::Table t;
    t.add_column("file", files);
    t.add_column("kurtosis", kurt);
    t.add_column("env_std", env_std);
    t.add_column("autocorr_max", ac);
    t.add_column("autocorr_lag_s", lag);
    t.add_column("samp_en", sampen);
    t.add_column("degree_of_periodicity", dop);
    emit(out, t);
    return report(inputs, errors);
}

int cmd_segment(const Context& ctx, const std::vector<std::string>& inputs, const std::string& out_dir) {
    const auto method = ctx.config.method.value_or(pcg::SegmentMethod::hsmm);
    Context local = ctx;
    local.config.method = method;
    const auto model = model_for(local);
    make_dir(out_dir);
    const auto errors = for_each_file(inputs.size(), ctx.threads, [&](std::size_t i) {
        const auto segs = pcg::segment_recording(load(ctx, inputs[i]), method, model ? &*model : nullptr,
                                                 ctx.config.detector);
        pcg::write_table(output_for(out_dir, inputs[i], ".segments.csv"), pcg::segments_table(segs));
    });
    return report(inputs, errors);
}

int cmd_features(const Context& ctx, const std::vector<std::string>& inputs, const std::vector<std::string>& segments,
                 const std::string& out_dir) {
    if (!segments.empty() && segments.size() != inputs.size()) {
        throw pcg::Error("--segments needs one file per input");
    }
    const auto model = segments.empty() ? model_for(ctx) : std::nullopt;
    if (segments.empty() && !ctx.config.method) throw pcg::Error("features need --segments or --method");
    const auto group = ctx.config.group.value_or(pcg::default_feature_group());
    make_dir(out_dir);
    const auto errors = for_each_file(inputs.size(), ctx.threads, [&](std::size_t i) {
        const auto sig = load(ctx, inputs[i]);
        const auto segs = segments.empty()
                              ? pcg::segment_recording(sig, *ctx.config.method, model ? &*model : nullptr,
                                                       ctx.config.detector)
                              : pcg::read_segments(segments[i]);
        const auto regions = pcg::derive_regions(segs, ctx.config.region);
        const auto table = pcg::run_group(group, regions, sig);
        pcg::write_table(output_for(out_dir, inputs[i], ".features.csv"), pcg::to_table(table, regions));
        pcg::write_table(output_for(out_dir, inputs[i], ".summary.csv"), pcg::summary_table(pcg::summarize(table)));
    });
    return report(inputs, errors);
}

int cmd_train_hsmm(const Context& ctx, const std::vector<std::string>& inputs, std::vector<std::string> labels,
                   const std::string& out_model) {
    if (labels.empty()) {
        for (const auto& in : inputs) labels.push_back(fs::path(in).replace_extension(".csv").string());
    }
    if (labels.size() != inputs.size()) throw pcg::Error("--labels needs one annotation file per input");
    std::vector<std::optional<pcg::Signal>> sigs(inputs.size());
    std::vector<pcg::LabelSet> labs(inputs.size());
    const auto errors = for_each_file(inputs.size(), ctx.threads, [&](std::size_t i) {
        sigs[i] = load(ctx, inputs[i]);
        labs[i] = pcg::read_annotations(labels[i]);
    });
    if (report(inputs, errors) != 0) return 1;
    std::vector<pcg::Signal> signals;
    for (auto& s : sigs) signals.push_back(std::move(*s));
    const auto model = pcg::train(signals, labs, ctx.config.train);
    pcg::save_model(model, out_model);
    return 0;
}

int cmd_validate(const Context& ctx, const ValidateArgs& args) {
    const bool from_signals = !args.signals.empty();
    if (from_signals == !args.detections.empty()) {
        throw pcg::Error("validate needs either --detections or --signals with --method");
    }
    const auto& inputs = from_signals ? args.signals : args.detections;
    if (args.labels.size() != inputs.size()) throw pcg::Error("--labels needs one annotation file per input");
    if (from_signals && !ctx.config.method) throw pcg::Error("--signals needs --method");
    std::vector<pcg::EventKind> kinds;
    for (const auto& k : args.kinds) {
        const auto kind = pcg::parse_event_kind(k);
        if (kind != pcg::EventKind::S1 && kind != pcg::EventKind::S2) throw pcg::Error("--kind must be S1 or S2");
        kinds.push_back(*kind);
    }
    const auto model = from_signals ? model_for(ctx) : std::nullopt;

    std::vector<pcg::SegmentSet> segs(inputs.size());
    std::vector<pcg::LabelSet> labs(inputs.size());
    const auto errors = for_each_file(inputs.size(), ctx.threads, [&](std::size_t i) {
        labs[i] = pcg::read_annotations(args.labels[i]);
        segs[i] = from_signals ? pcg::segment_recording(load(ctx, inputs[i]), *ctx.config.method,
                                                        model ? &*model : nullptr, ctx.config.detector)
                               : pcg::read_segments(inputs[i]);
    });
    if (report(inputs, errors) != 0) return 1;

    std::vector<pcg::MetricsReport> reports;
    std::vector<std::string> kind_names;
    pcg::Table curves, ba_rows;
    for (auto kind : kinds) {
        const auto label_kind = kind == pcg::EventKind::S1 ? pcg::LabelKind::S1 : pcg::LabelKind::S2;
        std::vector<std::vector<double>> dets, refs;
        std::vector<pcg::MatchResult> results;
        for (std::size_t i = 0; i < inputs.size(); ++i) {
            dets.push_back(segs[i].peak_times(kind));
            refs.push_back(labs[i].times(label_kind));
            results.push_back(pcg::match(dets.back(), refs.back(), ctx.config.tolerance_ms));
        }
        std::size_t detected = 0;
        for (const auto& d : dets) detected += d.size();
        if (detected == 0) {
            std::cerr << "warning: no " << pcg::to_string(kind) << " detections; skipping its metrics\n";
            continue;
        }
        reports.push_back(pcg::metrics(results, ctx.config.tolerance_ms));
        kind_names.emplace_back(pcg::to_string(kind));

        if (!args.curve.empty()) {
            const auto grid = pcg::default_tolerance_grid();
            const auto t = pcg::curve_table(pcg::score_vs_tolerance(dets, refs, grid));
            const auto n = t.row_count();
            if (curves.names.empty()) {
                curves.add_column("kind", std::vector<std::string>(n, kind_names.back()));
                for (std::size_t c = 0; c < t.names.size(); ++c) curves.add_column(t.names[c], t.columns[c]);
            } else {
                curves.columns[0].insert(curves.columns[0].end(), n, pcg::Cell(kind_names.back()));
                for (std::size_t c = 0; c < t.names.size(); ++c) {
                    curves.columns[c + 1].insert(curves.columns[c + 1].end(), t.columns[c].begin(), t.columns[c].end());
                }
            }
        }
        if (!args.bland_altman.empty()) {
            for (std::size_t i = 0; i < inputs.size(); ++i) {
                pcg::BlandAltman ba;
                try {
                    ba = pcg::bland_altman_diffs(dets[i], refs[i], ctx.config.tolerance_ms);
                } catch (const pcg::Error& e) {
                    std::cerr << "warning: " << inputs[i] << ": " << e.what() << '\n';
                    continue;
                }
                const auto t = pcg::bland_altman_table(ba);
                const auto n = t.row_count();
                if (ba_rows.names.empty()) {
                    ba_rows.add_column("file", std::vector<std::string>());
                    ba_rows.add_column("kind", std::vector<std::string>());
                    for (const auto& name : t.names) ba_rows.add_column(name, std::vector<pcg::Cell>());
                }
                ba_rows.columns[0].insert(ba_rows.columns[0].end(), n, pcg::Cell(inputs[i]));
                ba_rows.columns[1].insert(ba_rows.columns[1].end(), n, pcg::Cell(kind_names.back()));
                for (std::size_t c = 0; c < t.names.size(); ++c) {
                    ba_rows.columns[c + 2].insert(ba_rows.columns[c + 2].end(), t.columns[c].begin(), t.columns[c].end());
                }
            }
        }
    }
    auto table = pcg::metrics_table(reports);
    table.names.insert(table.names.begin(), "kind");
    std::vector<pcg::Cell> kind_cells(kind_names.begin(), kind_names.end());
    table.columns.insert(table.columns.begin(), std::move(kind_cells));
    emit(args.out, table);
    if (!args.curve.empty()) pcg::write_table(args.curve, curves);
    if (!args.bland_altman.empty()) pcg::write_table(args.bland_altman, ba_rows);
    return 0;
}

int cmd_synth(const Context& ctx, const std::string& out_stem) {
    const fs::path stem(out_stem);
    if (stem.has_parent_path()) fs::create_directories(stem.parent_path());
    pcg::write_synth(pcg::generate(ctx.config.synth), stem);
    return 0;
}

}  // namespace pcgcli
