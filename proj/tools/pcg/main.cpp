#include <CLI11.hpp>

#include <iostream>

#include "commands.hpp"
#include "pcg/error.hpp"


int main(int argc, char** argv) {
    CLI::App app{"Phonocardiogram analysis toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "pcg 0.3.0");

    std::string config_path;
    unsigned threads = 0;
    app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
    app.add_option("--threads", threads, "Worker threads (default: PCG_THREADS or all cores)");

    std::vector<std::string> inputs;
    std::string out;
    std::string method;
    std::string model;
    double raw_fs = 0.0;
    std::string raw_encoding;

    auto add_raw = [&](CLI::App* cmd) {
        cmd->add_option("--raw-fs", raw_fs, "Sampling rate of raw (non-WAV) inputs");
        cmd->add_option("--raw-encoding", raw_encoding, "int8, int16_le or float32_le");
    };
    auto add_method = [&](CLI::App* cmd) {
        cmd->add_option("--method", method, "naive, adaptive or hsmm")
            ->check(CLI::IsMember({"naive", "adaptive", "hsmm"}));
        cmd->add_option("--model", model, "HSMM model file");
    };

    auto* sqi = app.add_subcommand("sqi", "Signal quality indices per recording");
    sqi->add_option("inputs", inputs, "Recordings")->required();
    sqi->add_option("-o,--out", out, "Output CSV (default stdout)");
    add_raw(sqi);

    auto* segment = app.add_subcommand("segment", "Detect heart sounds");
    segment->add_option("inputs", inputs, "Recordings")->required();
    segment->add_option("-o,--out-dir", out, "Directory for <stem>.segments.csv");
    add_method(segment);
    add_raw(segment);

    std::vector<std::string> segments;
    std::string region;
    auto* features = app.add_subcommand("features", "Feature table and summary per recording");
    features->add_option("inputs", inputs, "Recordings")->required();
    features->add_option("--segments", segments, "Segment CSV per input");
    features->add_option("--region", region, "S1, S2, systole, diastole or cycle");
    features->add_option("-o,--out-dir", out, "Directory for <stem>.features.csv and <stem>.summary.csv");
    add_method(features);
    add_raw(features);

    std::vector<std::string> labels;
    std::uint64_t seed = 0;
    bool seed_given = false;
    auto* train = app.add_subcommand("train-hsmm", "Train an HSMM segmentation model");
    train->add_option("inputs", inputs, "Recordings")->required();
    train->add_option("--labels", labels, "Annotation CSV per input (default <stem>.csv)");
    train->add_option("--out", out, "Model file")->required();
    train->add_option("--seed", seed, "Logistic regression seed")->each([&](const std::string&) { seed_given = true; });
    add_raw(train);

    pcgcli::ValidateArgs vargs;
    double tolerance_ms = 0.0;
    std::vector<std::string> kinds;
    auto* validate = app.add_subcommand("validate", "Score detections against annotations");
    validate->add_option("--detections", vargs.detections, "Segment CSVs");
    validate->add_option("--signals", vargs.signals, "Recordings to segment with --method");
    validate->add_option("--labels", vargs.labels, "Annotation CSV per input")->required();
    validate->add_option("--kind", kinds, "S1 and/or S2 (default both)");
    validate->add_option("--tolerance-ms", tolerance_ms, "Matching tolerance (default 30)");
    validate->add_option("--curve", vargs.curve, "Score-vs-tolerance CSV");
    validate->add_option("--bland-altman", vargs.bland_altman, "Bland-Altman CSV");
    validate->add_option("-o,--out", vargs.out, "Metrics CSV (default stdout)");
    add_method(validate);
    add_raw(validate);

    double snr_db = 0.0, duration_s = 0.0;
    auto* synth = app.add_subcommand("synth", "Generate a synthetic recording with annotations");
    synth->add_option("-o,--out", out, "Output stem; writes <stem>.wav and <stem>.csv")->required();
    synth->add_option("--seed", seed, "Random seed")->each([&](const std::string&) { seed_given = true; });
    synth->add_option("--snr-db", snr_db, "Noise level");
    synth->add_option("--duration-s", duration_s, "Recording length");

    CLI11_PARSE(app, argc, argv);

    pcgcli::Context ctx;
    try {
        if (!config_path.empty()) ctx.config = pcgcli::load_run_config(config_path);
        auto& cfg = ctx.config;
        if (!method.empty()) cfg.method = pcg::parse_segment_method(method);
        if (!model.empty()) cfg.model = model;
        if (!region.empty()) cfg.region = pcgcli::parse_region(region);
        if (raw_fs > 0.0 || !raw_encoding.empty()) {
            pcg::RawFormatSpec spec = cfg.raw.value_or(pcg::RawFormatSpec{});
            if (raw_fs > 0.0) spec.fs = raw_fs;
            if (!raw_encoding.empty()) spec.sample_encoding = pcgcli::parse_encoding(raw_encoding);
            cfg.raw = spec;
        }
        if (validate->count("--tolerance-ms") > 0) cfg.tolerance_ms = tolerance_ms;
        if (seed_given) {
            cfg.synth.seed = seed;
            cfg.train.logistic.seed = seed;
        }
        if (synth->count("--snr-db") > 0) cfg.synth.snr_db = snr_db;
        if (synth->count("--duration-s") > 0) cfg.synth.duration_s = duration_s;
        ctx.threads = threads > 0 ? threads : pcgcli::default_threads();
    } catch (const pcg::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (*sqi) return pcgcli::cmd_sqi(ctx, inputs, out);
        if (*segment) return pcgcli::cmd_segment(ctx, inputs, out);
        if (*features) return pcgcli::cmd_features(ctx, inputs, segments, out);
        if (*train) return pcgcli::cmd_train_hsmm(ctx, inputs, labels, out);
        if (*validate) {
            if (!kinds.empty()) vargs.kinds = kinds;
            return pcgcli::cmd_validate(ctx, vargs);
        }
        if (*synth) return pcgcli::cmd_synth(ctx, out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
