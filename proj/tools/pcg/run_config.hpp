#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pcg/events.hpp"
#include "pcg/features.hpp"
#include "pcg/hsmm.hpp"
#include "pcg/io.hpp"
#include "pcg/pipeline.hpp"
#include "pcg/synth.hpp"
#include "pcg/workflow.hpp"

namespace pcgcli {

struct StepSpec {
    std::string name;
    pcg::Params params;
};

// Everything a config file can set. Command-line flags are applied on top.
struct RunConfig {
    std::vector<StepSpec> pipeline;
    std::optional<pcg::SegmentMethod> method;
    std::optional<std::string> model;
    pcg::DetectorConfig detector;
    std::optional<pcg::FeatureGroup> group;
    pcg::EventKind region = pcg::EventKind::S1;
    double tolerance_ms = 30.0;
    std::optional<pcg::RawFormatSpec> raw;
    pcg::SynthConfig synth;
    pcg::HsmmTrainConfig train;

    pcg::Pipeline build_pipeline() const;
};

// Throws pcg::ParseError naming the offending field.
RunConfig parse_run_config(const std::string& text);
RunConfig load_run_config(const std::filesystem::path& path);

pcg::SampleEncoding parse_encoding(const std::string& text);
pcg::EventKind parse_region(const std::string& text);

}  // namespace pcgcli
