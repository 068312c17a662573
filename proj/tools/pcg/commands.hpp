#pragma once

#include <string>
#include <vector>

#include "run_config.hpp"

namespace pcgcli {

struct Context {
    RunConfig config;
    unsigned threads = 1;
};

int cmd_sqi(const Context& ctx, const std::vector<std::string>& inputs, const std::string& out);
int cmd_segment(const Context& ctx, const std::vector<std::string>& inputs, const std::string& out_dir);
int cmd_features(const Context& ctx, const std::vector<std::string>& inputs, const std::vector<std::string>& segments,
                 const std::string& out_dir);
int cmd_train_hsmm(const Context& ctx, const std::vector<std::string>& inputs, std::vector<std::string> labels,
                   const std::string& out_model);

struct ValidateArgs {
    std::vector<std::string> detections;  // segment CSVs
    std::vector<std::string> signals;     // or recordings to segment
    std::vector<std::string> labels;
    std::vector<std::string> kinds{"S1", "S2"};
    std::string out;
    std::string curve;
    std::string bland_altman;
};
int cmd_validate(const Context& ctx, const ValidateArgs& args);

int cmd_synth(const Context& ctx, const std::string& out_stem);

// PCG_THREADS, else the hardware concurrency.
unsigned default_threads();

}  // namespace pcgcli
