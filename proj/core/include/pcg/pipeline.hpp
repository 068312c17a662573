#pragma once

#include <functional>
#include <string>
#include <vector>

#include "pcg/signal.hpp"

namespace pcg {

/// One preconfigured transform. `apply` must not modify its input.
struct PipelineStep {
    std::string name;
    Params params;
    std::function<Signal(const Signal&)> apply;

    /// The log entry this step contributes: "name(key=value,...)".
    std::string describe() const { return format_step(name, params); }
};

/// An ordered chain of steps, reusable across inputs.
class Pipeline {
public:
    Pipeline() = default;
    explicit Pipeline(std::vector<PipelineStep> steps);

    /// Copy of this pipeline with `step` appended.
    Pipeline then(PipelineStep step) const;

    /// Applies every step left to right. The output log is the input log plus
    /// exactly one entry per step. A failing step is rethrown as
    /// PipelineError carrying its index.
    Signal run(const Signal& input) const;

    const std::vector<PipelineStep>& steps() const noexcept { return steps_; }
    bool empty() const noexcept { return steps_.empty(); }

private:
    std::vector<PipelineStep> steps_;
};

Signal run_pipeline(const Pipeline& pipeline, const Signal& input);

}  // namespace pcg
