#include "pcg/pipeline.hpp"

#include "pcg/error.hpp"

namespace pcg {

Pipeline::Pipeline(std::vector<PipelineStep> steps) : steps_(std::move(steps)) {
    for (std::size_t i = 0; i < steps_.size(); ++i) {
        if (!steps_[i].apply) {
            throw Error("pipeline step " + std::to_string(i) + " has no operation");
        }
    }
}

Pipeline Pipeline::then(PipelineStep step) const {
    auto steps = steps_;
    steps.push_back(std::move(step));
    return Pipeline(std::move(steps));
}

Signal Pipeline::run(const Signal& input) const {
    Signal current = input;
    for (std::size_t i = 0; i < steps_.size(); ++i) {
        const auto& step = steps_[i];
        try {
            Signal out = step.apply(current);
            auto log = current.log();
            log.push_back(step.describe());
            current = Signal(out.data(), out.fs(), std::move(log));
        } catch (const PipelineError&) {
            throw;
        } catch (const std::exception& e) {
            throw PipelineError(i, step.name, e.what());
        }
    }
    return current;
}

Signal run_pipeline(const Pipeline& pipeline, const Signal& input) { return pipeline.run(input); }

}  // namespace pcg
