#pragma once

#include <string>
#include <vector>

#include "groupphi/partition.hpp"

namespace groupphi {

enum class PhiMethod { empirical, autoregressive, atomic };

const char* phi_method_name(PhiMethod m);

struct PhiResult {
    double value = 0.0;       // bits
    PhiMethod method = PhiMethod::empirical;
    Partition partition = Partition::atomic(1);
    int tau = 1;
    std::vector<std::string> dropped_nodes; // removed by stability correction
    int retries = 0;
    bool valid = false;
};

struct SweepResult {
    std::vector<double> parameter_values; // tau in steps or delta in ms
    std::vector<double> mean_phi;
    std::vector<double> stderr_phi;
    double argmax = 0.0; // smallest parameter attaining the max of mean_phi
};

} // namespace groupphi
