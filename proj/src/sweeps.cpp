#include "groupphi/sweeps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "groupphi/ingestion.hpp"

namespace groupphi {

namespace {

void finalize_argmax(SweepResult& sweep) {
    double best = -std::numeric_limits<double>::infinity();
    bool found = false;
    for (std::size_t i = 0; i < sweep.parameter_values.size(); ++i) {
        const double v = sweep.mean_phi[i];
        if (!std::isfinite(v)) continue;
        if (v > best + 1e-15) { // ties break toward the smaller parameter
            best = v;
            sweep.argmax = sweep.parameter_values[i];
            found = true;
        }
    }
    if (!found)
        fail(Errc::NoValidResults, "no sweep grid point produced a valid phi");
}

} // namespace

SweepResult sweep_time_delay(std::span<const StateMatrix> groups,
                             std::span<const int> tau_values, PhiMethod method) {
    if (groups.empty()) fail(Errc::NoValidResults, "no state matrices given");
    for (int tau : tau_values)
        for (const auto& g : groups)
            if (tau < 1 || static_cast<std::size_t>(tau) > g.steps() - 1)
                fail(Errc::TauOutOfRange,
                     "tau " + std::to_string(tau) + " invalid for T = " +
                         std::to_string(g.steps()));

    SweepResult sweep;
    for (int tau : tau_values) {
        std::vector<PhiResult> results;
        for (const auto& g : groups) {
            try {
                results.push_back(stabilized_phi(g, tau, method));
            } catch (const Error& e) {
                if (e.code() != Errc::ExhaustedNodes) throw;
            }
        }
        sweep.parameter_values.push_back(tau);
        if (results.empty()) {
            sweep.mean_phi.push_back(std::numeric_limits<double>::quiet_NaN());
            sweep.stderr_phi.push_back(std::numeric_limits<double>::quiet_NaN());
        } else {
            const PhiAverage avg = averaged_phi(results);
            sweep.mean_phi.push_back(avg.mean);
            sweep.stderr_phi.push_back(avg.stderr_);
        }
    }
    finalize_argmax(sweep);
    return sweep;
}

SweepResult sweep_step_size(std::span<const PacketRecord> packets,
                            const SampleConfig& sampling,
                            std::span<const double> delta_values_ms,
                            std::size_t replicates) {
    if (packets.empty()) fail(Errc::EmptySample, "no packets given");
    for (double d : delta_values_ms)
        if (d <= 0.0) fail(Errc::NonPositiveDelta, "delta must be positive");

    // Shift timestamps so bins start at the first packet.
    std::int64_t min_ts = packets[0].timestamp_us;
    std::int64_t max_ts = packets[0].timestamp_us;
    for (const auto& p : packets) {
        min_ts = std::min(min_ts, p.timestamp_us);
        max_ts = std::max(max_ts, p.timestamp_us);
    }
    std::vector<PacketRecord> shifted(packets.begin(), packets.end());
    for (auto& p : shifted) p.timestamp_us -= min_ts;
    const double span_ms = static_cast<double>(max_ts - min_ts) / 1000.0 + 1.0;

    const PacketGraph graph = build_packet_graph(shifted);
    const auto samples = replicate_samples(graph, sampling, replicates);

    SweepResult sweep;
    for (double delta : delta_values_ms) {
        std::vector<PhiResult> results;
        for (const auto& sample : samples) {
            std::vector<std::string> labels;
            labels.reserve(sample.size());
            for (std::size_t idx : sample) labels.push_back(graph.labels()[idx]);
            try {
                const StateMatrix m =
                    encode_packets(shifted, labels, delta, span_ms);
                results.push_back(stabilized_phi(m, 1, PhiMethod::atomic));
            } catch (const Error& e) {
                if (e.code() != Errc::ExhaustedNodes &&
                    e.code() != Errc::TooFewSteps)
                    throw;
            }
        }
        sweep.parameter_values.push_back(delta);
        if (results.empty()) {
            sweep.mean_phi.push_back(std::numeric_limits<double>::quiet_NaN());
            sweep.stderr_phi.push_back(std::numeric_limits<double>::quiet_NaN());
        } else {
            const PhiAverage avg = averaged_phi(results);
            sweep.mean_phi.push_back(avg.mean);
            sweep.stderr_phi.push_back(avg.stderr_);
        }
    }
    finalize_argmax(sweep);
    return sweep;
}

void write_sweep_csv(const SweepResult& sweep, std::ostream& out) {
    out << "parameter,mean_phi,stderr\n";
    for (std::size_t i = 0; i < sweep.parameter_values.size(); ++i)
        out << sweep.parameter_values[i] << ',' << sweep.mean_phi[i] << ','
            << sweep.stderr_phi[i] << '\n';
}

} // namespace groupphi
