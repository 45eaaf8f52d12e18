// Parameter sweeps over the time delay tau and the packet bin width delta.
#pragma once

#include <iosfwd>
#include <span>

#include "groupphi/graph_sampling.hpp"
#include "groupphi/phi_engine.hpp"
#include "groupphi/phi_result.hpp"

namespace groupphi {

// Stabilized phi per tau, averaged across the given matrices (one group per
// matrix). Matrices where no valid phi survives correction are skipped; a
// grid point where every matrix fails is reported as NaN and excluded from
// the argmax.
SweepResult sweep_time_delay(std::span<const StateMatrix> groups,
                             std::span<const int> tau_values, PhiMethod method);

// For each delta: bin packet activity per replicate node sample, take
// stabilized atomic phi at tau = 1, average over replicates.
SweepResult sweep_step_size(std::span<const PacketRecord> packets,
                            const SampleConfig& sampling,
                            std::span<const double> delta_values_ms,
                            std::size_t replicates);

// "parameter,mean_phi,stderr" rows.
void write_sweep_csv(const SweepResult& sweep, std::ostream& out);

} // namespace groupphi
