// Copyright 2026 The reverbkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef REVERBKIT_ACOUSTICS_HPP
#define REVERBKIT_ACOUSTICS_HPP

#include <cstdint>
#include <optional>

#include "reverbkit/audio_buffer.hpp"

namespace reverbkit {

// Energy decay curve of an impulse response: the squared samples integrated
// backward in time (Schroeder integration) and expressed in dB relative to
// the total energy. values_db[0] == 0 and the curve is non-increasing.
struct DecayCurve {
  std::vector<double> values_db;
  int sample_rate_hz = 16000;
};

// Per-RIR annotation record. drr_db and c50_db use +/-infinity for the
// degenerate energy ratios (e.g. an ideal impulse has no tail energy); these
// are data, not faults, and serialize as the literals "inf"/"-inf".
struct AcousticMetrics {
  std::optional<double> rt60_s;  // empty when no estimate is available
  double drr_db = 0.0;
  double c50_db = 0.0;
  std::size_t direct_index = 0;
};

struct AcousticsConfig {
  // Half of the direct-path window: the window spans
  // [arrival - half, arrival + half], 2.5 ms wide by default.
  double direct_window_half_s = 0.00125;
  // Early/late boundary for the clarity index, measured from the arrival.
  double clarity_horizon_s = 0.050;
  // Decay-curve band used for the reverberation-time line fit, in dB
  // relative to the initial level.
  double fit_upper_db = -5.0;
  double fit_lower_db = -35.0;
};

// Throws ZeroEnergy when the input has no energy (or is empty).
DecayCurve energy_decay_curve(const AudioBuffer& rir);

// Reverberation time via the Schroeder method: least-squares line through
// the (time, dB) decay-curve points inside [fit_lower_db, fit_upper_db],
// extrapolated to -60 dB. Returns nullopt when fewer than two points fall in
// the band or the fitted slope is non-negative.
std::optional<double> rt60(const AudioBuffer& rir,
                           const AcousticsConfig& config = {});

// Sample index of the direct arrival: the globally maximal |h[n]|, earliest
// index on ties. Robust to small pre-arrival simulation noise.
std::size_t first_arrival(const AudioBuffer& rir);

// Direct-to-reverberant ratio in dB. Direct energy is summed over the
// window centered on the arrival; everything else, including any samples
// before the window, counts as reverberant energy.
double drr(const AudioBuffer& rir, const AcousticsConfig& config = {});

// Clarity index in dB: energy within clarity_horizon_s of the arrival vs
// energy after it. Samples before the arrival are outside both integrals.
double c50(const AudioBuffer& rir, const AcousticsConfig& config = {});

// All of the above in one pass over the input.
AcousticMetrics compute_rir_metrics(const AudioBuffer& rir,
                                    const AcousticsConfig& config = {});

// Deterministic synthetic impulse responses used as fixtures.

// Unit impulse at index 0, zero-padded to `length` samples.
AudioBuffer make_impulse_rir(int sample_rate_hz, std::size_t length = 1);

// Seeded white noise shaped by the envelope 10^(-3 n / (fs * t60)), which
// decays by exactly 60 dB in power every t60 seconds. Default length is
// 1.5 * t60 * fs. Identical (seed, t60, fs, length) give bit-identical
// buffers.
AudioBuffer make_exp_decay_rir(double t60_s, int sample_rate_hz,
                               uint64_t seed, std::size_t length = 0);

// Unit spike at index 0 plus a single late spike of amplitude late_amp at
// delay_s. Closed-form energy ratios make this the reference fixture for the
// ratio metrics.
AudioBuffer make_two_spike_rir(double delay_s, double late_amp,
                               int sample_rate_hz);

}  // namespace reverbkit

#endif  // REVERBKIT_ACOUSTICS_HPP
