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

#include "reverbkit/acoustics.hpp"

#include <cmath>
#include <limits>

#include "reverbkit/rng.hpp"

namespace reverbkit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double total_energy(const AudioBuffer& rir) {
  double e = 0.0;
  for (double s : rir.samples) e += s * s;
  return e;
}

void require_energy(const AudioBuffer& rir, const char* who) {
  if (rir.empty() || total_energy(rir) == 0.0) {
    throw ZeroEnergy(std::string(who) + ": input has no energy");
  }
}

// 10 log10 of an energy ratio with explicit sentinels for the degenerate
// cases. Zero denominators are data here (an ideal impulse has no tail), not
// faults.
double energy_ratio_db(double numerator, double denominator) {
  if (denominator == 0.0) return kInf;
  if (numerator == 0.0) return -kInf;
  return 10.0 * std::log10(numerator / denominator);
}

}  // namespace

DecayCurve energy_decay_curve(const AudioBuffer& rir) {
  require_energy(rir, "energy_decay_curve");
  const std::size_t n = rir.size();
  // Backward-integrated tail energy. Summing from the tail keeps the
  // sequence non-increasing even under floating point rounding.
  std::vector<double> tail(n);
  double acc = 0.0;
  for (std::size_t i = n; i-- > 0;) {
    acc += rir.samples[i] * rir.samples[i];
    tail[i] = acc;
  }
  const double total = tail[0];
  DecayCurve curve;
  curve.sample_rate_hz = rir.sample_rate_hz;
  curve.values_db.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    curve.values_db[i] =
        tail[i] == 0.0 ? -kInf : 10.0 * std::log10(tail[i] / total);
  }
  return curve;
}

std::optional<double> rt60(const AudioBuffer& rir,
                           const AcousticsConfig& config) {
  const DecayCurve curve = energy_decay_curve(rir);
  // Ordinary least squares over the (time, dB) points inside the fit band.
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < curve.values_db.size(); ++i) {
    const double db = curve.values_db[i];
    if (db < config.fit_lower_db || db > config.fit_upper_db) continue;
    const double t = static_cast<double>(i) / curve.sample_rate_hz;
    sx += t;
    sy += db;
    sxx += t * t;
    sxy += t * db;
    ++count;
  }
  if (count < 2) return std::nullopt;
  const double nd = static_cast<double>(count);
  const double denom = nd * sxx - sx * sx;
  if (denom == 0.0) return std::nullopt;
  const double slope = (nd * sxy - sx * sy) / denom;  // dB per second
  if (slope >= 0.0) return std::nullopt;
  return -60.0 / slope;
}

std::size_t first_arrival(const AudioBuffer& rir) {
  require_energy(rir, "first_arrival");
  std::size_t best = 0;
  double best_abs = -1.0;
  for (std::size_t i = 0; i < rir.size(); ++i) {
    const double a = std::fabs(rir.samples[i]);
    if (a > best_abs) {  // strict: earliest index wins ties
      best_abs = a;
      best = i;
    }
  }
  return best;
}

double drr(const AudioBuffer& rir, const AcousticsConfig& config) {
  require_energy(rir, "drr");
  const std::size_t d = first_arrival(rir);
  const long half =
      std::lround(config.direct_window_half_s * rir.sample_rate_hz);
  const std::size_t lo = d >= static_cast<std::size_t>(half)
                             ? d - static_cast<std::size_t>(half)
                             : 0;
  const std::size_t hi =
      std::min(rir.size() - 1, d + static_cast<std::size_t>(half));
  double direct = 0.0;
  for (std::size_t i = lo; i <= hi; ++i) {
    direct += rir.samples[i] * rir.samples[i];
  }
  // Everything outside the window, including pre-arrival samples, counts as
  // reverberant energy.
  const double rest = total_energy(rir) - direct;
  return energy_ratio_db(direct, rest > 0.0 ? rest : 0.0);
}

double c50(const AudioBuffer& rir, const AcousticsConfig& config) {
  require_energy(rir, "c50");
  const std::size_t d = first_arrival(rir);
  const std::size_t horizon = static_cast<std::size_t>(
      std::floor(config.clarity_horizon_s * rir.sample_rate_hz + 1e-9));
  const std::size_t early_end = std::min(rir.size() - 1, d + horizon);
  double early = 0.0;
  for (std::size_t i = d; i <= early_end; ++i) {
    early += rir.samples[i] * rir.samples[i];
  }
  double late = 0.0;
  for (std::size_t i = early_end + 1; i < rir.size(); ++i) {
    late += rir.samples[i] * rir.samples[i];
  }
  return energy_ratio_db(early, late);
}

AcousticMetrics compute_rir_metrics(const AudioBuffer& rir,
                                    const AcousticsConfig& config) {
  AcousticMetrics m;
  m.rt60_s = rt60(rir, config);
  m.drr_db = drr(rir, config);
  m.c50_db = c50(rir, config);
  m.direct_index = first_arrival(rir);
  return m;
}

AudioBuffer make_impulse_rir(int sample_rate_hz, std::size_t length) {
  if (sample_rate_hz <= 0 || length == 0) {
    throw InvalidParameter("make_impulse_rir: bad parameters");
  }
  AudioBuffer rir;
  rir.sample_rate_hz = sample_rate_hz;
  rir.samples.assign(length, 0.0);
  rir.samples[0] = 1.0;
  return rir;
}

AudioBuffer make_exp_decay_rir(double t60_s, int sample_rate_hz,
                               uint64_t seed, std::size_t length) {
  if (t60_s <= 0.0 || sample_rate_hz <= 0) {
    throw InvalidParameter("make_exp_decay_rir: bad parameters");
  }
  if (length == 0) {
    length = static_cast<std::size_t>(
        std::ceil(1.5 * t60_s * sample_rate_hz));
  }
  AudioBuffer rir;
  rir.sample_rate_hz = sample_rate_hz;
  rir.samples.resize(length);
  SeededRng rng(seed);
  const double rate = -3.0 / (sample_rate_hz * t60_s);
  for (std::size_t n = 0; n < length; ++n) {
    rir.samples[n] =
        rng.gaussian() * std::pow(10.0, rate * static_cast<double>(n));
  }
  return rir;
}

AudioBuffer make_two_spike_rir(double delay_s, double late_amp,
                               int sample_rate_hz) {
  if (delay_s < 0.0 || sample_rate_hz <= 0) {
    throw InvalidParameter("make_two_spike_rir: bad parameters");
  }
  const std::size_t delay =
      static_cast<std::size_t>(std::lround(delay_s * sample_rate_hz));
  AudioBuffer rir;
  rir.sample_rate_hz = sample_rate_hz;
  rir.samples.assign(delay + 1, 0.0);
  rir.samples[0] = 1.0;
  rir.samples[delay] += late_amp;  // delay 0 collapses onto the direct spike
  return rir;
}

}  // namespace reverbkit
