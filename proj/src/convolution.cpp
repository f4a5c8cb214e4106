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

#include "reverbkit/convolution.hpp"

#include <fftw3.h>

#include <cstring>
#include <memory>
#include <mutex>
#include <unordered_map>

namespace reverbkit {

namespace {

// Below this work product the direct sum is faster than planning transforms
// and is exact by definition.
constexpr std::size_t kDirectThreshold = 1 << 16;

void convolve_direct(const std::vector<double>& x,
                     const std::vector<double>& h, std::vector<double>* y) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xi = x[i];
    if (xi == 0.0) continue;
    for (std::size_t j = 0; j < h.size(); ++j) {
      (*y)[i + j] += xi * h[j];
    }
  }
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

// The FFTW planner is not thread safe; all plan creation and destruction is
// serialized behind this mutex. Execution on private buffers is safe.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// One forward/inverse plan pair plus scratch buffers for a given transform
// size. Cached per thread so workers never share buffers. FFTW_ESTIMATE
// keeps plan selection deterministic: no runtime measurement, so identical
// sizes always pick the same algorithm and outputs are reproducible across
// runs and worker counts.
struct FftPlans {
  explicit FftPlans(std::size_t n) : size(n) {
    real = fftw_alloc_real(n);
    spec_a = fftw_alloc_complex(n / 2 + 1);
    spec_b = fftw_alloc_complex(n / 2 + 1);
    std::lock_guard<std::mutex> lock(planner_mutex());
    forward = fftw_plan_dft_r2c_1d(static_cast<int>(n), real, spec_a,
                                   FFTW_ESTIMATE);
    inverse = fftw_plan_dft_c2r_1d(static_cast<int>(n), spec_a, real,
                                   FFTW_ESTIMATE);
  }
  ~FftPlans() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(forward);
    fftw_destroy_plan(inverse);
    fftw_free(real);
    fftw_free(spec_a);
    fftw_free(spec_b);
  }
  FftPlans(const FftPlans&) = delete;
  FftPlans& operator=(const FftPlans&) = delete;

  std::size_t size;
  double* real;
  fftw_complex* spec_a;
  fftw_complex* spec_b;
  fftw_plan forward;
  fftw_plan inverse;
};

FftPlans& plans_for(std::size_t n) {
  thread_local std::unordered_map<std::size_t, std::unique_ptr<FftPlans>>
      cache;
  auto& entry = cache[n];
  if (!entry) entry = std::make_unique<FftPlans>(n);
  return *entry;
}

void convolve_fft(const std::vector<double>& x, const std::vector<double>& h,
                  std::vector<double>* y) {
  const std::size_t out_len = x.size() + h.size() - 1;
  const std::size_t n = next_pow2(out_len);
  FftPlans& p = plans_for(n);
  const std::size_t n_bins = n / 2 + 1;

  std::memset(p.real, 0, n * sizeof(double));
  std::memcpy(p.real, x.data(), x.size() * sizeof(double));
  fftw_execute_dft_r2c(p.forward, p.real, p.spec_b);

  std::memset(p.real, 0, n * sizeof(double));
  std::memcpy(p.real, h.data(), h.size() * sizeof(double));
  fftw_execute_dft_r2c(p.forward, p.real, p.spec_a);

  for (std::size_t k = 0; k < n_bins; ++k) {
    const double re =
        p.spec_a[k][0] * p.spec_b[k][0] - p.spec_a[k][1] * p.spec_b[k][1];
    const double im =
        p.spec_a[k][0] * p.spec_b[k][1] + p.spec_a[k][1] * p.spec_b[k][0];
    p.spec_a[k][0] = re;
    p.spec_a[k][1] = im;
  }

  fftw_execute_dft_c2r(p.inverse, p.spec_a, p.real);
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < out_len; ++i) {
    (*y)[i] = p.real[i] * scale;
  }
}

}  // namespace

AudioBuffer convolve(const AudioBuffer& x, const AudioBuffer& h) {
  if (x.empty() || h.empty()) throw EmptyBuffer("convolve: empty input");
  if (x.sample_rate_hz != h.sample_rate_hz) {
    throw RateMismatch("convolve: " + std::to_string(x.sample_rate_hz) +
                       " Hz vs " + std::to_string(h.sample_rate_hz) + " Hz");
  }
  AudioBuffer y;
  y.sample_rate_hz = x.sample_rate_hz;
  y.samples.assign(x.size() + h.size() - 1, 0.0);
  if (x.size() * h.size() <= kDirectThreshold) {
    convolve_direct(x.samples, h.samples, &y.samples);
  } else {
    convolve_fft(x.samples, h.samples, &y.samples);
  }
  return y;
}

}  // namespace reverbkit
