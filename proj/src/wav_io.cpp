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

#include "reverbkit/wav_io.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

namespace reverbkit {

namespace {

constexpr uint16_t kFormatPcm = 1;
constexpr uint16_t kFormatIeeeFloat = 3;

uint16_t read_u16_le(const unsigned char* p) {
  return static_cast<uint16_t>(p[0] | (p[1] << 8));
}

uint32_t read_u32_le(const unsigned char* p) {
  return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
         (static_cast<uint32_t>(p[2]) << 16) |
         (static_cast<uint32_t>(p[3]) << 24);
}

void put_u16_le(std::string* out, uint16_t v) {
  out->push_back(static_cast<char>(v & 0xff));
  out->push_back(static_cast<char>((v >> 8) & 0xff));
}

void put_u32_le(std::string* out, uint32_t v) {
  out->push_back(static_cast<char>(v & 0xff));
  out->push_back(static_cast<char>((v >> 8) & 0xff));
  out->push_back(static_cast<char>((v >> 16) & 0xff));
  out->push_back(static_cast<char>((v >> 24) & 0xff));
}

}  // namespace

AudioBuffer read_wav(const std::filesystem::path& path,
                     const WavReadOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot open " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  if (in.bad()) throw IoFailure("read error on " + path.string());

  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw MalformedHeader("not a RIFF/WAVE file: " + path.string());
  }

  // Walk the chunk list. fmt must precede data; unknown chunks are skipped.
  bool have_fmt = false;
  uint16_t format = 0;
  uint16_t channels = 0;
  uint32_t sample_rate = 0;
  uint16_t bits_per_sample = 0;
  std::size_t data_offset = 0;
  std::size_t data_size = 0;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const char* id = reinterpret_cast<const char*>(bytes.data() + pos);
    const uint32_t chunk_size = read_u32_le(bytes.data() + pos + 4);
    const std::size_t body = pos + 8;
    if (body + chunk_size > bytes.size()) {
      throw MalformedHeader("truncated chunk in " + path.string());
    }
    if (std::memcmp(id, "fmt ", 4) == 0) {
      if (chunk_size < 16) {
        throw MalformedHeader("fmt chunk too small in " + path.string());
      }
      format = read_u16_le(bytes.data() + body);
      channels = read_u16_le(bytes.data() + body + 2);
      sample_rate = read_u32_le(bytes.data() + body + 4);
      bits_per_sample = read_u16_le(bytes.data() + body + 14);
      have_fmt = true;
    } else if (std::memcmp(id, "data", 4) == 0) {
      data_offset = body;
      data_size = chunk_size;
      break;
    }
    pos = body + chunk_size + (chunk_size & 1);  // chunks are 2-byte aligned
  }

  if (!have_fmt || data_offset == 0) {
    throw MalformedHeader("missing fmt or data chunk in " + path.string());
  }
  if (sample_rate == 0 || channels == 0) {
    throw MalformedHeader("zero rate or channel count in " + path.string());
  }
  const bool pcm16 = format == kFormatPcm && bits_per_sample == 16;
  const bool float32 = format == kFormatIeeeFloat && bits_per_sample == 32;
  if (!pcm16 && !float32) {
    throw UnsupportedEncoding("only 16-bit PCM and 32-bit float supported, "
                              "got format " + std::to_string(format) + "/" +
                              std::to_string(bits_per_sample) + " bit in " +
                              path.string());
  }
  if (channels != 1 && !options.downmix_to_mono) {
    throw ChannelCountMismatch(path.string() + " has " +
                               std::to_string(channels) + " channels");
  }

  const std::size_t bytes_per_sample = bits_per_sample / 8;
  const std::size_t frame_size = bytes_per_sample * channels;
  const std::size_t frames = data_size / frame_size;

  AudioBuffer out;
  out.sample_rate_hz = static_cast<int>(sample_rate);
  out.samples.resize(frames);
  const unsigned char* data = bytes.data() + data_offset;
  for (std::size_t f = 0; f < frames; ++f) {
    double acc = 0.0;
    for (uint16_t c = 0; c < channels; ++c) {
      const unsigned char* p = data + f * frame_size + c * bytes_per_sample;
      if (pcm16) {
        const int16_t v = static_cast<int16_t>(read_u16_le(p));
        acc += static_cast<double>(v) / 32768.0;
      } else {
        uint32_t raw = read_u32_le(p);
        float v;
        std::memcpy(&v, &raw, sizeof v);
        acc += static_cast<double>(v);
      }
    }
    out.samples[f] = acc / channels;
  }
  return out;
}

void write_wav(const AudioBuffer& buffer, const std::filesystem::path& path) {
  for (double s : buffer.samples) {
    if (!(std::fabs(s) <= 1.0)) {
      throw OutOfRangeSample("sample out of [-1, 1] writing " + path.string());
    }
  }
  if (buffer.sample_rate_hz <= 0) {
    throw IoFailure("invalid sample rate writing " + path.string());
  }

  const uint32_t n = static_cast<uint32_t>(buffer.size());
  const uint32_t data_size = n * 2;
  const uint32_t rate = static_cast<uint32_t>(buffer.sample_rate_hz);

  std::string out;
  out.reserve(44 + data_size);
  out.append("RIFF");
  put_u32_le(&out, 36 + data_size);
  out.append("WAVE");
  out.append("fmt ");
  put_u32_le(&out, 16);
  put_u16_le(&out, kFormatPcm);
  put_u16_le(&out, 1);  // mono
  put_u32_le(&out, rate);
  put_u32_le(&out, rate * 2);  // byte rate
  put_u16_le(&out, 2);         // block align
  put_u16_le(&out, 16);        // bits per sample
  out.append("data");
  put_u32_le(&out, data_size);
  for (double s : buffer.samples) {
    long q = std::lround(s * 32767.0);
    if (q > 32767) q = 32767;
    if (q < -32768) q = -32768;
    put_u16_le(&out, static_cast<uint16_t>(static_cast<int16_t>(q)));
  }

  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoFailure("cannot open " + path.string() + " for writing");
  f.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!f) throw IoFailure("write error on " + path.string());
}

}  // namespace reverbkit
